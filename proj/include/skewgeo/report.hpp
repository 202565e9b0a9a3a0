// JSON and text renderings of fit, test and comparison results.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "skewgeo/experiments.hpp"
#include "skewgeo/inference.hpp"
#include "skewgeo/model_zoo.hpp"
#include "skewgeo/verification.hpp"

namespace skewgeo {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

struct ReportMeta {
    std::optional<std::uint64_t> seed;
    double resolution = 1e-4;
};

/// The fixed report layout: model, params {p, beta}, loglik, aic, gof, lr, dispersion, meta.
/// For competitor models "p" and "beta" hold the first and second parameter.
nlohmann::json fit_report_json(const FitReport& fit, const GofReport& gof, const LrReport& lr, const ReportMeta& meta);
std::string fit_report_text(const FitReport& fit, const GofReport& gof, const LrReport& lr);

nlohmann::json lr_report_json(const LrReport& lr);
std::string lr_report_text(const LrReport& lr);

nlohmann::json comparative_report_json(const ComparativeReport& report, const ReportMeta& meta);
/// Observed and expected columns per model, then chi2, p-values, MLEs, dispersion and AIC rows.
std::string comparative_report_text(const ComparativeReport& report);

nlohmann::json verify_report_json(const VerifyReport& report);
std::string verify_report_text(const VerifyReport& report);

/// printf("%.*g") with the given significant digits.
std::string format_number(double value, int digits = 6);

}  // namespace skewgeo
