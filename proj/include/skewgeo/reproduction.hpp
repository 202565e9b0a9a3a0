// Tolerance checks of reproduced results against the published tables.
#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "skewgeo/experiments.hpp"

namespace skewgeo {

enum class CheckStatus {
    pass,
    fail,
    discrepancy,  // out of tolerance, explained and reported with both likelihood variants
};

struct ToleranceCheck {
    std::string label;
    CheckStatus status = CheckStatus::pass;
    std::string detail;
};

const char* status_name(CheckStatus status);
bool acceptable(const std::vector<ToleranceCheck>& checks);  // no check failed

ToleranceCheck check_within(const std::string& label, double value, double target, double tolerance);
ToleranceCheck check_relative(const std::string& label, double value, double target, double relative);
ToleranceCheck check_true(const std::string& label, bool condition, const std::string& detail = {});

/// RSG column: MLE, AIC, chi2, df, p-value, LR and (claims) expected frequencies.
/// A grouped-data AIC miss is a discrepancy when both likelihood variants were computed.
std::vector<ToleranceCheck> check_rsg_column(const ComparativeReport& report);

/// AIC ordering, and each competitor AIC within 0.5 where the printed MLE is admissible.
std::vector<ToleranceCheck> check_competitors(const ComparativeReport& report);

/// Var(p), Var(beta), Cov within 30% of the published values.
std::vector<ToleranceCheck> check_dispersion(const std::string& dataset, const Eigen::Matrix2d& dispersion);

struct PerfCellResult {
    SimCell cell;
    PerfRow row;
};

/// Reduced-scale estimator-performance table: magnitude bounds per cell and improvement from the
/// smallest to the largest n within Monte-Carlo noise.
std::vector<ToleranceCheck> check_perf_table(const std::vector<PerfCellResult>& cells);

/// Size at beta = 1, monotonicity in beta and n within 2/sqrt(reps), and power at p = 0.7, beta = 0.1.
std::vector<ToleranceCheck> check_power(const std::vector<PowerCell>& cells, std::size_t reps);

}  // namespace skewgeo
