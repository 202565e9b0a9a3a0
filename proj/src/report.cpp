#include "skewgeo/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace skewgeo {

namespace {

using nlohmann::json;

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json gof_json(const GofReport& gof) {
    json bins = json::array();
    for (const auto& b : gof.bins)
        bins.push_back({{"bin", b.bin.to_string()}, {"observed", b.observed}, {"expected", number(b.expected)}});
    return {{"chi2", number(gof.chi2)},
            {"df", gof.df},
            {"p_value", number(gof.p_value)},
            {"bins", bins},
            {"warnings", gof.warnings}};
}

json dispersion_json(const FitReport& fit) {
    if (!fit.dispersion_valid) return {{"var_p", nullptr}, {"var_beta", nullptr}, {"cov", nullptr}};
    return {{"var_p", number(fit.dispersion(0, 0))},
            {"var_beta", number(fit.dispersion(1, 1))},
            {"cov", number(fit.dispersion(0, 1))}};
}

json meta_json(const ReportMeta& meta) {
    return {{"seed", meta.seed ? json(*meta.seed) : json(nullptr)},
            {"resolution", meta.resolution},
            {"version", kVersion},
            {"schema_version", kSchemaVersion}};
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string pair_text(double a, double b) { return "(" + format_number(a, 4) + ", " + format_number(b, 4) + ")"; }

}  // namespace

std::string format_number(double value, int digits) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

nlohmann::json lr_report_json(const LrReport& lr) {
    return {{"lambda", number(lr.lambda)},
            {"reject", lr.reject_at_5pct},
            {"critical_value", kLrCritical5pct},
            {"p_value", number(lr.p_value)},
            {"p_tilde", number(lr.p_tilde)},
            {"p_hat", number(lr.p_hat)},
            {"beta_hat", number(lr.beta_hat)},
            {"loglik_null", number(lr.loglik_null)},
            {"loglik_alt", number(lr.loglik_alt)}};
}

nlohmann::json fit_report_json(const FitReport& fit, const GofReport& gof, const LrReport& lr, const ReportMeta& meta) {
    const auto model = model_by_name(fit.model);
    return {{"model", fit.model},
            {"params", {{"p", fit.theta(0)}, {"beta", fit.theta(1)}}},
            {"param_names", {model.first.name, model.second.name}},
            {"loglik", number(fit.loglik)},
            {"aic", number(fit.aic)},
            {"on_boundary", fit.on_boundary},
            {"gof", gof_json(gof)},
            {"lr", lr_report_json(lr)},
            {"dispersion", dispersion_json(fit)},
            {"meta", meta_json(meta)}};
}

std::string lr_report_text(const LrReport& lr) {
    std::ostringstream out;
    out << "LR test H0: beta = 1 (geometric)\n"
        << "  lambda       " << format_number(lr.lambda) << "\n"
        << "  p~ (null)    " << format_number(lr.p_tilde) << "\n"
        << "  (p^, beta^)  " << pair_text(lr.p_hat, lr.beta_hat) << "\n"
        << "  cut-off      " << kLrCritical5pct << "\n"
        << "  decision     " << (lr.reject_at_5pct ? "H0 rejected" : "H0 accepted") << "\n";
    return out.str();
}

std::string fit_report_text(const FitReport& fit, const GofReport& gof, const LrReport& lr) {
    const auto model = model_by_name(fit.model);
    std::ostringstream out;
    out << "model " << fit.model << "\n\n" << pad("bin", 10) << pad("observed", 12) << "expected\n";
    double obs = 0, exp = 0;
    for (const auto& b : gof.bins) {
        out << pad(b.bin.to_string(), 10) << pad(format_number(b.observed), 12) << format_number(b.expected) << "\n";
        obs += b.observed;
        exp += b.expected;
    }
    out << pad("total", 10) << pad(format_number(obs), 12) << format_number(exp) << "\n\n";
    out << pad("(chi2, d)", 22) << "(" << format_number(gof.chi2) << ", " << gof.df << ")\n";
    out << pad("p-value", 22) << format_number(gof.p_value) << "\n";
    out << pad("MLE (" + model.first.name + ", " + model.second.name + ")", 22) << "("
        << format_number(fit.theta(0)) << ", " << format_number(fit.theta(1)) << ")"
        << (fit.on_boundary ? "  [on search boundary]" : "") << "\n";
    if (fit.dispersion_valid) {
        out << pad("Var, Var", 22) << format_number(fit.dispersion(0, 0)) << ", " << format_number(fit.dispersion(1, 1))
            << "\n";
        out << pad("Cov", 22) << format_number(fit.dispersion(0, 1)) << "\n";
    } else {
        out << pad("dispersion", 22) << "unavailable (information not positive definite)\n";
    }
    out << pad("loglik", 22) << format_number(fit.loglik, 8) << "\n";
    out << pad("AIC", 22) << format_number(fit.aic, 8) << "\n";
    for (const auto& w : gof.warnings) out << "warning: " << w << "\n";
    out << "\n" << lr_report_text(lr);
    return out.str();
}

nlohmann::json comparative_report_json(const ComparativeReport& report, const ReportMeta& meta) {
    json models = json::array();
    for (const auto& col : report.models) {
        json m = fit_report_json(col.fit, col.gof, report.lr, meta);
        m.erase("lr");
        m.erase("meta");
        models.push_back(m);
    }
    json observed = json::array();
    for (const auto& row : report.data.rows()) observed.push_back({{"bin", row.bin.to_string()}, {"count", row.count}});
    json out{{"dataset", report.dataset},
             {"n", report.data.n()},
             {"observed", observed},
             {"models", models},
             {"lr", lr_report_json(report.lr)},
             {"notes", report.notes},
             {"meta", meta_json(meta)}};
    if (report.variants) {
        const auto& v = *report.variants;
        out["likelihood_variants"] = {
            {"grouped", {{"loglik", v.grouped_loglik}, {"aic", v.grouped_aic}, {"p", v.grouped_mle(0)}, {"beta", v.grouped_mle(1)}}},
            {"lower_end_points",
             {{"loglik", v.point_loglik}, {"aic", v.point_aic}, {"p", v.point_mle(0)}, {"beta", v.point_mle(1)}}}};
    }
    return out;
}

std::string comparative_report_text(const ComparativeReport& report) {
    constexpr std::size_t w = 14;
    std::ostringstream out;
    out << report.dataset << " (n = " << report.data.n() << ")\n\n" << pad("bin", 8) << pad("observed", 10);
    for (const auto& col : report.models) out << pad(col.fit.model, w);
    out << "\n";
    const auto& first = report.models.front().gof.bins;
    for (std::size_t i = 0; i < first.size(); ++i) {
        out << pad(first[i].bin.to_string(), 8) << pad(format_number(first[i].observed), 10);
        for (const auto& col : report.models) out << pad(format_number(col.gof.bins[i].expected, 5), w);
        out << "\n";
    }
    auto row = [&](const std::string& label, auto&& cell) {
        out << pad(label, 18);
        for (const auto& col : report.models) out << pad(cell(col), w);
        out << "\n";
    };
    out << "\n";
    row("chi2 (d)", [](const ModelColumn& c) { return format_number(c.gof.chi2, 5) + " (" + std::to_string(c.gof.df) + ")"; });
    row("p-value", [](const ModelColumn& c) { return format_number(c.gof.p_value, 4); });
    row("MLE", [](const ModelColumn& c) { return pair_text(c.fit.theta(0), c.fit.theta(1)); });
    row("Var(1st)", [](const ModelColumn& c) { return c.fit.dispersion_valid ? format_number(c.fit.dispersion(0, 0), 4) : "n/a"; });
    row("Var(2nd)", [](const ModelColumn& c) { return c.fit.dispersion_valid ? format_number(c.fit.dispersion(1, 1), 4) : "n/a"; });
    row("Cov", [](const ModelColumn& c) { return c.fit.dispersion_valid ? format_number(c.fit.dispersion(0, 1), 4) : "n/a"; });
    row("AIC", [](const ModelColumn& c) { return format_number(c.fit.aic, 7); });
    out << "\nLR lambda = " << format_number(report.lr.lambda, 5) << ", "
        << (report.lr.reject_at_5pct ? "H0 rejected" : "H0 accepted") << "\n";
    if (report.variants) {
        const auto& v = *report.variants;
        out << "grouped likelihood:    loglik " << format_number(v.grouped_loglik, 8) << ", AIC "
            << format_number(v.grouped_aic, 8) << ", MLE " << pair_text(v.grouped_mle(0), v.grouped_mle(1)) << "\n";
        out << "lower-end point data:  loglik " << format_number(v.point_loglik, 8) << ", AIC "
            << format_number(v.point_aic, 8) << ", MLE " << pair_text(v.point_mle(0), v.point_mle(1)) << "\n";
    }
    for (const auto& n : report.notes) out << "note: " << n << "\n";
    return out.str();
}

nlohmann::json verify_report_json(const VerifyReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"worst", number(c.worst)},
                          {"tolerance", c.tolerance},
                          {"cases", c.cases},
                          {"detail", c.detail}});
    return {{"grid_points", report.grid_points}, {"passed", report.all_passed()}, {"checks", checks}};
}

std::string verify_report_text(const VerifyReport& report) {
    std::ostringstream out;
    for (const auto& c : report.checks) {
        out << (c.passed ? "PASS " : "FAIL ") << pad(c.name, 22) << "worst " << pad(format_number(c.worst, 3), 10)
            << "tol " << pad(format_number(c.tolerance, 3), 8) << c.cases << " cases";
        if (!c.passed) out << "  " << c.detail;
        out << "\n";
    }
    out << report.grid_points << " grid points, " << (report.all_passed() ? "all checks passed" : "FAILED") << "\n";
    return out.str();
}

}  // namespace skewgeo
