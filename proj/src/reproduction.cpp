#include "skewgeo/reproduction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>

#include "skewgeo/published.hpp"

namespace skewgeo {

namespace {

std::string fmt(const char* format, double a, double b = 0, double c = 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

const PublishedTable& table_for(const std::string& dataset) {
    const auto* t = published_table(dataset);
    if (!t) throw std::invalid_argument("no published table for dataset '" + dataset + "'");
    return *t;
}

const ModelColumn& column(const ComparativeReport& report, const std::string& name) {
    for (const auto& c : report.models)
        if (c.fit.model == name) return c;
    throw std::invalid_argument("report has no model '" + name + "'");
}

}  // namespace

const char* status_name(CheckStatus status) {
    switch (status) {
        case CheckStatus::pass: return "PASS";
        case CheckStatus::fail: return "FAIL";
        case CheckStatus::discrepancy: return "DISCREPANCY";
    }
    return "?";
}

bool acceptable(const std::vector<ToleranceCheck>& checks) {
    return std::none_of(checks.begin(), checks.end(), [](const ToleranceCheck& c) { return c.status == CheckStatus::fail; });
}

ToleranceCheck check_within(const std::string& label, double value, double target, double tolerance) {
    // a few ulps of slack: 10/500 against 0.05 +- 0.03 lies exactly on the edge
    const bool ok = std::abs(value - target) <= tolerance * (1 + 1e-12) + 4 * std::numeric_limits<double>::epsilon() * std::abs(target);
    return {label, ok ? CheckStatus::pass : CheckStatus::fail,
            fmt("%.6g vs %.6g (tol %.3g)", value, target, tolerance)};
}

ToleranceCheck check_relative(const std::string& label, double value, double target, double relative) {
    const double rel = std::abs(value - target) / std::abs(target);
    return {label, rel <= relative * (1 + 1e-12) ? CheckStatus::pass : CheckStatus::fail,
            fmt("%.6g vs %.6g (rel %.3f)", value, target, rel)};
}

ToleranceCheck check_true(const std::string& label, bool condition, const std::string& detail) {
    return {label, condition ? CheckStatus::pass : CheckStatus::fail, detail};
}

std::vector<ToleranceCheck> check_rsg_column(const ComparativeReport& report) {
    const auto& pub = table_for(report.dataset);
    const auto& printed = pub.models.front();
    const auto& rsg = column(report, "rsg");
    const bool claims = report.dataset == "claims";
    const double tol_param = claims ? 0.005 : 0.02;
    const double tol_aic = claims ? 0.1 : 0.5;
    const double tol_chi2 = claims ? 0.05 : 0.3;
    const double tol_lambda = claims ? 0.02 : 0.3;
    const int df = static_cast<int>(printed.expected.size()) - 3;

    std::vector<ToleranceCheck> checks;
    checks.push_back(check_within("p_hat", rsg.fit.theta(0), printed.first, tol_param));
    checks.push_back(check_within("beta_hat", rsg.fit.theta(1), printed.second, tol_param));

    auto aic_check = check_within("AIC", rsg.fit.aic, printed.aic, tol_aic);
    if (aic_check.status == CheckStatus::fail && report.data.is_grouped() && report.variants) {
        aic_check.status = CheckStatus::discrepancy;
        aic_check.detail += fmt("; grouped-bin likelihood AIC %.6g, lower-end point likelihood AIC %.6g", report.variants->grouped_aic,
                                report.variants->point_aic);
    }
    checks.push_back(aic_check);

    checks.push_back(check_within("chi2", rsg.gof.chi2, printed.chi2, tol_chi2));
    checks.push_back(check_true("df", rsg.gof.df == df, fmt("%.0f vs %.0f", rsg.gof.df, df)));
    if (claims) checks.push_back(check_within("p-value", rsg.gof.p_value, printed.p_value, 0.005));
    checks.push_back(check_within("lambda", report.lr.lambda, pub.lambda, tol_lambda));
    checks.push_back(check_true(pub.reject ? "H0 rejected" : "H0 accepted", report.lr.reject_at_5pct == pub.reject,
                                fmt("lambda %.6g, cut-off %.4g", report.lr.lambda, kLrCritical5pct)));
    if (claims) {
        for (std::size_t i = 0; i < printed.expected.size() && i < rsg.gof.bins.size(); ++i)
            checks.push_back(check_within("expected[" + rsg.gof.bins[i].bin.to_string() + "]", rsg.gof.bins[i].expected,
                                          printed.expected[i], 0.5));
    }
    return checks;
}

std::vector<ToleranceCheck> check_competitors(const ComparativeReport& report) {
    const auto& pub = table_for(report.dataset);
    std::vector<ToleranceCheck> checks;
    auto aic = [&](const std::string& name) { return column(report, name).fit.aic; };
    auto less = [&](const std::string& a, const std::string& b) {
        checks.push_back(check_true("AIC " + a + " < " + b, aic(a) < aic(b), fmt("%.6g vs %.6g", aic(a), aic(b))));
    };
    if (report.dataset == "claims") {
        less("rsg", "wg");
        less("wg", "nb");
        less("wg", "nd");
        less("nb", "ngpl");
        less("nd", "ngpl");
    } else {
        less("rsg", "wg");
        less("wg", "nb");
        less("nb", "nd");
        less("nd", "ngpl");
    }
    for (const auto& printed : pub.models) {
        if (printed.name == "rsg") continue;
        const auto model = model_by_name(printed.name);
        const Eigen::Vector2d theta(printed.first, printed.second);
        const std::string label = "AIC " + std::string(printed.name);
        if (!model.admissible(theta)) {
            checks.push_back({label + " (not applicable)", CheckStatus::pass,
                              fmt("printed MLE (%.4g, %.4g) lies outside the model's parameter domain", printed.first,
                                  printed.second)});
            continue;
        }
        checks.push_back(check_within(label, aic(std::string(printed.name)), printed.aic, 0.5));
    }
    return checks;
}

std::vector<ToleranceCheck> check_dispersion(const std::string& dataset, const Eigen::Matrix2d& dispersion) {
    const auto& pub = table_for(dataset);
    return {check_relative("Var(p)", dispersion(0, 0), pub.var_p, 0.3),
            check_relative("Var(beta)", dispersion(1, 1), pub.var_beta, 0.3),
            check_relative("Cov(p,beta)", dispersion(0, 1), pub.cov, 0.3)};
}

std::vector<ToleranceCheck> check_perf_table(const std::vector<PerfCellResult>& cells) {
    std::vector<ToleranceCheck> checks;
    std::map<std::pair<double, double>, std::vector<const PerfCellResult*>> by_params;
    for (const auto& c : cells) {
        by_params[{c.cell.p, c.cell.beta}].push_back(&c);
        const PublishedPerfRow* pub = nullptr;
        for (const auto& r : published_perf_rows())
            if (r.p == c.cell.p && r.beta == c.cell.beta && r.n == c.cell.n) pub = &r;
        if (!pub) continue;
        const std::string where = fmt("p=%.2g beta=%.2g n=%.0f", c.cell.p, c.cell.beta, static_cast<double>(c.cell.n));
        const double bias_bound = 3 * std::abs(pub->bias_p) + 0.003;
        const double mse_bound = 3 * pub->mse_p + 0.0005;
        checks.push_back(check_true("|bias_p| " + where, std::abs(c.row.bias_p) <= bias_bound,
                                    fmt("%.4g <= %.4g (printed %.4g)", std::abs(c.row.bias_p), bias_bound, pub->bias_p)));
        checks.push_back(check_true("mse_p " + where, c.row.mse_p <= mse_bound,
                                    fmt("%.4g <= %.4g (printed %.4g)", c.row.mse_p, mse_bound, pub->mse_p)));
        // sign only counts once the simulated bias clears two standard errors
        const double se = std::sqrt(std::max(0.0, c.row.mse_p - c.row.bias_p * c.row.bias_p) /
                                    static_cast<double>(std::max<std::size_t>(1, c.row.used_reps)));
        const bool resolved = std::abs(c.row.bias_p) > 2 * se;
        checks.push_back(check_true("sign(bias_p) " + where, !resolved || (c.row.bias_p > 0) == (pub->bias_p > 0),
                                    fmt(resolved ? "%.4g vs printed %.4g" : "%.4g within 2 se %.2g of zero", c.row.bias_p,
                                        resolved ? pub->bias_p : se)));
    }
    for (auto& [params, rows] : by_params) {
        if (rows.size() < 2) continue;
        std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->cell.n < b->cell.n; });
        const auto& small = *rows.front();
        const auto& large = *rows.back();
        const double reps = static_cast<double>(small.row.used_reps);
        const std::string where = fmt("p=%.2g beta=%.2g", params.first, params.second);
        const double mse_noise = 2 * small.row.mse_p * std::sqrt(2 / reps);
        checks.push_back(check_true("mse_p falls with n " + where, large.row.mse_p <= small.row.mse_p + mse_noise,
                                    fmt("%.4g <= %.4g + %.2g", large.row.mse_p, small.row.mse_p, mse_noise)));
        const double bias_noise = 2 * std::sqrt(small.row.mse_p / reps);
        checks.push_back(check_true("|bias_p| falls with n " + where,
                                    std::abs(large.row.bias_p) <= std::abs(small.row.bias_p) + bias_noise,
                                    fmt("%.4g <= %.4g + %.2g", std::abs(large.row.bias_p), std::abs(small.row.bias_p),
                                        bias_noise)));
    }
    return checks;
}

std::vector<ToleranceCheck> check_power(const std::vector<PowerCell>& cells, std::size_t reps) {
    const double noise = 2 / std::sqrt(static_cast<double>(reps));
    std::set<double> ps, betas;
    std::set<std::size_t> sizes;
    std::map<std::tuple<double, double, std::size_t>, double> power;
    for (const auto& c : cells) {
        ps.insert(c.p);
        betas.insert(c.beta);
        sizes.insert(c.n);
        power[{c.p, c.beta, c.n}] = c.power;
    }
    std::vector<ToleranceCheck> checks;
    for (double p : ps)
        for (auto n : sizes) {
            const std::string where = fmt("p=%.2g n=%.0f", p, static_cast<double>(n));
            if (betas.count(1.0)) checks.push_back(check_within("size " + where, power[{p, 1.0, n}], 0.05, 0.03));
            bool monotone = true;
            std::string detail;
            for (auto hi = betas.rbegin(); std::next(hi) != betas.rend(); ++hi) {
                const double lo_power = power[{p, *std::next(hi), n}];
                const double hi_power = power[{p, *hi, n}];
                if (lo_power < hi_power - noise && monotone) {
                    monotone = false;
                    detail = fmt("beta=%.2g: %.3f after %.3f", *std::next(hi), lo_power, hi_power);
                }
            }
            checks.push_back(check_true("power non-increasing in beta " + where, monotone, detail));
        }
    for (double p : ps)
        for (double b : betas) {
            bool monotone = true;
            std::string detail;
            for (auto it = sizes.begin(); std::next(it) != sizes.end(); ++it) {
                const double small = power[{p, b, *it}];
                const double large = power[{p, b, *std::next(it)}];
                if (large < small - noise && monotone) {
                    monotone = false;
                    detail = fmt("n=%.0f: %.3f after %.3f", static_cast<double>(*std::next(it)), large, small);
                }
            }
            checks.push_back(check_true(fmt("power non-decreasing in n p=%.2g beta=%.2g", p, b), monotone, detail));
        }
    if (ps.count(0.7) && betas.count(0.1) && !sizes.empty()) {
        const double v = power[{0.7, 0.1, *sizes.rbegin()}];
        checks.push_back(check_true(fmt("power p=0.7 beta=0.1 n=%.0f > 0.9", static_cast<double>(*sizes.rbegin())), v > 0.9,
                                    fmt("%.3f", v)));
    }
    return checks;
}

}  // namespace skewgeo
