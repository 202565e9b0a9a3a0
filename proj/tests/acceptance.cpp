// Acceptance suite: one PASS/FAIL line per criterion, sub-checks indented below it.
//   acceptance                 run every criterion
//   acceptance --criterion N   run criterion N only (exit status reflects it)
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "skewgeo/characterization.hpp"
#include "skewgeo/datasets.hpp"
#include "skewgeo/estimation.hpp"
#include "skewgeo/experiments.hpp"
#include "skewgeo/reproduction.hpp"
#include "skewgeo/verification.hpp"

using namespace skewgeo;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* format, double a, double b = 0, double c = 0) {
    char buf[200];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

void add(std::vector<ToleranceCheck>& to, const std::vector<ToleranceCheck>& from) {
    to.insert(to.end(), from.begin(), from.end());
}

ToleranceCheck from_verify(const VerifyReport& report, const std::string& name) {
    const auto* c = report.find(name);
    if (!c) return {name, CheckStatus::fail, "check missing from the verification report"};
    return {name, c->passed ? CheckStatus::pass : CheckStatus::fail,
            fmt("worst %.3g, tol %.3g, %.0f cases", c->worst, c->tolerance, static_cast<double>(c->cases)) +
                (c->detail.empty() ? "" : "; " + c->detail)};
}

std::vector<ToleranceCheck> table_criterion(const std::string& dataset, double max_seconds) {
    const auto t0 = Clock::now();
    const auto report = reproduce_table(dataset, MleOptions{1e-3});
    const double elapsed = seconds_since(t0);
    auto checks = check_rsg_column(report);
    checks.push_back(check_true("runtime", elapsed < max_seconds, fmt("%.2f s < %.0f s", elapsed, max_seconds)));
    return checks;
}

std::vector<ToleranceCheck> c1() { return table_criterion("claims", 60); }
std::vector<ToleranceCheck> c2() { return table_criterion("ticks", 60); }

std::vector<ToleranceCheck> c3() {
    std::vector<ToleranceCheck> checks;
    for (const std::string dataset : {"claims", "ticks"}) {
        auto part = check_competitors(reproduce_table(dataset, MleOptions{1e-3}));
        for (auto& c : part) c.label = dataset + ": " + c.label;
        add(checks, part);
    }
    return checks;
}

// Dispersion from a central finite-difference Hessian of the log-likelihood at the grid MLE.
std::vector<ToleranceCheck> c4() {
    std::vector<ToleranceCheck> checks;
    for (const std::string dataset : {"claims", "ticks"}) {
        const auto data = dataset_by_name(dataset);
        const auto m = mle_grid(data, MleOptions{1e-3});
        auto f = [&](double p, double b) { return loglik_rsg(p, b, data); };
        // beta_hat may sit one lattice step from 0, so the step stays below it
        const double step = std::min(1e-4, 0.25 * m.beta_hat);
        const Eigen::Matrix2d h = oracle::fd_hessian(f, m.p_hat, m.beta_hat, step);
        const Eigen::Matrix2d dispersion = (-h).inverse();
        auto part = check_dispersion(dataset, dispersion);
        for (auto& c : part) c.label = dataset + ": " + c.label;
        add(checks, part);
    }
    return checks;
}

std::vector<ToleranceCheck> c5() {
    const auto t0 = Clock::now();
    VerifyOptions o;
    o.include_sampler = false;
    const auto report = run_verification(o);
    const double elapsed = seconds_since(t0);
    std::vector<ToleranceCheck> checks;
    checks.push_back(check_true("grid points >= 50", report.grid_points >= 50, fmt("%.0f", static_cast<double>(report.grid_points))));
    for (const char* name : {"normalization", "cdf_pmf", "log_concavity", "unimodality", "ifr", "overdispersion",
                             "param_equivalence", "geometric_collapse", "alpha_limit"})
        checks.push_back(from_verify(report, name));
    checks.push_back(check_true("runtime", elapsed < 60, fmt("%.2f s < 60 s", elapsed)));
    return checks;
}

std::vector<ToleranceCheck> c6() {
    std::vector<ToleranceCheck> checks;
    VerifyOptions o;
    o.sampler_uniforms = 10000;
    const auto report = run_verification(o);
    for (const char* name : {"conditional_law", "conditional_expectation", "hazard_increments", "mean_series", "variance_series",
                             "sampler_agreement"})
        checks.push_back(from_verify(report, name));

    // moments against the independent series oracle
    double worst_mean = 0, worst_var = 0;
    for (const auto& g : verification_grid(false)) {
        const double m = oracle::expectation(g.p(), g.alpha(), [](double x) { return x; });
        const double m2 = oracle::expectation(g.p(), g.alpha(), [](double x) { return x * x; });
        worst_mean = std::max(worst_mean, std::abs(mean(g) - m) / std::max(1.0, m));
        worst_var = std::max(worst_var, std::abs(variance(g) - (m2 - m * m)) / std::max(1.0, m2 - m * m));
    }
    checks.push_back(check_true("mean vs oracle series", worst_mean < 1e-10, fmt("worst rel %.3g", worst_mean)));
    checks.push_back(check_true("variance vs oracle series", worst_var < 1e-10, fmt("worst rel %.3g", worst_var)));

    // score and Hessian against finite differences
    double worst_g = 0, worst_h = 0;
    for (const std::string dataset : {"claims", "ticks"}) {
        const auto data = dataset_by_name(dataset);
        for (double p : {0.15, 0.4, 0.6, 0.83})
            for (double b : {0.05, 0.3, 0.6, 0.9}) {
                auto f = [&](double x, double y) { return loglik_rsg(x, y, data); };
                const auto d = loglik_rsg_derivatives(p, b, data);
                const auto g = oracle::fd_gradient(f, p, b, 1e-6);
                const auto h = oracle::fd_hessian(f, p, b, 1e-4);
                for (int i = 0; i < 2; ++i) {
                    worst_g = std::max(worst_g, std::abs(d.gradient(i) - g(i)) / std::max(1.0, std::abs(g(i))));
                    for (int j = 0; j < 2; ++j)
                        worst_h = std::max(worst_h, std::abs(d.hessian(i, j) - h(i, j)) / std::max(1.0, std::abs(h(i, j))));
                }
            }
        for (double p : {0.2, 0.5, 0.8})
            for (double a : {0.5, 1.0, 3.0}) {
                auto f = [&](double x, double y) { return loglik_sg(x, y, data); };
                const auto g = oracle::fd_gradient(f, p, a, 1e-6);
                const auto s = score_sg(p, a, data);
                for (int i = 0; i < 2; ++i) worst_g = std::max(worst_g, std::abs(s(i) - g(i)) / std::max(1.0, std::abs(g(i))));
            }
    }
    checks.push_back(check_true("score vs finite differences", worst_g < 1e-5, fmt("worst rel %.3g", worst_g)));
    checks.push_back(check_true("Hessian vs finite differences", worst_h < 1e-4, fmt("worst rel %.3g", worst_h)));
    return checks;
}

std::vector<ToleranceCheck> c7() {
    const auto t0 = Clock::now();
    std::vector<PerfCellResult> cells;
    for (double p : {0.5, 0.8})
        for (double b : {0.5, 0.8})
            for (std::size_t n : {50, 500}) {
                const SimCell cell{p, b, n, 200, 1};
                cells.push_back({cell, mle_performance(cell)});
            }
    const double elapsed = seconds_since(t0);
    auto checks = check_perf_table(cells);
    checks.push_back(check_true("runtime", elapsed < 600, fmt("%.1f s < 600 s", elapsed)));
    return checks;
}

std::vector<ToleranceCheck> c8() {
    PowerConfig cfg;
    cfg.p_grid = {0.4, 0.55, 0.7};
    cfg.sizes = {100, 300};
    cfg.reps = 500;
    cfg.seed = 1;
    return check_power(power_study(cfg), cfg.reps);
}

struct Criterion {
    int id;
    const char* title;
    std::function<std::vector<ToleranceCheck>()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {1, "claims table, RSG column", c1},
        {2, "ticks table, RSG column", c2},
        {3, "competitor AIC ordering and values", c3},
        {4, "dispersion matrices", c4},
        {5, "distribution property suite", c5},
        {6, "oracle suite", c6},
        {7, "estimator performance at reduced scale", c7},
        {8, "LR power study at reduced scale", c8},
    };
    return all;
}

bool run_one(const Criterion& c) {
    const auto t0 = Clock::now();
    std::vector<ToleranceCheck> checks;
    try {
        checks = c.run();
    } catch (const std::exception& e) {
        checks.push_back({"exception", CheckStatus::fail, e.what()});
    }
    const bool ok = acceptable(checks);
    std::printf("criterion %d: %s  %s  (%.1f s)\n", c.id, ok ? "PASS" : "FAIL", c.title, seconds_since(t0));
    for (const auto& k : checks)
        std::printf("    %-11s %s: %s\n", status_name(k.status), k.label.c_str(), k.detail.c_str());
    std::fflush(stdout);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
            return 2;
        }
    }
    bool all_ok = true;
    bool found = false;
    for (const auto& c : criteria()) {
        if (only != 0 && c.id != only) continue;
        found = true;
        all_ok = run_one(c) && all_ok;
    }
    if (!found) {
        std::fprintf(stderr, "no criterion %d\n", only);
        return 2;
    }
    return all_ok ? 0 : 1;
}
