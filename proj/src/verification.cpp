#include "skewgeo/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "skewgeo/characterization.hpp"
#include "skewgeo/numeric.hpp"
#include "skewgeo/sampler.hpp"

namespace skewgeo {

namespace {

constexpr std::uint64_t kSweep = 200;

std::string describe(const SGParams<double>& params, const char* what, std::uint64_t x) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "p=%.4g alpha=%.4g %s=%llu", params.p(), params.alpha(), what,
                  static_cast<unsigned long long>(x));
    return buf;
}

// Records |violation| against a tolerance and remembers the first failing case.
class Tracker {
public:
    Tracker(std::string name, double tolerance) { result_.name = std::move(name), result_.tolerance = tolerance; }

    void observe(double violation, const std::string& where) {
        ++result_.cases;
        if (std::isnan(violation)) violation = std::numeric_limits<double>::infinity();
        result_.worst = std::max(result_.worst, violation);
        if (violation > result_.tolerance && result_.passed) {
            result_.passed = false;
            char buf[64];
            std::snprintf(buf, sizeof buf, " (violation %.3g)", violation);
            result_.detail = where + buf;
        }
    }

    CheckResult finish() { return std::move(result_); }

private:
    CheckResult result_;
};

std::vector<double> distinct_p(const std::vector<SGParams<double>>& grid) {
    std::vector<double> ps;
    for (const auto& g : grid) ps.push_back(g.p());
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
}

}  // namespace

bool VerifyReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* VerifyReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::vector<SGParams<double>> verification_grid(bool dense) {
    std::vector<double> ps, alphas;
    if (dense) {
        for (int i = 1; i <= 39; ++i) ps.push_back(0.025 * i);
        alphas = {0, 0.25, 0.5, 1, 1.5, 2, 3, 5, 10};
    } else {
        for (int i = 1; i <= 19; ++i) ps.push_back(0.05 * i);
        alphas = {0, 0.5, 1, 2, 5};
    }
    std::vector<SGParams<double>> grid;
    for (double p : ps)
        for (double a : alphas) grid.emplace_back(p, a);
    return grid;
}

PmfFunction perturbed_pmf(std::uint64_t x0, double eps) {
    return [x0, eps](const SGParams<double>& params, std::uint64_t x) {
        const double v = pmf(params, x);
        return x == x0 ? v * (1 + eps) : v;
    };
}

VerifyReport run_verification(const VerifyOptions& options) {
    const auto grid = verification_grid(options.dense);
    auto log_pmf_fn = [&](const SGParams<double>& params, std::uint64_t x) {
        return options.pmf_override ? std::log(options.pmf_override(params, x)) : log_pmf(params, x);
    };
    auto pmf_fn = [&](const SGParams<double>& params, std::uint64_t x) { return std::exp(log_pmf_fn(params, x)); };

    VerifyReport report;
    report.grid_points = grid.size();

    {
        Tracker t("normalization", 1e-10);
        for (const auto& g : grid) {
            const auto x_max = truncation_point(g);
            NeumaierSum s;
            for (std::uint64_t x = 0; x <= x_max; ++x) s.add(pmf_fn(g, x));
            const double bound = std::pow(g.p(), static_cast<double>(x_max + 1)) / normalizer(g);
            const double total = s.value() + bound;
            t.observe(std::abs(total - 1), describe(g, "X", x_max));
        }
        report.checks.push_back(t.finish());
    }
    {
        Tracker t("cdf_pmf", 1e-12);
        for (const auto& g : grid) {
            double prev = 0;
            for (std::uint64_t x = 0; x <= kSweep; ++x) {
                const double c = cdf(g, x);
                t.observe(std::abs(c - prev - pmf_fn(g, x)), describe(g, "x", x));
                prev = c;
            }
        }
        report.checks.push_back(t.finish());
    }
    {
        // In log units: 2 log P(x) - log P(x-1) - log P(x+1) >= -tol.
        Tracker t("log_concavity", 1e-9);
        for (const auto& g : grid) {
            std::vector<double> lp(kSweep + 2);
            for (std::uint64_t x = 0; x <= kSweep + 1; ++x) lp[x] = log_pmf_fn(g, x);
            for (std::uint64_t x = 1; x <= kSweep; ++x) t.observe(lp[x - 1] + lp[x + 1] - 2 * lp[x], describe(g, "x", x));
        }
        report.checks.push_back(t.finish());
    }
    {
        // After the first fall, no rise beyond relative 1e-12.
        Tracker t("unimodality", 1e-12);
        for (const auto& g : grid) {
            bool falling = false;
            double prev = log_pmf_fn(g, 0);
            for (std::uint64_t x = 1; x <= kSweep; ++x) {
                const double cur = log_pmf_fn(g, x);
                if (cur < prev) falling = true;
                t.observe(falling ? cur - prev : 0.0, describe(g, "x", x));
                prev = cur;
            }
        }
        report.checks.push_back(t.finish());
    }
    {
        Tracker t("ifr", 1e-12);
        for (const auto& g : grid) {
            double prev = hazard(g, 0);
            for (std::uint64_t x = 1; x <= kSweep; ++x) {
                const double h = hazard(g, x);
                t.observe(prev - h, describe(g, "x", x));
                prev = h;
            }
        }
        report.checks.push_back(t.finish());
    }
    {
        // pmf(x) / P(X > x) against the closed-form hazard, relative.
        Tracker t("hazard_ratio", 1e-10);
        for (const auto& g : grid)
            for (std::uint64_t x = 0; x <= kSweep; ++x) {
                const double h = hazard(g, x);
                const double ratio = std::exp(log_pmf_fn(g, x) - log_survival(g, x));
                t.observe(std::abs(ratio - h) / h, describe(g, "x", x));
            }
        report.checks.push_back(t.finish());
    }
    {
        Tracker t("overdispersion", 0);
        for (const auto& g : grid) t.observe(dispersion_index(g) > 1 ? 0.0 : 1.0, describe(g, "index", 0));
        report.checks.push_back(t.finish());
    }
    {
        Tracker t("param_equivalence", 1e-14);
        for (const auto& g : grid) {
            const auto r = to_rsg(g);
            const auto back = to_sg(r);
            const bool round_trip = std::abs(back.alpha() - g.alpha()) <= 1e-12 * std::max(1.0, g.alpha());
            t.observe(round_trip ? 0.0 : 1.0, describe(g, "round trip", 0));
            for (std::uint64_t x = 0; x <= 50; ++x) t.observe(std::abs(pmf_fn(g, x) - pmf(r, x)), describe(g, "x", x));
        }
        report.checks.push_back(t.finish());
    }
    {
        Tracker t("geometric_collapse", 1e-14);
        for (const auto& g : grid) {
            if (g.alpha() != 0) continue;
            const double q = 1 - g.p();
            for (std::uint64_t x = 0; x <= 50; ++x)
                t.observe(std::abs(pmf_fn(g, x) - q * std::pow(g.p(), static_cast<double>(x))), describe(g, "x", x));
        }
        report.checks.push_back(t.finish());
    }
    {
        // alpha large enough that p^alpha < 1e-13, and at least 200.
        Tracker t("alpha_limit", 1e-10);
        for (double p : distinct_p(grid)) {
            const double alpha = std::max(200.0, std::ceil(std::log(1e-13) / std::log(p)));
            const SGParams<double> g(p, alpha);
            for (std::uint64_t x = 0; x <= 20; ++x)
                t.observe(std::abs(pmf_fn(g, x) - limit_pmf_alpha_infinity(p, x)), describe(g, "x", x));
        }
        report.checks.push_back(t.finish());
    }
    {
        Tracker tm("mean_series", 1e-10);
        Tracker tv("variance_series", 1e-10);
        Tracker tg("pgf_series", 1e-12);
        for (const auto& g : grid) {
            const auto x_max = truncation_point(g, 1e-20);
            NeumaierSum m1, m2;
            const std::array<double, 4> zs{0.0, 0.5, 0.9, 1.0};
            std::array<NeumaierSum, 4> gz;
            for (std::uint64_t x = 0; x <= x_max; ++x) {
                const double px = pmf_fn(g, x);
                const double xd = static_cast<double>(x);
                m1.add(xd * px);
                m2.add(xd * xd * px);
                for (std::size_t i = 0; i < zs.size(); ++i) gz[i].add(px * std::pow(zs[i], xd));
            }
            const double mu = m1.value();
            const double var = m2.value() - mu * mu;
            tm.observe(std::abs(mean(g) - mu) / std::max(1.0, mu), describe(g, "X", x_max));
            tv.observe(std::abs(variance(g) - var) / std::max(1.0, var), describe(g, "X", x_max));
            for (std::size_t i = 0; i < zs.size(); ++i)
                tg.observe(std::abs(pgf(g, zs[i]) - gz[i].value()), describe(g, "X", x_max));
        }
        report.checks.push_back(tm.finish());
        report.checks.push_back(tv.finish());
        report.checks.push_back(tg.finish());
    }
    {
        std::vector<double> ps{0.2, 0.5, 0.8};
        std::vector<std::uint64_t> alphas{1, 2, 3};
        if (options.dense) {
            ps = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
            alphas = {1, 2, 3, 4, 5};
        }
        Tracker t1("conditional_law", 1e-10);
        Tracker t2("conditional_expectation", 1e-9);
        Tracker t3("hazard_increments", 1e-9);
        for (double p : ps)
            for (auto a : alphas) {
                const SGParams<double> g(p, static_cast<double>(a));
                const auto spec = ConditionalLawSpec::with_tolerance(p, a);
                for (std::uint64_t x = 0; x <= 30; ++x)
                    t1.observe(std::abs(conditional_law_pmf(spec, x) - pmf_fn(g, x)), describe(g, "x", x));
                for (std::uint64_t k = 0; k <= 10; ++k) {
                    const auto sides = conditional_expectation_sides(g, k);
                    t2.observe(std::abs(sides.lhs - sides.rhs), describe(g, "k", k));
                }
                const auto rebuilt = hazard_from_increments(g, 100);
                for (std::uint64_t x = 0; x <= 100; ++x)
                    t3.observe(std::abs(rebuilt[x] - hazard(g, x)), describe(g, "x", x));
            }
        report.checks.push_back(t1.finish());
        report.checks.push_back(t2.finish());
        report.checks.push_back(t3.finish());
    }
    if (options.include_sampler) {
        // Stratified uniforms (i + 1/2)/N; any disagreement fails.
        Tracker t("sampler_agreement", 0);
        const auto n = options.sampler_uniforms;
        for (const auto& g : grid) {
            std::size_t mismatches = 0;
            std::uint64_t first_bad = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
                if (draw_paper(g, u) != draw_inverse(g, u)) {
                    if (mismatches++ == 0) first_bad = i;
                }
            }
            t.observe(static_cast<double>(mismatches), describe(g, "uniform", first_bad));
        }
        report.checks.push_back(t.finish());
    }
    return report;
}

}  // namespace skewgeo
