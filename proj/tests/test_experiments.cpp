#include <doctest.h>

#include <cmath>

#include "skewgeo/experiments.hpp"
#include "skewgeo/reproduction.hpp"

using namespace skewgeo;
using doctest::Approx;

TEST_CASE("one replication reproduces a direct fit") {
    const SimCell cell{0.5, 0.5, 100, 1, 42};
    const auto row = mle_performance(cell);
    const auto rep = run_replication(cell, 0);
    RngStream rng(42, 0);
    const auto xs = sample(RSGParams<double>(0.5, 0.5), 100, rng);
    MleOptions o;
    o.resolution = 1e-3;
    const auto m = mle_grid(CountData::from_observations(xs), o);
    CHECK(rep.p_hat == m.p_hat);
    CHECK(rep.beta_hat == m.beta_hat);
    CHECK(row.bias_p == Approx(m.p_hat - 0.5));
    CHECK(row.mse_p == Approx((m.p_hat - 0.5) * (m.p_hat - 0.5)));
    CHECK(row.used_reps == 1);
}

TEST_CASE("results do not depend on the thread count") {
    const SimCell cell{0.8, 0.8, 50, 40, 3};
    SimOptions one, four;
    one.threads = 1;
    four.threads = 4;
    const auto a = mle_performance(cell, one);
    const auto b = mle_performance(cell, four);
    CHECK(a.bias_p == b.bias_p);
    CHECK(a.mse_beta == b.mse_beta);
    CHECK(a.mean_ci_p.lo == b.mean_ci_p.lo);
    CHECK(a.mse_p >= a.bias_p * a.bias_p);
    CHECK(a.mse_beta >= a.bias_beta * a.bias_beta);
}

TEST_CASE("interval and error sizes at n = 500") {
    const auto hi = mle_performance(SimCell{0.8, 0.8, 500, 40, 1});
    CHECK(hi.mean_ci_p.lo < 0.8);
    CHECK(hi.mean_ci_p.hi > 0.8);
    CHECK(hi.mean_ci_p.hi - hi.mean_ci_p.lo < 0.15);
    CHECK(std::abs(hi.bias_p) < 0.02);
    const auto mid = mle_performance(SimCell{0.5, 0.5, 500, 40, 1});
    CHECK(mid.mean_ci_p.lo < 0.5);
    CHECK(mid.mean_ci_p.hi > 0.5);
    CHECK(mid.mse_p < 0.01);
}

TEST_CASE("power study layout and common random numbers") {
    PowerConfig cfg;
    cfg.p_grid = {0.5};
    cfg.betas = {1.0, 0.1};
    cfg.sizes = {100};
    cfg.reps = 40;
    const auto cells = power_study(cfg);
    REQUIRE(cells.size() == 2);
    CHECK(cells[0].beta == 1.0);
    CHECK(cells[1].power > cells[0].power);
    CHECK(power_study(cfg)[1].power == cells[1].power);
    CHECK(lr_critical_value(0.05) == 3.841);
    CHECK(lr_critical_value(0.01) == Approx(6.6349).epsilon(1e-4));
}

TEST_CASE("comparative table for the claims data") {
    const auto report = reproduce_table("claims", MleOptions{1e-3});
    REQUIRE(report.models.size() == 5);
    CHECK(report.models[0].fit.model == "rsg");
    CHECK(report.models[0].fit.aic == Approx(1990.5845).epsilon(1e-7));
    double best = 1e300;
    for (const auto& m : report.models) best = std::min(best, m.fit.aic);
    CHECK(report.models[0].fit.aic == best);
    CHECK_FALSE(report.variants.has_value());
    CHECK(report.lr.lambda == Approx(1.2502).epsilon(1e-4));
    CHECK_THROWS(reproduce_table("sheep"));
}

TEST_CASE("collapsing grouped rows") {
    const auto c = collapse_to_lower_ends(CountData({{Bin::exact(0), 1}, {Bin::range(2, 4), 3}, {Bin::tail(5), 2}}));
    REQUIRE(c.rows().size() == 3);
    CHECK(c.rows()[1].bin == Bin::exact(2));
    CHECK(c.rows()[2].bin == Bin::exact(5));
    CHECK_FALSE(c.is_grouped());
}

TEST_CASE("tolerance checks treat the boundary as inside") {
    CHECK(check_within("size", 10.0 / 500, 0.05, 0.03).status == CheckStatus::pass);
    CHECK(check_within("size", 0.0199, 0.05, 0.03).status == CheckStatus::fail);
    CHECK(check_relative("v", 1.3, 1.0, 0.3).status == CheckStatus::pass);
    CHECK(acceptable({check_true("a", true), {"b", CheckStatus::discrepancy, ""}}));
    CHECK_FALSE(acceptable({check_true("a", false)}));
}
