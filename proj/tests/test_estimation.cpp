#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "skewgeo/datasets.hpp"
#include "skewgeo/estimation.hpp"
#include "skewgeo/sampler.hpp"

using namespace skewgeo;
using doctest::Approx;

namespace {

// Log-likelihood from the weight series; grouped rows and tails sum the pmf directly.
double oracle_loglik(double p, double beta, const CountData& data) {
    const double a = std::log(beta) / std::log(p);
    double total = 0;
    for (const auto& row : data.rows()) {
        if (row.count == 0) continue;
        double mass = 0;
        if (row.bin.is_open()) {
            for (std::uint64_t x = row.bin.lo; std::pow(p, static_cast<double>(x - row.bin.lo)) > 1e-22; ++x)
                mass += oracle::pmf(p, a, x);
        } else {
            for (std::uint64_t x = row.bin.lo; x <= *row.bin.hi; ++x) mass += oracle::pmf(p, a, x);
        }
        total += static_cast<double>(row.count) * std::log(mass);
    }
    return total;
}

}  // namespace

TEST_CASE("log-likelihood against the series oracle") {
    const auto claims = claims_data();
    const auto ticks = ticks_data();
    for (double p : {0.15, 0.5, 0.83})
        for (double b : {0.001, 0.3, 0.615, 0.95}) {
            CHECK(loglik_rsg(p, b, claims) == Approx(oracle_loglik(p, b, claims)).epsilon(1e-10));
            CHECK(loglik_rsg(p, b, ticks) == Approx(oracle_loglik(p, b, ticks)).epsilon(1e-9));
        }
    // beta = 1 reduces to the geometric likelihood n log(1-p) + sum x log p
    for (double p : {0.1, 0.3, 0.7})
        CHECK(loglik_rsg(p, 1, claims) == Approx(1875 * std::log(1 - p) + 364 * std::log(p)).epsilon(1e-12));
    CHECK(loglik_rsg(0.145, 0.001, claims) == Approx(-993.29225).epsilon(2e-7));
    CHECK(loglik_sg(0.5, 1, claims) == Approx(loglik_rsg(0.5, 0.5, claims)).epsilon(1e-13));
    CHECK_THROWS(loglik_rsg(0, 0.5, claims));
    CHECK_THROWS(loglik_rsg(0.5, 1.2, claims));
}

TEST_CASE("analytic derivatives against finite differences") {
    const auto claims = claims_data();
    const auto ticks = ticks_data();
    for (const auto* data : {&claims, &ticks})
        for (double p : {0.2, 0.5, 0.83})
            for (double b : {0.1, 0.6, 0.9}) {
                auto f = [&](double a, double c) { return loglik_rsg(a, c, *data); };
                const auto d = loglik_rsg_derivatives(p, b, *data);
                const auto g = oracle::fd_gradient(f, p, b, 1e-6);
                const auto h = oracle::fd_hessian(f, p, b, 1e-4);
                CHECK(d.value == Approx(f(p, b)).epsilon(1e-12));
                for (int i = 0; i < 2; ++i) {
                    CHECK(std::abs(d.gradient(i) - g(i)) < 1e-5 * std::max(1.0, std::abs(g(i))));
                    for (int j = 0; j < 2; ++j)
                        CHECK(std::abs(d.hessian(i, j) - h(i, j)) < 1e-4 * std::max(1.0, std::abs(h(i, j))));
                }
                CHECK((observed_information(p, b, *data) + d.hessian).norm() < 1e-12 * d.hessian.norm());
            }
    for (double p : {0.2, 0.5})
        for (double a : {0.5, 1.0, 3.0}) {
            auto f = [&](double x, double y) { return loglik_sg(x, y, claims); };
            const auto g = oracle::fd_gradient(f, p, a, 1e-6);
            const auto s = score_sg(p, a, claims);
            for (int i = 0; i < 2; ++i) CHECK(std::abs(s(i) - g(i)) < 1e-5 * std::max(1.0, std::abs(g(i))));
        }
}

TEST_CASE("grid MLE on the embedded datasets") {
    const auto claims = claims_data();
    MleOptions coarse;
    coarse.resolution = 1e-3;
    const auto c3 = mle_grid(claims, coarse);
    CHECK(c3.p_hat == Approx(0.145).epsilon(1e-12));
    CHECK(c3.beta_hat == Approx(0.001).epsilon(1e-12));
    const auto c4 = mle_grid(claims);
    CHECK(std::abs(c4.p_hat - c3.p_hat) < 2e-3);
    CHECK(std::abs(c4.beta_hat - c3.beta_hat) < 2e-3);
    CHECK(c4.loglik >= c3.loglik);

    const auto t3 = mle_grid(ticks_data(), coarse);
    CHECK(t3.p_hat == Approx(0.831).epsilon(1e-12));
    CHECK(t3.beta_hat == Approx(0.615).epsilon(1e-12));
    CHECK(t3.info_positive_definite);
    CHECK(t3.ci_p.lo < t3.p_hat);
    CHECK(t3.ci_p.hi > t3.p_hat);
}

TEST_CASE("grid incumbent beats its lattice neighbours") {
    const auto ticks = ticks_data();
    const double r = 1e-3;
    MleOptions o;
    o.resolution = r;
    const auto m = mle_grid(ticks, o);
    for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
            const double p = m.p_hat + di * r, b = m.beta_hat + dj * r;
            if (p <= 0 || p >= 1 || b <= 0 || b > 1) continue;
            CHECK(loglik_rsg(p, b, ticks) <= m.loglik + 1e-12);
        }
    o.exhaustive = true;
    const auto e = mle_grid(ticks, o);
    CHECK(e.p_hat == Approx(m.p_hat));
    CHECK(e.beta_hat == Approx(m.beta_hat));
}

TEST_CASE("MLE recovers the truth on a large simulated sample") {
    RngStream rng(11, 0);
    const auto xs = sample(RSGParams<double>(0.5, 0.5), 5000, rng);
    MleOptions o;
    o.resolution = 1e-3;
    const auto m = mle_grid(CountData::from_observations(xs), o);
    CHECK(std::abs(m.p_hat - 0.5) < 0.03);
    CHECK(std::abs(m.beta_hat - 0.5) < 0.15);
}

TEST_CASE("degenerate data and small helpers") {
    CHECK_THROWS_AS(mle_grid(CountData({{Bin::exact(0), 10}})), DegenerateDataError);
    CHECK(normal_two_sided_quantile(0.95) == Approx(oracle::normal_two_sided(0.95)).epsilon(1e-9));
    CHECK(normal_two_sided_quantile(0.95) == Approx(1.959964).epsilon(1e-6));
    CHECK(normal_two_sided_quantile(0.90) == Approx(oracle::normal_two_sided(0.90)).epsilon(1e-9));
    const auto ci = wald_ci(0.5, 0.01);
    CHECK(ci.lo == Approx(0.5 - 0.1959964).epsilon(1e-6));
    CHECK(wald_ci(0.99, 0.01).hi > 1);
    CHECK(geometric_mle(claims_data()) == Approx(364.0 / 2239).epsilon(1e-14));
    CHECK(geometric_profile_mle(claims_data()) == Approx(364.0 / 2239).epsilon(1e-12));
    const auto ticks = ticks_data();
    const double pt = geometric_profile_mle(ticks);
    CHECK(loglik_rsg(pt, 1, ticks) >= loglik_rsg(pt + 1e-4, 1, ticks));
    CHECK(loglik_rsg(pt, 1, ticks) >= loglik_rsg(pt - 1e-4, 1, ticks));
}
