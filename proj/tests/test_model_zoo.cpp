#include <doctest.h>

#include <cmath>

#include "skewgeo/datasets.hpp"
#include "skewgeo/model_zoo.hpp"
#include "skewgeo/published.hpp"
#include "skewgeo/sampler.hpp"

using namespace skewgeo;
using doctest::Approx;

namespace {

double total_mass(const CountModel& m, const Eigen::Vector2d& th) {
    long double s = 0;
    for (std::uint64_t x = 0; x < 200000; ++x) {
        const double v = m.pmf(th, x);
        s += v;
        if (x > 50 && v < 1e-18) break;
    }
    return static_cast<double>(s);
}

}  // namespace

TEST_CASE("every model is a probability distribution") {
    RngStream rng(5, 0);
    for (const auto& m : all_models()) {
        for (int i = 0; i < 20; ++i) {
            const Eigen::Vector2d th(m.first.to_param(0.05 + 0.9 * rng.next_uniform()),
                                     m.second.to_param(0.05 + 0.9 * rng.next_uniform()));
            REQUIRE(m.admissible(th));
            CHECK_MESSAGE(std::abs(total_mass(m, th) - 1) < 1e-9, m.name << " at " << th.transpose());
            CHECK(m.bin_mass(th, Bin::tail(0)) == Approx(1));
            CHECK(m.bin_mass(th, Bin::range(0, 3)) + m.bin_mass(th, Bin::tail(4)) == Approx(1).epsilon(1e-12));
        }
    }
}

TEST_CASE("special cases reduce to known laws") {
    for (double b : {0.2, 0.5, 0.9})
        for (std::uint64_t x = 0; x < 15; ++x) {
            const double geo = std::pow(b, static_cast<double>(x)) * (1 - b);
            // NB with r = 1: beta (1-beta)^x
            CHECK(pmf_nb(1, b, x) == Approx(b * std::pow(1 - b, static_cast<double>(x))).epsilon(1e-12));
            CHECK(pmf_nd(0, b, x) == Approx(geo).epsilon(1e-12));
            CHECK(pmf_nd(1e-9, b, x) == Approx(geo).epsilon(1e-6));
            // NGPL with p = 0: beta^2/beta (1+beta)^-(x+1)
            CHECK(pmf_ngpl(0, b, x) == Approx(b * std::pow(1 + b, -static_cast<double>(x) - 1)).epsilon(1e-12));
        }
    // ND cdf telescopes: sum_{x<=K} = 1 - log(1 - p b^(K+1)) / log(1 - p)
    for (double p : {-3.0, -0.5, 0.4, 0.9})
        for (double b : {0.3, 0.7}) {
            double s = 0;
            for (std::uint64_t x = 0; x <= 12; ++x) s += pmf_nd(p, b, x);
            CHECK(s == Approx(1 - std::log1p(-p * std::pow(b, 13)) / std::log1p(-p)).epsilon(1e-12));
        }
    CHECK(std::isnan(log_pmf_wg(-1, 0.5, 0)));
    CHECK(std::isnan(log_pmf_nb(1, 1.5, 0)));
    CHECK_THROWS(model_by_name("poisson"));
}

TEST_CASE("fits on the claims data") {
    const auto claims = claims_data();
    MleOptions o;
    o.resolution = 1e-3;
    const auto* table = published_table("claims");
    REQUIRE(table);
    const auto models = all_models();
    REQUIRE(models.size() == 5);
    for (std::size_t i = 0; i < models.size(); ++i) {
        const auto f = fit_model(models[i], claims, o);
        CHECK(table->models[i].name == models[i].name);
        CHECK_MESSAGE(std::abs(f.aic - table->models[i].aic) < 0.2, models[i].name << " aic " << f.aic);
        CHECK(f.aic == Approx(4 - 2 * f.loglik));
        CHECK(f.loglik == Approx(models[i].loglik(f.theta, claims)));
    }
}

TEST_CASE("numeric Hessian of the RSG model matches the analytic one") {
    const auto ticks = ticks_data();
    const Eigen::Vector2d th(0.83, 0.6);
    const auto h = numeric_hessian(make_model(ModelKind::rsg), th, ticks);
    const auto a = loglik_rsg_derivatives(0.83, 0.6, ticks).hessian;
    CHECK((h - a).norm() < 1e-4 * a.norm());
}
