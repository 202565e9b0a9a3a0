#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "skewgeo/characterization.hpp"

using namespace skewgeo;
using doctest::Approx;

TEST_CASE("conditional law of X1 given X2 <= alpha X1") {
    CHECK(std::abs(conditional_law_pmf(ConditionalLawSpec::with_tolerance(0.5, 1), 0) - 0.375) < 1e-12);
    CHECK(std::abs(conditional_law_pmf(ConditionalLawSpec::with_tolerance(0.5, 2), 1) - oracle::pmf(0.5, 2, 1)) < 1e-12);
    for (double p : {0.2, 0.5, 0.8})
        for (std::uint64_t a : {1, 2, 3}) {
            const auto spec = ConditionalLawSpec::with_tolerance(p, a);
            CHECK(std::abs(conditioning_probability(spec) - oracle::normalizer(p, static_cast<double>(a))) < 1e-12);
            for (std::uint64_t x = 0; x <= 30; ++x)
                CHECK(std::abs(conditional_law_pmf(spec, x) - pmf(SGParams<double>(p, static_cast<double>(a)), x)) < 1e-10);
        }
    CHECK_THROWS(ConditionalLawSpec(0.5, 0, 100));
}

TEST_CASE("conditional expectation identity given X >= k") {
    for (double p : {0.2, 0.3, 0.5, 0.8})
        for (double a : {1.0, 2.0, 3.0}) {
            const SGParams<double> g(p, a);
            const auto s0 = conditional_expectation_sides(g, 0);
            CHECK(s0.rhs == Approx(1).epsilon(1e-15));
            for (std::uint64_t k = 0; k <= 10; ++k) {
                const auto s = conditional_expectation_sides(g, k);
                CHECK(std::abs(s.lhs - s.rhs) < 1e-9);
            }
        }
    // (p, alpha) = (0.5, 1), k = 0 through pgf values: 2.25 G(0.5) - 0.625 G(0.25) = 1
    const SGParams<double> g(0.5, 1);
    CHECK(2.25 * pgf(g, 0.5) - 0.625 * pgf(g, 0.25) == Approx(1).epsilon(1e-14));
    CHECK(conditional_expectation_sides(g, 0).lhs == Approx(1).epsilon(1e-12));
}

TEST_CASE("hazard rebuilt from increments") {
    const SGParams<double> g(0.5, 1);
    const auto h = hazard_from_increments(g, 100);
    CHECK(h[0] == Approx(0.6).epsilon(1e-14));
    for (double p : {0.2, 0.5, 0.8})
        for (double a : {1.0, 2.0, 3.0}) {
            const SGParams<double> s(p, a);
            const auto rebuilt = hazard_from_increments(s, 100);
            REQUIRE(rebuilt.size() == 101);
            for (std::uint64_t x = 0; x <= 100; ++x) {
                CHECK(std::abs(rebuilt[x] - hazard(s, x)) < 1e-9);
                CHECK(hazard_increment(s, x) >= 0);
            }
        }
    for (double p : {0.2, 0.5, 0.8}) {
        const SGParams<double> geo(p, 0);
        for (std::uint64_t x = 0; x < 20; ++x) CHECK(hazard_increment(geo, x) == 0.0);
    }
}

TEST_CASE("the printed initial condition disagrees with the hazard at 0") {
    for (double p : {0.2, 0.5, 0.8}) {
        const SGParams<double> g(p, 1.0);
        CHECK(std::abs(printed_hazard_initial_condition(g) - hazard(g, 0)) > 1e-3);
    }
}
