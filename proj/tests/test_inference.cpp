#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "skewgeo/datasets.hpp"
#include "skewgeo/dist_core.hpp"
#include "skewgeo/inference.hpp"
#include "skewgeo/model_zoo.hpp"
#include "skewgeo/sampler.hpp"

using namespace skewgeo;
using doctest::Approx;

TEST_CASE("chi-square tail against Simpson integration") {
    for (int df = 1; df <= 10; ++df)
        for (double x = 0.25; x <= 30; x += 1.25) CHECK(std::abs(chi2_sf(x, df) - oracle::chi2_sf(x, df)) < 1e-6);
    CHECK(chi2_sf(0, 3) == 1);
    CHECK(chi2_sf(2.742, 2) == Approx(0.2538).epsilon(5e-4));
    CHECK(chi2_sf(3.841, 1) == Approx(0.05).epsilon(1e-3));
    CHECK(chi2_sf(2, 2) == Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("aic") {
    CHECK(aic(-993.29225) == Approx(1990.5845));
    CHECK(aic(-10, 3) == 26);
}

TEST_CASE("goodness of fit") {
    const auto claims = claims_data();
    const auto bins = default_gof_bins(claims);
    REQUIRE(bins.size() == 5);
    CHECK(bins.back() == Bin::tail(4));
    const auto rsg = make_model(ModelKind::rsg);
    const auto r = gof(claims, rsg, Eigen::Vector2d(0.145, 0.001), bins);
    double obs = 0, exp = 0;
    for (const auto& b : r.bins) {
        obs += b.observed;
        exp += b.expected;
    }
    CHECK(obs == 1875);
    CHECK(exp == Approx(1875).epsilon(1e-12));
    CHECK(r.df == 2);
    CHECK(r.chi2 == Approx(2.7493).epsilon(1e-4));
    CHECK(r.p_value == Approx(oracle::chi2_sf(r.chi2, 2)).epsilon(1e-6));
    CHECK(r.bins[0].expected == Approx(1564.681).epsilon(1e-6));
    CHECK_FALSE(r.warnings.empty());  // the 4+ bin expects fewer than one

    // the empirical distribution fits itself exactly
    auto empirical = [&](const Bin& b) {
        double c = 0;
        for (const auto& row : claims.rows())
            if (b.contains(row.bin.lo)) c += static_cast<double>(row.count);
        return c / 1875;
    };
    CHECK(gof(claims, empirical, bins).chi2 == Approx(0).epsilon(1e-12));

    const auto tb = default_gof_bins(ticks_data());
    CHECK(tb.size() == 11);
    CHECK(tb[9] == Bin::range(11, 14));
    CHECK(tb[10] == Bin::tail(15));
    const std::vector<Bin> gap{Bin::exact(0), Bin::exact(2), Bin::exact(3), Bin::tail(4)};
    CHECK_THROWS(gof(claims, empirical, gap));
    CHECK(default_gof_bins(CountData({{Bin::exact(0), 2}, {Bin::exact(3), 1}})) ==
          std::vector<Bin>{Bin::exact(0), Bin::range(1, 2), Bin::tail(3)});
}

TEST_CASE("likelihood-ratio statistic") {
    MleOptions o;
    o.resolution = 1e-3;
    const auto claims = lr_test(claims_data(), o);
    CHECK(claims.lambda == Approx(1.2502).epsilon(1e-4));
    CHECK_FALSE(claims.reject_at_5pct);
    CHECK(claims.p_tilde == Approx(364.0 / 2239));
    CHECK(claims.p_value == Approx(chi2_sf(claims.lambda, 1)));

    // geometric data: the alternative barely improves on the null
    std::vector<FrequencyRow> rows;
    for (std::uint64_t x = 0; x < 20; ++x) rows.push_back({Bin::exact(x), std::uint64_t{1} << (19 - x)});
    const auto geo = lr_test(CountData(rows), o);
    CHECK(geo.lambda >= 0);
    CHECK(geo.lambda < 0.05);
}

TEST_CASE("size of the LR test under geometric data") {
    MleOptions o;
    o.resolution = 1e-3;
    const std::size_t reps = 500, n = 200;
    std::size_t rejections = 0;
    for (std::size_t r = 0; r < reps; ++r) {
        RngStream rng(77, r);
        const auto xs = sample(SGParams<double>(0.5, 0), n, rng);
        rejections += lr_test(CountData::from_observations(xs), o).reject_at_5pct;
    }
    const double size = static_cast<double>(rejections) / reps;
    MESSAGE("empirical size " << size);
    CHECK(std::abs(size - 0.05) <= 0.03);
}
