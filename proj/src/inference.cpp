#include "skewgeo/inference.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "skewgeo/model_zoo.hpp"

namespace skewgeo {

double chi2_sf(double x, int df) {
    if (df < 1) throw std::domain_error("chi2_sf: df must be positive");
    if (!(x >= 0)) throw std::domain_error("chi2_sf: x must be non-negative");
    if (x == 0) return 1.0;
    return boost::math::gamma_q(0.5 * df, 0.5 * x);
}

double aic(double loglik, int k) { return 2.0 * k - 2.0 * loglik; }

std::vector<Bin> default_gof_bins(const CountData& data) {
    std::vector<Bin> bins;
    std::uint64_t next = 0;
    for (const auto& row : data.rows()) {
        if (row.bin.lo > next) bins.push_back(row.bin.lo - 1 == next ? Bin::exact(next) : Bin::range(next, row.bin.lo - 1));
        bins.push_back(row.bin);
        if (row.bin.is_open()) return bins;
        next = *row.bin.hi + 1;
    }
    bins.back() = Bin::tail(bins.back().lo);
    return bins;
}

GofReport gof(const CountData& data, const std::function<double(const Bin&)>& bin_mass, const std::vector<Bin>& bins) {
    if (bins.size() < 4) throw std::invalid_argument("goodness of fit needs at least 4 bins (df = bins - 3)");
    if (bins.front().lo != 0) throw std::invalid_argument("goodness-of-fit bins must start at 0");
    if (!bins.back().is_open()) throw std::invalid_argument("goodness-of-fit bins must end in an open tail");
    for (std::size_t i = 1; i < bins.size(); ++i)
        if (bins[i - 1].is_open() || bins[i].lo != *bins[i - 1].hi + 1)
            throw std::invalid_argument("goodness-of-fit bins must be contiguous");

    GofReport report;
    report.df = static_cast<int>(bins.size()) - 3;
    const double n = static_cast<double>(data.n());
    for (const auto& b : bins) report.bins.push_back({b, 0.0, n * bin_mass(b)});

    for (const auto& row : data.rows()) {
        bool placed = false;
        for (auto& gb : report.bins) {
            const bool starts_inside = gb.bin.contains(row.bin.lo);
            const bool ends_inside = row.bin.is_open() ? gb.bin.is_open() : gb.bin.contains(*row.bin.hi);
            if (starts_inside && ends_inside) {
                gb.observed += static_cast<double>(row.count);
                placed = true;
                break;
            }
        }
        if (!placed) throw std::invalid_argument("data row " + row.bin.to_string() + " straddles goodness-of-fit bins");
    }

    for (const auto& gb : report.bins) {
        const double diff = gb.observed - gb.expected;
        report.chi2 += diff * diff / gb.expected;
        if (gb.expected < 1) {
            std::ostringstream msg;
            msg << "expected count " << gb.expected << " below 1 in bin " << gb.bin.to_string();
            report.warnings.push_back(msg.str());
        }
    }
    report.p_value = chi2_sf(report.chi2, report.df);
    return report;
}

GofReport gof(const CountData& data, const CountModel& model, const Eigen::Vector2d& theta,
              const std::vector<Bin>& bins) {
    return gof(data, [&](const Bin& b) { return model.bin_mass(theta, b); }, bins);
}

LrReport lr_test(const CountData& data, const MleResult& alternative) {
    LrReport r;
    r.p_tilde = geometric_profile_mle(data);
    r.p_hat = alternative.p_hat;
    r.beta_hat = alternative.beta_hat;
    r.loglik_null = loglik_rsg(r.p_tilde, 1.0, data);
    r.loglik_alt = alternative.loglik;
    r.lambda = std::max(0.0, -2.0 * (r.loglik_null - r.loglik_alt));
    r.p_value = chi2_sf(r.lambda, 1);
    r.reject_at_5pct = r.lambda > kLrCritical5pct;
    return r;
}

LrReport lr_test(const CountData& data, const MleOptions& options) { return lr_test(data, mle_grid(data, options)); }

}  // namespace skewgeo
