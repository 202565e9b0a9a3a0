#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "skewgeo/count_data.hpp"
#include "skewgeo/estimation.hpp"

namespace skewgeo {

struct CountModel;

/// Upper tail of the chi-square distribution, Q(df/2, x/2).
double chi2_sf(double x, int df);

/// 2k - 2 loglik.
double aic(double loglik, int k = 2);

struct GofBin {
    Bin bin;
    double observed = 0;
    double expected = 0;
};

struct GofReport {
    double chi2 = 0;
    int df = 0;  // bins - 1 - 2 fitted parameters
    double p_value = 1;
    std::vector<GofBin> bins;
    std::vector<std::string> warnings;  // e.g. expected counts below 1; bins are never merged
};

/// One bin per data row (ranges kept), gaps filled by a single zero-count bin,
/// and the last bin opened into a tail.
std::vector<Bin> default_gof_bins(const CountData& data);

/// Pearson chi-square with expected(bin) = n * bin_mass(bin). Bins must start at 0,
/// be contiguous and end in an open tail; every data row must fall inside one bin.
GofReport gof(const CountData& data, const std::function<double(const Bin&)>& bin_mass, const std::vector<Bin>& bins);
GofReport gof(const CountData& data, const CountModel& model, const Eigen::Vector2d& theta,
              const std::vector<Bin>& bins);

inline constexpr double kLrCritical5pct = 3.841;

struct LrReport {
    double lambda = 0;
    double p_tilde = 0;
    double p_hat = 0;
    double beta_hat = 0;
    double loglik_null = 0;
    double loglik_alt = 0;
    double p_value = 1;
    bool reject_at_5pct = false;
};

/// Geometric (beta = 1) against RSG; lambda = -2(l(p~, 1) - l(p^, beta^)) floored at 0,
/// rejected when it exceeds 3.841.
LrReport lr_test(const CountData& data, const MleOptions& options = {});
LrReport lr_test(const CountData& data, const MleResult& alternative);

}  // namespace skewgeo
