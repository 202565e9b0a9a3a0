#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "skewgeo/count_data.hpp"

namespace skewgeo {

/// RSG log-likelihood with the data's rows reduced to sufficient statistics.
///
/// Exact rows contribute count * log pmf(x); a closed range [a, b] contributes
/// count * log(P(X >= a) - P(X > b)); an open tail [a, inf) contributes
/// count * log P(X >= a).
class RsgLikelihood {
  public:
    explicit RsgLikelihood(const CountData& data);

    /// Returns -inf when some bin mass underflows to zero.
    double operator()(double p, double beta) const;

  private:
    struct Exact {
        double x;
        double count;
    };
    struct Group {
        std::uint64_t lo;
        std::optional<std::uint64_t> hi;
        double count;
    };
    std::vector<Exact> exact_;
    std::vector<Group> groups_;
    double n_exact_ = 0;
    double sum_x_ = 0;
};

double loglik_rsg(double p, double beta, const CountData& data);

/// SG(p, alpha) log-likelihood, i.e. loglik_rsg at beta = p^alpha.
double loglik_sg(double p, double alpha, const CountData& data);

struct LoglikDerivatives {
    double value = 0;
    Eigen::Vector2d gradient = Eigen::Vector2d::Zero();  // (d/dp, d/dbeta)
    Eigen::Matrix2d hessian = Eigen::Matrix2d::Zero();
};

/// Analytic value, gradient and Hessian of the RSG log-likelihood in (p, beta).
LoglikDerivatives loglik_rsg_derivatives(double p, double beta, const CountData& data);

/// (dl/dp, dl/dalpha) of the SG log-likelihood.
Eigen::Vector2d score_sg(double p, double alpha, const CountData& data);

/// Negative Hessian of the RSG log-likelihood.
Eigen::Matrix2d observed_information(double p, double beta, const CountData& data);

struct Interval {
    double lo = 0;
    double hi = 0;
};

/// Two-sided standard-normal quantile z with P(|Z| <= z) = level.
double normal_two_sided_quantile(double level);

/// estimate +- z sqrt(variance); deliberately not clamped to the parameter domain.
Interval wald_ci(double estimate, double variance, double level = 0.95);

struct MleOptions {
    double resolution = 1e-4;
    bool exhaustive = false;
    double ci_level = 0.95;
};

struct MleResult {
    double p_hat = 0;
    double beta_hat = 0;
    double loglik = 0;
    Eigen::Matrix2d info = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d dispersion = Eigen::Matrix2d::Zero();  // NaN when info is not positive definite
    bool info_positive_definite = false;
    Interval ci_p;
    Interval ci_beta;
    double resolution = 0;
    bool exhaustive = false;
    bool on_boundary = false;
};

/// Grid-search MLE over p in {r, 2r, ..., 1-r} and beta in {r, ..., 1}.
/// Throws DegenerateDataError when every observation is zero.
MleResult mle_grid(const CountData& data, const MleOptions& options = {});

/// x̄ / (1 + x̄); only for ungrouped data.
double geometric_mle(const CountData& data);

/// Maximiser of loglik_rsg(p, 1); closed form for ungrouped data, golden-section otherwise.
double geometric_profile_mle(const CountData& data);

}  // namespace skewgeo
