// Skewed geometric distribution SG(p, alpha) and its reparameterisation
// RSG(p, beta) with beta = p^alpha.
//
//   P(x) = q p^x (1 - p beta^x) (1 - p beta) / D,   D = (1-p)^2 + p(1-beta)
//
// Every closed form below is written in terms of (p, log beta) so that large
// alpha (beta underflowing) and large x stay in log space.
#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace skewgeo {

template <std::floating_point Scalar = double>
class SGParams {
  public:
    using scalar_type = Scalar;

    SGParams(Scalar p, Scalar alpha) : p_(p), alpha_(alpha) {
        if (!(p > 0 && p < 1)) throw std::domain_error("SG: p must lie in (0,1), got " + std::to_string(p));
        if (!(alpha >= 0) || !std::isfinite(alpha))
            throw std::domain_error("SG: alpha must be a finite non-negative real, got " + std::to_string(alpha));
    }

    Scalar p() const { return p_; }
    Scalar alpha() const { return alpha_; }
    Scalar log_beta() const { return alpha_ * std::log(p_); }

  private:
    Scalar p_;
    Scalar alpha_;
};

template <std::floating_point Scalar = double>
class RSGParams {
  public:
    using scalar_type = Scalar;

    RSGParams(Scalar p, Scalar beta) : p_(p), beta_(beta) {
        if (!(p > 0 && p < 1)) throw std::domain_error("RSG: p must lie in (0,1), got " + std::to_string(p));
        if (!(beta > 0 && beta <= 1)) throw std::domain_error("RSG: beta must lie in (0,1], got " + std::to_string(beta));
    }

    Scalar p() const { return p_; }
    Scalar beta() const { return beta_; }
    Scalar log_beta() const { return std::log(beta_); }

  private:
    Scalar p_;
    Scalar beta_;
};

template <typename T>
concept SkewGeometricParams = requires(const T& t) {
    typename T::scalar_type;
    { t.p() } -> std::convertible_to<typename T::scalar_type>;
    { t.log_beta() } -> std::convertible_to<typename T::scalar_type>;
};

/// beta = p^alpha; alpha = 0 maps to the geometric boundary beta = 1.
template <std::floating_point Scalar>
RSGParams<Scalar> to_rsg(const SGParams<Scalar>& sg) {
    return RSGParams<Scalar>(sg.p(), std::exp(sg.log_beta()));
}

/// alpha = log beta / log p.
template <std::floating_point Scalar>
SGParams<Scalar> to_sg(const RSGParams<Scalar>& rsg) {
    if (rsg.beta() == Scalar(1)) return SGParams<Scalar>(rsg.p(), Scalar(0));
    return SGParams<Scalar>(rsg.p(), std::log(rsg.beta()) / std::log(rsg.p()));
}

namespace detail {

template <std::floating_point Scalar>
struct Kernel {
    Scalar p;
    Scalar q;
    Scalar log_p;
    Scalar log_beta;
    Scalar beta;
    Scalar one_minus_pbeta;  // 1 - p beta = 1 - p^(alpha+1)
    Scalar big_d;            // (1-p)^2 + p(1-beta) = 1 - p beta - p q

    // beta^x computed as exp(x log beta); exact 1 at x = 0 and at beta = 1.
    Scalar beta_pow(Scalar x) const {
        if (x == 0 || log_beta == 0) return Scalar(1);
        return std::exp(x * log_beta);
    }
};

template <SkewGeometricParams Params>
Kernel<typename Params::scalar_type> kernel(const Params& params) {
    using Scalar = typename Params::scalar_type;
    Kernel<Scalar> k{};
    k.p = params.p();
    k.q = Scalar(1) - k.p;
    k.log_p = std::log(k.p);
    k.log_beta = params.log_beta();
    k.beta = std::exp(k.log_beta);
    k.one_minus_pbeta = Scalar(1) - k.p * k.beta;
    k.big_d = k.q * k.q - k.p * std::expm1(k.log_beta);
    return k;
}

}  // namespace detail

/// Total mass W = 1 - pq/(1 - p^(alpha+1)) of the unnormalised weights q p^x (1 - p^(alpha x + 1)).
template <SkewGeometricParams Params>
auto normalizer(const Params& params) {
    auto k = detail::kernel(params);
    return k.big_d / k.one_minus_pbeta;
}

template <SkewGeometricParams Params>
auto log_pmf(const Params& params, std::uint64_t x) {
    using Scalar = typename Params::scalar_type;
    auto k = detail::kernel(params);
    const Scalar xs = static_cast<Scalar>(x);
    const Scalar px = (x == 0) ? Scalar(0) : xs * k.log_p;
    return px + std::log1p(-k.p) + std::log(k.one_minus_pbeta) + std::log1p(-k.p * k.beta_pow(xs)) - std::log(k.big_d);
}

template <SkewGeometricParams Params>
auto pmf(const Params& params, std::uint64_t x) {
    return std::exp(log_pmf(params, x));
}

/// log P(X > x), closed form  p^(x+1) (1 - p beta - q p beta^(x+1)) / D.
template <SkewGeometricParams Params>
auto log_survival(const Params& params, std::uint64_t x) {
    using Scalar = typename Params::scalar_type;
    auto k = detail::kernel(params);
    const Scalar x1 = static_cast<Scalar>(x) + 1;
    return x1 * k.log_p + std::log(k.one_minus_pbeta - k.q * k.p * k.beta_pow(x1)) - std::log(k.big_d);
}

template <SkewGeometricParams Params>
auto survival(const Params& params, std::uint64_t x) {
    return std::exp(log_survival(params, x));
}

template <SkewGeometricParams Params>
auto cdf(const Params& params, std::uint64_t x) {
    using Scalar = typename Params::scalar_type;
    return Scalar(1) - survival(params, x);
}

/// Failure rate P(X = x) / P(X > x).
/// Throws std::domain_error where the survival function has underflowed to 0.
template <SkewGeometricParams Params>
auto hazard(const Params& params, std::uint64_t x) {
    using Scalar = typename Params::scalar_type;
    if (survival(params, x) == Scalar(0))
        throw std::domain_error("hazard: survival underflows to 0 at x = " + std::to_string(x));
    auto k = detail::kernel(params);
    const Scalar xs = static_cast<Scalar>(x);
    return k.q * (Scalar(1) - k.p * k.beta_pow(xs)) * k.one_minus_pbeta /
           (k.p * (k.one_minus_pbeta - k.q * k.p * k.beta_pow(xs + 1)));
}

/// G(z) = [H(z) - p H(beta z)] / W with H(z) = q / (1 - p z); |z| <= 1.
template <SkewGeometricParams Params>
auto pgf(const Params& params, typename Params::scalar_type z) {
    using Scalar = typename Params::scalar_type;
    if (!(std::abs(z) <= Scalar(1))) throw std::domain_error("pgf: |z| must not exceed 1");
    auto k = detail::kernel(params);
    auto geometric = [&](Scalar t) { return k.q / (Scalar(1) - k.p * t); };
    return (geometric(z) - k.p * geometric(k.beta * z)) * k.one_minus_pbeta / k.big_d;
}

template <SkewGeometricParams Params>
auto mean(const Params& params) {
    auto k = detail::kernel(params);
    const auto w = k.big_d / k.one_minus_pbeta;
    return (k.p / k.q - k.q * k.p * k.p * k.beta / (k.one_minus_pbeta * k.one_minus_pbeta)) / w;
}

/// Second factorial moment G''(1) from differentiating the pgf twice.
template <SkewGeometricParams Params>
auto second_factorial_moment(const Params& params) {
    auto k = detail::kernel(params);
    const auto w = k.big_d / k.one_minus_pbeta;
    const auto c = k.one_minus_pbeta;
    return (2 * k.p * k.p / (k.q * k.q) - 2 * k.q * k.p * k.p * k.p * k.beta * k.beta / (c * c * c)) / w;
}

/// G''(1) + mu - mu^2.
template <SkewGeometricParams Params>
auto variance(const Params& params) {
    const auto mu = mean(params);
    return second_factorial_moment(params) + mu - mu * mu;
}

template <SkewGeometricParams Params>
auto dispersion_index(const Params& params) {
    return variance(params) / mean(params);
}

/// P(x+1) from P(x): P(x+1) = p (1 - p beta^(x+1)) / (1 - p beta^x) * P(x).
template <SkewGeometricParams Params>
auto recurrence_step(const Params& params, std::uint64_t x, typename Params::scalar_type pmf_x) {
    using Scalar = typename Params::scalar_type;
    auto k = detail::kernel(params);
    const Scalar xs = static_cast<Scalar>(x);
    return k.p * (Scalar(1) - k.p * k.beta_pow(xs + 1)) / (Scalar(1) - k.p * k.beta_pow(xs)) * pmf_x;
}

/// Pointwise limit of the SG pmf as alpha -> infinity.
template <std::floating_point Scalar>
Scalar limit_pmf_alpha_infinity(Scalar p, std::uint64_t x) {
    if (!(p > 0 && p < 1)) throw std::domain_error("limit pmf: p must lie in (0,1)");
    const Scalar q = Scalar(1) - p;
    const Scalar denom = Scalar(1) - p * q;
    if (x == 0) return q * q / denom;
    return q * std::pow(p, static_cast<Scalar>(x)) / denom;
}

/// Smallest alpha above which the mode leaves 0, i.e. P(1) > P(0):
/// alpha > log(2p - 1)/log(p) - 2. Empty for p <= 1/2 (mode is 0 for every alpha).
template <std::floating_point Scalar>
std::optional<Scalar> mode_threshold(Scalar p) {
    if (!(p > 0 && p < 1)) throw std::domain_error("mode_threshold: p must lie in (0,1)");
    if (p <= Scalar(0.5)) return std::nullopt;
    return std::log(2 * p - 1) / std::log(p) - 2;
}

/// Smallest X with the geometric tail bound p^(X+1)/W below tol; every pmf
/// term beyond X is bounded by q p^x / W.
template <SkewGeometricParams Params>
std::uint64_t truncation_point(const Params& params, typename Params::scalar_type tol = 1e-14) {
    using Scalar = typename Params::scalar_type;
    auto k = detail::kernel(params);
    const Scalar log_w = std::log(k.big_d) - std::log(k.one_minus_pbeta);
    // (X+1) log p - log W < log tol
    const Scalar bound = (std::log(tol) + log_w) / k.log_p - 1;
    return bound <= 0 ? std::uint64_t{0} : static_cast<std::uint64_t>(std::ceil(bound));
}

template <std::floating_point Scalar = double>
struct PmfTable {
    std::vector<Scalar> probabilities;  // x = 0..size()-1
    Scalar tail_mass = 0;
};

/// pmf(0..x_max) accumulated with the two-term recurrence, plus the exact tail P(X > x_max).
template <SkewGeometricParams Params>
PmfTable<typename Params::scalar_type> materialize(const Params& params, std::uint64_t x_max) {
    PmfTable<typename Params::scalar_type> table;
    table.probabilities.reserve(x_max + 1);
    auto current = pmf(params, 0);
    table.probabilities.push_back(current);
    for (std::uint64_t x = 0; x < x_max; ++x) {
        current = recurrence_step(params, x, current);
        table.probabilities.push_back(current);
    }
    table.tail_mass = survival(params, x_max);
    return table;
}

template <SkewGeometricParams Params>
PmfTable<typename Params::scalar_type> materialize(const Params& params) {
    return materialize(params, truncation_point(params));
}

// Generic discrete skewing: base pmf p(x) reweighted by (1 - p^(alpha x + 1)).

template <std::floating_point Scalar = double>
struct DiscreteBase {
    std::function<Scalar(std::uint64_t)> pmf;
    std::function<Scalar(Scalar)> pgf;
};

template <std::floating_point Scalar>
DiscreteBase<Scalar> geometric_base(Scalar p) {
    if (!(p > 0 && p < 1)) throw std::domain_error("geometric base: p must lie in (0,1)");
    const Scalar q = Scalar(1) - p;
    return {[p, q](std::uint64_t x) { return q * std::pow(p, static_cast<Scalar>(x)); },
            [p, q](Scalar z) { return q / (Scalar(1) - p * z); }};
}

/// P(x) = p(x)(1 - p^(alpha x + 1)) / W with W = 1 - p H(p^alpha);
/// the result's pgf is [H(z) - p H(p^alpha z)] / W.
template <std::floating_point Scalar>
DiscreteBase<Scalar> azzalini_weighted(DiscreteBase<Scalar> base, Scalar p, Scalar alpha) {
    if (!(p > 0 && p < 1)) throw std::domain_error("azzalini_weighted: p must lie in (0,1)");
    if (!(alpha >= 0)) throw std::domain_error("azzalini_weighted: alpha must be non-negative");
    const Scalar p_alpha = std::pow(p, alpha);
    const Scalar w = Scalar(1) - p * base.pgf(p_alpha);
    auto pmf = [base, p, alpha, w](std::uint64_t x) {
        const Scalar weight = Scalar(1) - std::pow(p, alpha * static_cast<Scalar>(x) + 1);
        return base.pmf(x) * weight / w;
    };
    auto pgf = [base, p, p_alpha, w](Scalar z) { return (base.pgf(z) - p * base.pgf(p_alpha * z)) / w; };
    return {pmf, pgf};
}

}  // namespace skewgeo
