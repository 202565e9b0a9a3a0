#include "skewgeo/characterization.hpp"

#include <cmath>
#include <stdexcept>

#include "skewgeo/numeric.hpp"

namespace skewgeo {

ConditionalLawSpec::ConditionalLawSpec(double p_, std::uint64_t alpha_, std::uint64_t truncation_)
    : p(p_), alpha(alpha_), truncation(truncation_) {
    if (!(p > 0 && p < 1)) throw std::domain_error("conditional law: p must lie in (0,1)");
    if (alpha < 1) throw std::domain_error("conditional law: alpha must be a positive integer");
}

ConditionalLawSpec ConditionalLawSpec::with_tolerance(double p, std::uint64_t alpha, double tol) {
    const auto t = static_cast<std::uint64_t>(std::ceil(std::log(tol) / std::log(p)));
    return ConditionalLawSpec(p, alpha, t);
}

namespace {

double geometric_mass(double p, std::uint64_t x) { return (1 - p) * std::pow(p, static_cast<double>(x)); }

// F(m) accumulated term by term rather than from 1 - p^(m+1).
double geometric_cdf_by_sum(double p, std::uint64_t m) {
    NeumaierSum s;
    for (std::uint64_t k = 0; k <= m; ++k) s.add(geometric_mass(p, k));
    return s.value();
}

}  // namespace

double conditioning_probability(const ConditionalLawSpec& spec) {
    NeumaierSum total;
    NeumaierSum running_cdf;  // F(alpha j) grows with j; extend it incrementally
    std::uint64_t reached = 0;
    running_cdf.add(geometric_mass(spec.p, 0));
    for (std::uint64_t j = 0; j <= spec.truncation; ++j) {
        const std::uint64_t target = spec.alpha * j;
        while (reached < target) {
            ++reached;
            running_cdf.add(geometric_mass(spec.p, reached));
        }
        total.add(geometric_mass(spec.p, j) * running_cdf.value());
    }
    return total.value();
}

double conditional_law_pmf(const ConditionalLawSpec& spec, std::uint64_t x) {
    const double joint = geometric_mass(spec.p, x) * geometric_cdf_by_sum(spec.p, spec.alpha * x);
    return joint / conditioning_probability(spec);
}

IdentitySides conditional_expectation_sides(const SGParams<double>& params, std::uint64_t k) {
    const double p = params.p();
    const double a = params.alpha();
    const double pa1 = std::pow(p, a + 1);
    const double denom = 1 - p + p * p - pa1;
    auto g = [&](double x) {
        return (std::pow(p, x) * (1 + p) * (1 - pa1) - std::pow(p, x * (a + 1) + 1) * (1 - p) * (1 + pa1)) / denom;
    };
    const std::uint64_t upper = k + truncation_point(params, 1e-18) + 1;
    NeumaierSum num, mass;
    double px = pmf(params, k);
    for (std::uint64_t x = k; x <= upper; ++x) {
        num.add(g(static_cast<double>(x)) * px);
        mass.add(px);
        px = recurrence_step(params, x, px);
    }
    const double kd = static_cast<double>(k);
    const double rhs = std::pow(p, kd) * (1 - pa1 - std::pow(p, a * kd + 1) + std::pow(p, a * kd + 2)) / denom;
    return {num.value() / mass.value(), rhs};
}

double hazard_increment(const SGParams<double>& params, std::uint64_t x) {
    const double p = params.p();
    const double a = params.alpha();
    const double xd = static_cast<double>(x);
    const double pa1 = std::pow(p, a + 1);
    auto factor = [&](double m) { return 1 - pa1 - std::pow(p, m * a + 1) + std::pow(p, m * a + 2); };
    const double num =
        (1 - p) * (1 - pa1) * (std::pow(p, xd * a) - 2 * std::pow(p, (xd + 1) * a) + std::pow(p, (xd + 2) * a));
    return num / (factor(xd + 1) * factor(xd + 2));
}

std::vector<double> hazard_from_increments(const SGParams<double>& params, std::uint64_t x_max) {
    std::vector<double> h;
    h.reserve(x_max + 1);
    h.push_back(hazard(params, 0));
    for (std::uint64_t x = 0; x < x_max; ++x) h.push_back(h.back() + hazard_increment(params, x));
    return h;
}

double printed_hazard_initial_condition(const SGParams<double>& params) {
    const double p = params.p();
    const double a = params.alpha();
    return (1 - p) * (1 - p) * (1 - std::pow(p, a + 1)) / (p * (1 - 2 * std::pow(p, a + 1) - std::pow(p, a + 2)));
}

}  // namespace skewgeo
