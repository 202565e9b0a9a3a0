// Brute-force numeric counterparts of the characterisation theorems. These
// deliberately avoid the closed forms in dist_core so they can serve as
// independent checks of it.
#pragma once

#include <cstdint>
#include <vector>

#include "skewgeo/dist_core.hpp"

namespace skewgeo {

/// Conditional law of X1 given X2 <= alpha X1 for i.i.d. geometric(p) X1, X2.
struct ConditionalLawSpec {
    double p;
    std::uint64_t alpha;       // positive integer
    std::uint64_t truncation;  // sum X1 over 0..truncation

    ConditionalLawSpec(double p, std::uint64_t alpha, std::uint64_t truncation);

    /// Truncation chosen so that the geometric tail p^(T+1) is below tol.
    static ConditionalLawSpec with_tolerance(double p, std::uint64_t alpha, double tol = 1e-14);
};

/// P(X1 = x | X2 <= alpha X1) by direct double summation of geometric masses.
double conditional_law_pmf(const ConditionalLawSpec& spec, std::uint64_t x);

/// P(X2 <= alpha X1) by the same brute-force summation; equals W.
double conditioning_probability(const ConditionalLawSpec& spec);

struct IdentitySides {
    double lhs;
    double rhs;
};

/// Conditional-expectation identity given X >= k; lhs by truncated series over the pmf.
IdentitySides conditional_expectation_sides(const SGParams<double>& params, std::uint64_t k);

/// Hazard h(0..x_max) rebuilt from h(0) and the increment formula h(x+1) - h(x).
std::vector<double> hazard_from_increments(const SGParams<double>& params, std::uint64_t x_max);

/// The increment h(x+1) - h(x) in closed form.
double hazard_increment(const SGParams<double>& params, std::uint64_t x);

/// Initial condition as printed with denominator (1 - 2p^(a+1) - p^(a+2)); kept
/// only so tests can show it disagrees with the hazard at 0.
double printed_hazard_initial_condition(const SGParams<double>& params);

}  // namespace skewgeo
