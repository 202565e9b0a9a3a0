// Independent reference computations used only by the tests. Nothing here calls
// the closed forms under test.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Unnormalised weight q p^x (1 - p^(alpha x + 1)).
inline double weight(double p, double alpha, std::uint64_t x) {
    const double xd = static_cast<double>(x);
    return (1 - p) * std::pow(p, xd) * (1 - std::pow(p, alpha * xd + 1));
}

// Plain summation of the weights until the geometric tail is below 1e-20.
inline double normalizer(double p, double alpha) {
    double total = 0, comp = 0;
    for (std::uint64_t x = 0; std::pow(p, static_cast<double>(x)) > 1e-20; ++x) {
        const double y = weight(p, alpha, x) - comp;
        const double t = total + y;
        comp = (t - total) - y;
        total = t;
    }
    return total;
}

inline double pmf(double p, double alpha, std::uint64_t x) { return weight(p, alpha, x) / normalizer(p, alpha); }

// Series sum_x f(x) pmf(x) over the same truncation.
inline double expectation(double p, double alpha, const std::function<double(double)>& f) {
    const double w = normalizer(p, alpha);
    long double total = 0;
    for (std::uint64_t x = 0; std::pow(p, static_cast<double>(x)) > 1e-22; ++x)
        total += static_cast<long double>(f(static_cast<double>(x)) * weight(p, alpha, x) / w);
    return static_cast<double>(total);
}

inline Eigen::Vector2d fd_gradient(const std::function<double(double, double)>& f, double a, double b, double step) {
    const double ha = step * std::max(1.0, std::abs(a));
    const double hb = step * std::max(1.0, std::abs(b));
    return {(f(a + ha, b) - f(a - ha, b)) / (2 * ha), (f(a, b + hb) - f(a, b - hb)) / (2 * hb)};
}

inline Eigen::Matrix2d fd_hessian(const std::function<double(double, double)>& f, double a, double b, double step) {
    const double ha = step * std::max(1.0, std::abs(a));
    const double hb = step * std::max(1.0, std::abs(b));
    const double f0 = f(a, b);
    Eigen::Matrix2d h;
    h(0, 0) = (f(a + ha, b) - 2 * f0 + f(a - ha, b)) / (ha * ha);
    h(1, 1) = (f(a, b + hb) - 2 * f0 + f(a, b - hb)) / (hb * hb);
    h(0, 1) = h(1, 0) = (f(a + ha, b + hb) - f(a + ha, b - hb) - f(a - ha, b + hb) + f(a - ha, b - hb)) / (4 * ha * hb);
    return h;
}

// Chi-square upper tail by Simpson integration of the density after t = v^2,
// which removes the singularity at 0 for one degree of freedom.
inline double chi2_sf(double x, int df) {
    if (x <= 0) return 1;
    const double k = df;
    const double c = 2 / (std::pow(2.0, k / 2) * std::tgamma(k / 2));
    auto g = [&](double v) { return c * std::pow(v, k - 1) * std::exp(-v * v / 2); };
    const int n = 20000;
    const double upper = std::sqrt(x);
    const double h = upper / n;
    double s = g(0) + g(upper);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * g(i * h);
    return 1 - s * h / 3;
}

// z with P(|Z| <= z) = level, by bisection on erfc.
inline double normal_two_sided(double level) {
    double lo = 0, hi = 40;
    for (int i = 0; i < 200; ++i) {
        const double mid = (lo + hi) / 2;
        (std::erfc(mid / std::sqrt(2.0)) > 1 - level ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

}  // namespace oracle
