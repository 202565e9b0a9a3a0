// Two-dimensional lattice maximisation over the unit square.
//
// Coordinates live on t = i / N with N = 10^k. The default schedule evaluates the
// full lattice at 1e-2 and then refines by factors of ten inside +-2 cells of the
// incumbent. A refined incumbent on the edge of its window moves the window and the
// level is rescanned, so long flat ridges are followed to a lattice-local maximum.
// `exhaustive` evaluates the full lattice at the target resolution.
// Cells are scanned with the first coordinate outermost, both ascending, and the
// incumbent is replaced only on strict improvement, so ties go to the smaller
// first coordinate and then the smaller second coordinate.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace skewgeo {

struct GridAxis {
    bool include_upper = false;  // admit t = 1 in addition to (0, 1)
};

struct GridOptions {
    double resolution = 1e-4;
    bool exhaustive = false;
};

struct GridOptimum {
    double t1 = 0;
    double t2 = 0;
    double value = -std::numeric_limits<double>::infinity();
    bool on_boundary = false;  // incumbent sits on an edge of the searchable lattice
    std::uint64_t evaluations = 0;
};

/// Number of decimal digits k with resolution = 10^-k (1 <= k <= 6).
inline int resolution_digits(double resolution) {
    for (int k = 1; k <= 6; ++k)
        if (std::abs(resolution - std::pow(10.0, -k)) <= 1e-12 * std::pow(10.0, -k)) return k;
    throw std::invalid_argument("resolution must be a power of ten between 1e-1 and 1e-6, got " +
                                std::to_string(resolution));
}

template <typename Objective>
GridOptimum grid_maximize(Objective&& objective, GridAxis axis1, GridAxis axis2, const GridOptions& options) {
    const int digits = resolution_digits(options.resolution);
    const int first = options.exhaustive ? digits : std::min(2, digits);

    GridOptimum best;
    std::int64_t best_i = 0, best_j = 0;
    for (int level = first; level <= digits; ++level) {
        const auto n = static_cast<std::int64_t>(std::llround(std::pow(10.0, level)));
        const std::int64_t max_i = axis1.include_upper ? n : n - 1;
        const std::int64_t max_j = axis2.include_upper ? n : n - 1;
        std::int64_t center_i = best_i * 10, center_j = best_j * 10;
        double level_best = -std::numeric_limits<double>::infinity();
        std::int64_t level_i = 0, level_j = 0;
        double walked = -std::numeric_limits<double>::infinity();
        for (;;) {
            std::int64_t lo_i = 1, hi_i = max_i, lo_j = 1, hi_j = max_j;
            if (level != first) {
                lo_i = std::max<std::int64_t>(1, center_i - 20);
                hi_i = std::min(max_i, center_i + 20);
                lo_j = std::max<std::int64_t>(1, center_j - 20);
                hi_j = std::min(max_j, center_j + 20);
            }
            level_best = -std::numeric_limits<double>::infinity();
            level_i = level_j = 0;
            for (std::int64_t i = lo_i; i <= hi_i; ++i) {
                const double t1 = static_cast<double>(i) / static_cast<double>(n);
                for (std::int64_t j = lo_j; j <= hi_j; ++j) {
                    const double t2 = static_cast<double>(j) / static_cast<double>(n);
                    const double v = objective(t1, t2);
                    ++best.evaluations;
                    if (v > level_best) {
                        level_best = v;
                        level_i = i;
                        level_j = j;
                    }
                }
            }
            if (level == first || level_i == 0) break;
            const bool edge_i = (level_i == lo_i && lo_i > 1) || (level_i == hi_i && hi_i < max_i);
            const bool edge_j = (level_j == lo_j && lo_j > 1) || (level_j == hi_j && hi_j < max_j);
            if ((!edge_i && !edge_j) || !(level_best > walked)) break;
            walked = level_best;
            center_i = level_i;
            center_j = level_j;
        }
        if (level_i == 0) throw std::runtime_error("grid search: objective is not finite anywhere on the lattice");
        best_i = level_i;
        best_j = level_j;
        best.value = level_best;
        best.t1 = static_cast<double>(level_i) / static_cast<double>(n);
        best.t2 = static_cast<double>(level_j) / static_cast<double>(n);
        best.on_boundary = level_i == 1 || level_i == max_i || level_j == 1 || level_j == max_j;
    }
    return best;
}

}  // namespace skewgeo
