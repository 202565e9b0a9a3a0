// Named numeric checks over a parameter grid, run by `skewgeo verify`.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "skewgeo/dist_core.hpp"

namespace skewgeo {

using PmfFunction = std::function<double(const SGParams<double>&, std::uint64_t)>;

struct VerifyOptions {
    bool dense = false;
    bool include_sampler = true;
    std::size_t sampler_uniforms = 10000;
    PmfFunction pmf_override;  // test hook: replaces dist_core pmf in the pmf-based checks
};

struct CheckResult {
    std::string name;
    bool passed = true;
    double worst = 0;  // largest violation seen (same units as tolerance)
    double tolerance = 0;
    std::size_t cases = 0;
    std::string detail;  // first failing case
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    std::size_t grid_points = 0;
    bool all_passed() const;
    const CheckResult* find(const std::string& name) const;
};

/// p in {0.05, ..., 0.95} x alpha in {0, 0.5, 1, 2, 5} (95 points); dense adds
/// p steps of 0.025 and alpha in {0, 0.25, 0.5, 1, 1.5, 2, 3, 5, 10}.
std::vector<SGParams<double>> verification_grid(bool dense);

/// Multiplies pmf(x0) of every grid point by (1 + eps): a deliberately broken pmf.
PmfFunction perturbed_pmf(std::uint64_t x0, double eps);

VerifyReport run_verification(const VerifyOptions& options = {});

}  // namespace skewgeo
