#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "skewgeo/dist_core.hpp"

namespace skewgeo {

/// Counter-based uniform stream. The i-th 64-bit output of (seed, stream_id) is
///
///   key  = mix64(seed ^ mix64(stream_id + 0x632BE59BD9B4E019))
///   x_i  = mix64(key + (i + 1) * 0x9E3779B97F4A7C15)
///
/// with mix64 the SplitMix64 finaliser, and the uniform is ((x_i >> 11) + 0.5) * 2^-53,
/// which lies strictly inside (0, 1). Only integer arithmetic is involved, so the
/// sequence is identical on every platform.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();
    double next_uniform();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }
    std::uint64_t position() const { return counter_; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t z);

enum class SampleMethod {
    paper,       // survival-equation root, bisection in log space
    paper_grid,  // the same root found on the fixed grid y = 0.0001..0.9999
    inverse,     // smallest x with cdf(x) >= u
};

SampleMethod parse_sample_method(std::string_view name);

/// Solves y - C y^(alpha+1) = W(1-u) on the increasing branch and returns floor(log y0 / log p).
std::uint64_t draw_paper(const SGParams<double>& params, double u);

/// Fixed-grid variant of draw_paper; coarse, kept for exact replication of the printed algorithm.
std::uint64_t draw_paper_grid(const SGParams<double>& params, double u);

/// Exact inversion: F(x-1) < u <= F(x), cdf accumulated with the two-term recurrence.
std::uint64_t draw_inverse(const SGParams<double>& params, double u);

std::vector<std::uint64_t> sample(const SGParams<double>& params, std::size_t n, RngStream& rng,
                                  SampleMethod method = SampleMethod::paper);

/// RSG sampling goes through SG(p, log beta / log p).
std::vector<std::uint64_t> sample(const RSGParams<double>& params, std::size_t n, RngStream& rng,
                                  SampleMethod method = SampleMethod::paper);

}  // namespace skewgeo
