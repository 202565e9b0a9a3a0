#include "skewgeo/sampler.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace skewgeo {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), key_(mix64(seed ^ mix64(stream_id + 0x632BE59BD9B4E019ULL))) {}

std::uint64_t RngStream::next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
}

double RngStream::next_uniform() {
    constexpr double scale = 1.0 / 9007199254740992.0;  // 2^-53
    return (static_cast<double>(next_u64() >> 11) + 0.5) * scale;
}

SampleMethod parse_sample_method(std::string_view name) {
    if (name == "paper") return SampleMethod::paper;
    if (name == "paper-grid") return SampleMethod::paper_grid;
    if (name == "inverse") return SampleMethod::inverse;
    throw std::invalid_argument("unknown sampling method '" + std::string(name) + "'");
}

namespace {

void check_uniform(double u) {
    if (!(u > 0 && u < 1)) throw std::domain_error("uniform variate must lie in (0,1)");
}

struct SurvivalEquation {
    double log_p;
    double alpha;
    double c;  // pq / (1 - p^(alpha+1))
    double w;  // 1 - c
};

SurvivalEquation make_equation(const SGParams<double>& params) {
    const double p = params.p();
    const double c = p * (1 - p) / (1 - std::exp(std::log(p) * (params.alpha() + 1)));
    return {std::log(p), params.alpha(), c, 1 - c};
}

}  // namespace

std::uint64_t draw_paper(const SGParams<double>& params, double u) {
    check_uniform(u);
    const auto eq = make_equation(params);
    const double log_b = std::log(eq.w) + std::log1p(-u);

    // y = p^s; g(p^s) = p^s (1 - C p^(alpha s)) is decreasing in s for s >= s_star,
    // where s_star marks the maximum of g on (0, 1]. s_star <= 1, so every y = p^(x+1)
    // lies on the monotone branch.
    double s_star = 0;
    if (eq.alpha > 0) {
        const double log_y_star = -std::log(eq.c * (eq.alpha + 1)) / eq.alpha;
        if (log_y_star < 0) s_star = log_y_star / eq.log_p;
    }
    auto h = [&](double s) { return s * eq.log_p + std::log1p(-eq.c * std::exp(eq.alpha * s * eq.log_p)) - log_b; };

    double lo = s_star;
    double step = 1;
    double hi = s_star + step;
    while (h(hi) > 0) {
        lo = hi;
        step *= 2;
        hi = s_star + step;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, lo); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (h(mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    const double s0 = 0.5 * (lo + hi);
    const double nearest = std::round(s0);
    if (std::abs(s0 - nearest) < 1e-9) return draw_inverse(params, u);
    return static_cast<std::uint64_t>(std::floor(s0));
}

std::uint64_t draw_paper_grid(const SGParams<double>& params, double u) {
    check_uniform(u);
    const auto eq = make_equation(params);
    const double b = 1 - eq.c - u * eq.w;
    double best_y = 0.0001;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 9999; ++i) {
        const double y = i * 1e-4;
        const double gap = std::abs(y - eq.c * std::pow(y, eq.alpha + 1) - b);
        if (gap < best_gap) {
            best_gap = gap;
            best_y = y;
        }
    }
    return static_cast<std::uint64_t>(std::floor(std::log(best_y) / eq.log_p));
}

std::uint64_t draw_inverse(const SGParams<double>& params, double u) {
    check_uniform(u);
    // Beyond x_limit the exact tail p^(x+1)/W is below (1-u)/2, so F(x_limit) > u.
    const double log_w = std::log(normalizer(params));
    const double bound = (std::log(0.5 * (1 - u)) + log_w) / std::log(params.p()) - 1;
    const auto x_limit = static_cast<std::uint64_t>(std::max(0.0, std::ceil(bound)));

    double current = pmf(params, 0);
    double cumulative = current;
    std::uint64_t x = 0;
    while (cumulative < u && x < x_limit) {
        current = recurrence_step(params, x, current);
        ++x;
        cumulative += current;
    }
    return x;
}

std::vector<std::uint64_t> sample(const SGParams<double>& params, std::size_t n, RngStream& rng,
                                  SampleMethod method) {
    std::vector<std::uint64_t> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.next_uniform();
        switch (method) {
            case SampleMethod::paper: out.push_back(draw_paper(params, u)); break;
            case SampleMethod::paper_grid: out.push_back(draw_paper_grid(params, u)); break;
            case SampleMethod::inverse: out.push_back(draw_inverse(params, u)); break;
        }
    }
    return out;
}

std::vector<std::uint64_t> sample(const RSGParams<double>& params, std::size_t n, RngStream& rng,
                                  SampleMethod method) {
    return sample(to_sg(params), n, rng, method);
}

}  // namespace skewgeo
