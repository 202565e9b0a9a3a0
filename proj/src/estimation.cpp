#include "skewgeo/estimation.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "skewgeo/grid_search.hpp"

namespace skewgeo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_rsg_domain(double p, double beta) {
    if (!(p > 0 && p < 1)) throw std::domain_error("RSG likelihood: p must lie in (0,1)");
    if (!(beta > 0 && beta <= 1)) throw std::domain_error("RSG likelihood: beta must lie in (0,1]");
}

double int_pow(double base, double exponent) {
    if (exponent == 0) return 1;
    return std::pow(base, exponent);
}

// log P(X >= lo) = lo log p + log(1 - p beta - q p beta^lo) - log D.
double log_tail(double p, double beta, double log_d, std::uint64_t lo) {
    const double l = static_cast<double>(lo);
    const double e = 1 - p * beta - (1 - p) * p * int_pow(beta, l);
    return (lo == 0 ? 0.0 : l * std::log(p)) + std::log(e) - log_d;
}

double big_d(double p, double beta) { return (1 - p) * (1 - p) + p * (1 - beta); }

// Value, gradient and Hessian of log P(X >= lo).
struct TailTerms {
    double log_value;
    Eigen::Vector2d grad;
    Eigen::Matrix2d hess;
};

TailTerms tail_terms(double p, double beta, std::uint64_t lo) {
    const double l = static_cast<double>(lo);
    const double d = big_d(p, beta);
    const double bl = int_pow(beta, l);
    const double bl1 = lo >= 1 ? int_pow(beta, l - 1) : 0.0;
    const double bl2 = lo >= 2 ? int_pow(beta, l - 2) : 0.0;
    const double e = 1 - p * beta - (1 - p) * p * bl;

    const double e_p = -beta - bl + 2 * p * bl;
    const double e_b = -p - (p - p * p) * l * bl1;
    const double e_pp = 2 * bl;
    const double e_pb = -1 - (1 - 2 * p) * l * bl1;
    const double e_bb = -(p - p * p) * l * (l - 1) * bl2;
    const double d_p = -beta - 1 + 2 * p;
    const double d_b = -p;
    const double d_pp = 2;
    const double d_pb = -1;

    TailTerms t;
    t.log_value = (lo == 0 ? 0.0 : l * std::log(p)) + std::log(e) - std::log(d);
    t.grad << l / p + e_p / e - d_p / d, e_b / e - d_b / d;
    t.hess(0, 0) = -l / (p * p) + e_pp / e - e_p * e_p / (e * e) - d_pp / d + d_p * d_p / (d * d);
    t.hess(0, 1) = e_pb / e - e_p * e_b / (e * e) - d_pb / d + d_p * d_b / (d * d);
    t.hess(1, 1) = e_bb / e - e_b * e_b / (e * e) + d_b * d_b / (d * d);
    t.hess(1, 0) = t.hess(0, 1);
    return t;
}

// Value and derivatives of log of a bin mass M = T(lo) - T(hi + 1).
TailTerms range_terms(double p, double beta, std::uint64_t lo, std::uint64_t hi) {
    const TailTerms a = tail_terms(p, beta, lo);
    const TailTerms b = tail_terms(p, beta, hi + 1);
    const double ta = std::exp(a.log_value);
    const double tb = std::exp(b.log_value);
    const double m = ta - tb;
    const Eigen::Vector2d grad_a = ta * a.grad;
    const Eigen::Vector2d grad_b = tb * b.grad;
    const Eigen::Matrix2d hess_a = ta * (a.hess + a.grad * a.grad.transpose());
    const Eigen::Matrix2d hess_b = tb * (b.hess + b.grad * b.grad.transpose());
    const Eigen::Vector2d gm = grad_a - grad_b;
    TailTerms out;
    out.log_value = std::log(m);
    out.grad = gm / m;
    out.hess = (hess_a - hess_b) / m - gm * gm.transpose() / (m * m);
    return out;
}

}  // namespace

RsgLikelihood::RsgLikelihood(const CountData& data) {
    for (const auto& row : data.rows()) {
        if (row.count == 0) continue;
        const double c = static_cast<double>(row.count);
        if (row.bin.is_exact()) {
            const double x = static_cast<double>(row.bin.lo);
            exact_.push_back({x, c});
            n_exact_ += c;
            sum_x_ += c * x;
        } else {
            groups_.push_back({row.bin.lo, row.bin.hi, c});
        }
    }
}

double RsgLikelihood::operator()(double p, double beta) const {
    check_rsg_domain(p, beta);
    const double log_beta = std::log(beta);
    const double d = big_d(p, beta);
    const double log_d = std::log(d);
    double total = 0;
    if (n_exact_ > 0) {
        total += n_exact_ * (std::log1p(-p) + std::log1p(-p * beta) - log_d);
        if (sum_x_ > 0) total += sum_x_ * std::log(p);
        for (const auto& e : exact_) {
            const double bx = e.x == 0 ? 1.0 : std::exp(e.x * log_beta);
            total += e.count * std::log1p(-p * bx);
        }
    }
    for (const auto& g : groups_) {
        const double la = log_tail(p, beta, log_d, g.lo);
        double lm = la;
        if (g.hi) {
            const double lb = log_tail(p, beta, log_d, *g.hi + 1);
            lm = la + std::log(-std::expm1(lb - la));
        }
        total += g.count * lm;
    }
    if (std::isnan(total)) return kNegInf;
    return total;
}

double loglik_rsg(double p, double beta, const CountData& data) { return RsgLikelihood(data)(p, beta); }

double loglik_sg(double p, double alpha, const CountData& data) {
    if (!(alpha >= 0)) throw std::domain_error("SG likelihood: alpha must be non-negative");
    return loglik_rsg(p, std::pow(p, alpha), data);
}

LoglikDerivatives loglik_rsg_derivatives(double p, double beta, const CountData& data) {
    check_rsg_domain(p, beta);
    const double d = big_d(p, beta);
    const double d_p = -beta - 1 + 2 * p;
    const double d_b = -p;
    const double opb = 1 - p * beta;

    LoglikDerivatives out;
    for (const auto& row : data.rows()) {
        if (row.count == 0) continue;
        const double c = static_cast<double>(row.count);
        if (row.bin.is_exact()) {
            const auto xi = row.bin.lo;
            const double x = static_cast<double>(xi);
            const double bx = int_pow(beta, x);
            const double bx1 = xi >= 1 ? int_pow(beta, x - 1) : 0.0;
            const double bx2 = xi >= 2 ? int_pow(beta, x - 2) : 0.0;
            const double w = 1 - p * bx;

            const double value =
                (xi == 0 ? 0.0 : x * std::log(p)) + std::log1p(-p) + std::log(opb) + std::log(w) - std::log(d);
            Eigen::Vector2d g;
            g << x / p - 1 / (1 - p) - beta / opb - bx / w - d_p / d,  //
                -p / opb - p * x * bx1 / w + p / d;
            Eigen::Matrix2d h;
            h(0, 0) = -x / (p * p) - 1 / ((1 - p) * (1 - p)) - beta * beta / (opb * opb) - bx * bx / (w * w) -
                      (2 / d - d_p * d_p / (d * d));
            h(0, 1) = -1 / (opb * opb) - x * bx1 / (w * w) - (-1 / d - d_p * d_b / (d * d));
            h(1, 1) = -p * p / (opb * opb) - p * x * (x - 1) * bx2 / w - p * p * x * x * bx1 * bx1 / (w * w) +
                      p * p / (d * d);
            h(1, 0) = h(0, 1);
            out.value += c * value;
            out.gradient += c * g;
            out.hessian += c * h;
        } else {
            const TailTerms t = row.bin.hi ? range_terms(p, beta, row.bin.lo, *row.bin.hi) : tail_terms(p, beta, row.bin.lo);
            out.value += c * t.log_value;
            out.gradient += c * t.grad;
            out.hessian += c * t.hess;
        }
    }
    return out;
}

Eigen::Vector2d score_sg(double p, double alpha, const CountData& data) {
    if (!(p > 0 && p < 1)) throw std::domain_error("SG score: p must lie in (0,1)");
    if (!(alpha >= 0)) throw std::domain_error("SG score: alpha must be non-negative");
    const double log_p = std::log(p);
    const double beta = std::exp(alpha * log_p);

    if (data.is_grouped()) {
        // chain rule through beta = p^alpha
        const auto rsg = loglik_rsg_derivatives(p, beta, data);
        Eigen::Vector2d s;
        s << rsg.gradient(0) + rsg.gradient(1) * alpha * beta / p, rsg.gradient(1) * beta * log_p;
        return s;
    }

    const double n = static_cast<double>(data.n());
    const double pa = std::exp(alpha * log_p);  // p^alpha
    const double pa1 = p * pa;                  // p^(alpha+1)
    const double denom = 1 - pa1 - p * (1 - p);
    double sum_x = 0, sum_p_terms = 0, sum_a_terms = 0;
    for (const auto& row : data.rows()) {
        if (row.count == 0) continue;
        const double c = static_cast<double>(row.count);
        const double x = static_cast<double>(row.bin.lo);
        const double pax = x == 0 ? 1.0 : std::exp(alpha * x * log_p);  // p^(alpha x)
        const double w = 1 - p * pax;
        sum_x += c * x;
        sum_p_terms += c * (alpha * x + 1) * pax / w;
        sum_a_terms += c * x * p * pax * log_p / w;
    }
    Eigen::Vector2d s;
    s(0) = -n / (1 - p) + sum_x / p - sum_p_terms - n * (alpha + 1) * pa / (1 - pa1) +
           n * ((alpha + 1) * pa - 2 * p + 1) / denom;
    s(1) = -sum_a_terms - n * pa1 * log_p / (1 - pa1) + n * pa1 * log_p / denom;
    return s;
}

Eigen::Matrix2d observed_information(double p, double beta, const CountData& data) {
    return -loglik_rsg_derivatives(p, beta, data).hessian;
}

double normal_two_sided_quantile(double level) {
    if (!(level > 0 && level < 1)) throw std::domain_error("confidence level must lie in (0,1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + 0.5 * level);
}

Interval wald_ci(double estimate, double variance, double level) {
    if (!(variance >= 0)) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    const double half = normal_two_sided_quantile(level) * std::sqrt(variance);
    return {estimate - half, estimate + half};
}

MleResult mle_grid(const CountData& data, const MleOptions& options) {
    if (data.all_zero()) throw DegenerateDataError("all observations are zero; the likelihood is maximised as p -> 0");
    const RsgLikelihood loglik(data);
    const auto best = grid_maximize([&](double p, double beta) { return loglik(p, beta); }, GridAxis{false},
                                    GridAxis{true}, GridOptions{options.resolution, options.exhaustive});

    MleResult r;
    r.p_hat = best.t1;
    r.beta_hat = best.t2;
    r.loglik = best.value;
    r.resolution = options.resolution;
    r.exhaustive = options.exhaustive;
    r.on_boundary = best.on_boundary;
    r.info = observed_information(r.p_hat, r.beta_hat, data);

    Eigen::LLT<Eigen::Matrix2d> llt(r.info);
    r.info_positive_definite = llt.info() == Eigen::Success && r.info.allFinite();
    if (r.info_positive_definite) {
        r.dispersion = r.info.inverse();
        r.ci_p = wald_ci(r.p_hat, r.dispersion(0, 0), options.ci_level);
        r.ci_beta = wald_ci(r.beta_hat, r.dispersion(1, 1), options.ci_level);
    } else {
        r.dispersion.setConstant(std::numeric_limits<double>::quiet_NaN());
        r.ci_p = r.ci_beta = {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    }
    return r;
}

double geometric_mle(const CountData& data) {
    const double xbar = data.mean();
    return xbar / (1 + xbar);
}

double geometric_profile_mle(const CountData& data) {
    if (!data.is_grouped()) return geometric_mle(data);
    const RsgLikelihood loglik(data);
    auto f = [&](double p) { return loglik(p, 1.0); };
    const double ratio = 0.5 * (std::sqrt(5.0) - 1);
    double a = 1e-12, b = 1 - 1e-12;
    double c = b - ratio * (b - a), d = a + ratio * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-13) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace skewgeo
