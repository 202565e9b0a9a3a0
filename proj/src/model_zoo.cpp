#include "skewgeo/model_zoo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "skewgeo/dist_core.hpp"
#include "skewgeo/grid_search.hpp"
#include "skewgeo/inference.hpp"
#include "skewgeo/numeric.hpp"

namespace skewgeo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(1 - e^a) for a < 0
double log1mexp(double a) { return a > -0.6931471805599453 ? std::log(-std::expm1(a)) : std::log1p(-std::exp(a)); }

}  // namespace

double log_pmf_wg(double p, double beta, std::uint64_t x) {
    if (!(p > 0) || !(beta > 0 && beta < 1)) return kNaN;
    const double lb = std::log(beta);
    const double xd = static_cast<double>(x);
    return std::log1p(-beta) + log1mexp((p + 1) * lb) + xd * lb + log1mexp(p * (xd + 1) * lb) - log1mexp(p * lb);
}

double log_pmf_nb(double r, double beta, std::uint64_t x) {
    if (!(r > 0) || !(beta > 0 && beta < 1)) return kNaN;
    const double xd = static_cast<double>(x);
    return std::lgamma(r + xd) - std::lgamma(r) - std::lgamma(xd + 1) + r * std::log(beta) +
           (x == 0 ? 0.0 : xd * std::log1p(-beta));
}

double log_pmf_nd(double p, double beta, std::uint64_t x) {
    if (!(p < 1) || !(beta > 0 && beta < 1)) return kNaN;
    const double xd = static_cast<double>(x);
    if (std::abs(p) < 1e-12) return xd * std::log(beta) + std::log1p(-beta);  // p -> 0: geometric(beta)
    const double bx = std::pow(beta, xd);
    const double num = std::log1p(-p * bx * (1 - beta) / (1 - p * bx * beta));
    const double den = std::log1p(-p);
    return std::log(num / den);
}

double log_pmf_ngpl(double p, double beta, std::uint64_t x) {
    if (!(p >= 0) || !(beta > 0)) return kNaN;
    const double x1 = static_cast<double>(x) + 1;
    return 2 * std::log(beta) - std::log(beta + p) - x1 * std::log1p(beta) + std::log1p(p * x1 / (1 + beta));
}

double pmf_wg(double p, double beta, std::uint64_t x) { return std::exp(log_pmf_wg(p, beta, x)); }
double pmf_nb(double r, double beta, std::uint64_t x) { return std::exp(log_pmf_nb(r, beta, x)); }
double pmf_nd(double p, double beta, std::uint64_t x) { return std::exp(log_pmf_nd(p, beta, x)); }
double pmf_ngpl(double p, double beta, std::uint64_t x) { return std::exp(log_pmf_ngpl(p, beta, x)); }

double ParamAxis::to_param(double t) const {
    switch (transform) {
        case Transform::identity: return t;
        case Transform::odds: return t / (1 - t);
        case Transform::signed_odds: {
            const double u = 2 * t - 1;
            return u >= 0 ? u : u / (1 + u);
        }
    }
    return kNaN;
}

double CountModel::pmf(const Eigen::Vector2d& theta, std::uint64_t x) const { return std::exp(log_pmf(theta, x)); }

double CountModel::bin_mass(const Eigen::Vector2d& theta, const Bin& bin) const {
    if (bin.is_open()) {
        if (kind == ModelKind::rsg) {
            if (bin.lo == 0) return 1.0;
            return survival(RSGParams<double>(theta(0), theta(1)), bin.lo - 1);
        }
        NeumaierSum below;
        for (std::uint64_t x = 0; x < bin.lo; ++x) below.add(pmf(theta, x));
        return std::max(0.0, 1 - below.value());
    }
    NeumaierSum mass;
    for (std::uint64_t x = bin.lo; x <= *bin.hi; ++x) mass.add(pmf(theta, x));
    return mass.value();
}

double CountModel::loglik(const Eigen::Vector2d& theta, const CountData& data) const {
    if (!admissible(theta)) return kNegInf;
    double total = 0;
    for (const auto& row : data.rows()) {
        if (row.count == 0) continue;
        const double lm = row.bin.is_exact() ? log_pmf(theta, row.bin.lo) : std::log(bin_mass(theta, row.bin));
        if (!(lm > kNegInf)) return kNegInf;
        total += static_cast<double>(row.count) * lm;
    }
    return total;
}

CountModel make_model(ModelKind kind) {
    using T = ParamAxis::Transform;
    auto unit_open = [](const Eigen::Vector2d& th) { return th(1) > 0 && th(1) < 1; };
    switch (kind) {
        case ModelKind::rsg:
            return {kind, "rsg", {"p", T::identity, false}, {"beta", T::identity, true},
                    [](const Eigen::Vector2d& th, std::uint64_t x) { return log_pmf(RSGParams<double>(th(0), th(1)), x); },
                    [](const Eigen::Vector2d& th) { return th(0) > 0 && th(0) < 1 && th(1) > 0 && th(1) <= 1; }};
        case ModelKind::wg:
            return {kind, "wg", {"p", T::odds, false}, {"beta", T::identity, false},
                    [](const Eigen::Vector2d& th, std::uint64_t x) { return log_pmf_wg(th(0), th(1), x); },
                    [unit_open](const Eigen::Vector2d& th) { return th(0) > 0 && unit_open(th); }};
        case ModelKind::nb:
            return {kind, "nb", {"r", T::odds, false}, {"beta", T::identity, false},
                    [](const Eigen::Vector2d& th, std::uint64_t x) { return log_pmf_nb(th(0), th(1), x); },
                    [unit_open](const Eigen::Vector2d& th) { return th(0) > 0 && unit_open(th); }};
        case ModelKind::nd:
            return {kind, "nd", {"p", T::signed_odds, false}, {"beta", T::identity, false},
                    [](const Eigen::Vector2d& th, std::uint64_t x) { return log_pmf_nd(th(0), th(1), x); },
                    [unit_open](const Eigen::Vector2d& th) { return th(0) < 1 && unit_open(th); }};
        case ModelKind::ngpl:
            return {kind, "ngpl", {"p", T::odds, false}, {"beta", T::odds, false},
                    [](const Eigen::Vector2d& th, std::uint64_t x) { return log_pmf_ngpl(th(0), th(1), x); },
                    [](const Eigen::Vector2d& th) { return th(0) >= 0 && th(1) > 0; }};
    }
    throw std::invalid_argument("unknown model kind");
}

CountModel model_by_name(std::string_view name) {
    if (name == "rsg") return make_model(ModelKind::rsg);
    if (name == "wg") return make_model(ModelKind::wg);
    if (name == "nb") return make_model(ModelKind::nb);
    if (name == "nd") return make_model(ModelKind::nd);
    if (name == "ngpl") return make_model(ModelKind::ngpl);
    throw std::invalid_argument("unknown model '" + std::string(name) + "' (expected rsg|wg|nb|nd|ngpl)");
}

std::vector<CountModel> all_models() {
    return {make_model(ModelKind::rsg), make_model(ModelKind::wg), make_model(ModelKind::nb),
            make_model(ModelKind::nd), make_model(ModelKind::ngpl)};
}

Eigen::Matrix2d numeric_hessian(const CountModel& model, const Eigen::Vector2d& theta, const CountData& data,
                                double relative_step) {
    Eigen::Vector2d h;
    h << relative_step * std::max(1.0, std::abs(theta(0))), relative_step * std::max(1.0, std::abs(theta(1)));
    auto f = [&](double di, double dj, int i, int j) {
        Eigen::Vector2d t = theta;
        t(i) += di;
        t(j) += dj;
        return model.loglik(t, data);
    };
    Eigen::Matrix2d hess;
    for (int i = 0; i < 2; ++i) {
        const double f0 = model.loglik(theta, data);
        hess(i, i) = (f(h(i), 0, i, i) - 2 * f0 + f(-h(i), 0, i, i)) / (h(i) * h(i));
    }
    const double cross = (f(h(0), h(1), 0, 1) - f(h(0), -h(1), 0, 1) - f(-h(0), h(1), 0, 1) + f(-h(0), -h(1), 0, 1)) /
                         (4 * h(0) * h(1));
    hess(0, 1) = hess(1, 0) = cross;
    return hess;
}

FitReport fit_model(const CountModel& model, const CountData& data, const MleOptions& options) {
    FitReport report;
    report.model = model.name;
    report.resolution = options.resolution;
    if (model.kind == ModelKind::rsg) {
        const MleResult mle = mle_grid(data, options);
        report.theta << mle.p_hat, mle.beta_hat;
        report.loglik = mle.loglik;
        report.dispersion = mle.dispersion;
        report.dispersion_valid = mle.info_positive_definite;
        report.on_boundary = mle.on_boundary;
    } else {
        auto objective = [&](double t1, double t2) {
            const Eigen::Vector2d theta(model.first.to_param(t1), model.second.to_param(t2));
            return model.loglik(theta, data);
        };
        const auto best = grid_maximize(objective, GridAxis{model.first.include_upper},
                                        GridAxis{model.second.include_upper},
                                        GridOptions{options.resolution, options.exhaustive});
        report.theta << model.first.to_param(best.t1), model.second.to_param(best.t2);
        report.loglik = best.value;
        report.on_boundary = best.on_boundary;
        const Eigen::Matrix2d info = -numeric_hessian(model, report.theta, data);
        Eigen::LLT<Eigen::Matrix2d> llt(info);
        report.dispersion_valid = llt.info() == Eigen::Success && info.allFinite();
        if (report.dispersion_valid)
            report.dispersion = info.inverse();
        else
            report.dispersion.setConstant(kNaN);
    }
    report.aic = aic(report.loglik, CountModel::k);
    return report;
}

}  // namespace skewgeo
