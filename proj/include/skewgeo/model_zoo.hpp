// Two-parameter count models compared against RSG, behind one interface.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "skewgeo/count_data.hpp"
#include "skewgeo/estimation.hpp"

namespace skewgeo {

double pmf_wg(double p, double beta, std::uint64_t x);
double pmf_nb(double r, double beta, std::uint64_t x);
double pmf_nd(double p, double beta, std::uint64_t x);
double pmf_ngpl(double p, double beta, std::uint64_t x);

double log_pmf_wg(double p, double beta, std::uint64_t x);
double log_pmf_nb(double r, double beta, std::uint64_t x);
double log_pmf_nd(double p, double beta, std::uint64_t x);
double log_pmf_ngpl(double p, double beta, std::uint64_t x);

enum class ModelKind { rsg, wg, nb, nd, ngpl };

/// Maps the search coordinate t in (0,1) (or (0,1]) onto a parameter axis.
struct ParamAxis {
    enum class Transform {
        identity,     // theta = t
        odds,         // theta = t / (1 - t), onto (0, inf)
        signed_odds,  // u = 2t - 1; theta = u for u >= 0, u / (1 + u) below, onto (-inf, 1)
    };
    std::string name;
    Transform transform = Transform::identity;
    bool include_upper = false;

    double to_param(double t) const;
};

struct CountModel {
    ModelKind kind;
    std::string name;
    ParamAxis first;
    ParamAxis second;
    std::function<double(const Eigen::Vector2d&, std::uint64_t)> log_pmf;
    std::function<bool(const Eigen::Vector2d&)> admissible;

    double pmf(const Eigen::Vector2d& theta, std::uint64_t x) const;
    /// Probability of a bin; open tails as one minus the mass below.
    double bin_mass(const Eigen::Vector2d& theta, const Bin& bin) const;
    double loglik(const Eigen::Vector2d& theta, const CountData& data) const;
    static constexpr int k = 2;
};

CountModel make_model(ModelKind kind);
CountModel model_by_name(std::string_view name);  // rsg | wg | nb | nd | ngpl
std::vector<CountModel> all_models();

struct FitReport {
    std::string model;
    Eigen::Vector2d theta = Eigen::Vector2d::Zero();
    double loglik = 0;
    double aic = 0;
    Eigen::Matrix2d dispersion = Eigen::Matrix2d::Zero();
    bool dispersion_valid = false;
    bool on_boundary = false;  // non-convergence flag: incumbent on the search-box edge
    double resolution = 0;
};

/// Grouped-likelihood maximisation on the model's search box; RSG delegates to mle_grid.
FitReport fit_model(const CountModel& model, const CountData& data, const MleOptions& options = {});

/// Central finite-difference Hessian of model.loglik in the natural parameters.
Eigen::Matrix2d numeric_hessian(const CountModel& model, const Eigen::Vector2d& theta, const CountData& data,
                                double relative_step = 1e-5);

}  // namespace skewgeo
