// Monte-Carlo harnesses for estimator performance and LR-test power, and
// the comparative model-fitting driver for the two embedded datasets.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skewgeo/count_data.hpp"
#include "skewgeo/estimation.hpp"
#include "skewgeo/inference.hpp"
#include "skewgeo/model_zoo.hpp"
#include "skewgeo/sampler.hpp"

namespace skewgeo {

struct SimCell {
    double p = 0.5;
    double beta = 0.5;
    std::size_t n = 100;
    std::size_t reps = 200;
    std::uint64_t seed = 1;
};

struct SimOptions {
    double resolution = 1e-3;
    double ci_level = 0.95;
    unsigned threads = 0;  // 0: hardware concurrency
    SampleMethod method = SampleMethod::paper;
};

/// Outcome of one replication: data drawn from RngStream(seed, rep) and fitted by mle_grid.
struct Replication {
    bool degenerate = false;
    double p_hat = 0;
    double beta_hat = 0;
    bool ci_valid = false;
    Interval ci_p;
    Interval ci_beta;
};

Replication run_replication(const SimCell& cell, std::size_t rep, const SimOptions& options = {});

struct PerfRow {
    double bias_p = 0;
    double mse_p = 0;
    Interval mean_ci_p;
    double bias_beta = 0;
    double mse_beta = 0;
    Interval mean_ci_beta;
    std::size_t used_reps = 0;        // non-degenerate replications in bias/MSE
    std::size_t degenerate_reps = 0;  // excluded: every draw was zero
    std::size_t ci_reps = 0;          // replications with a positive-definite information matrix
};

PerfRow mle_performance(const SimCell& cell, const SimOptions& options = {});

struct PowerConfig {
    // The p values behind the published curves are not stated; these span the quoted range.
    std::vector<double> p_grid{0.25, 0.40, 0.55, 0.70};
    std::vector<double> betas{1.00, 0.85, 0.70, 0.55, 0.40, 0.25, 0.10};
    std::vector<std::size_t> sizes{50, 100, 200, 300};
    std::size_t reps = 200;
    double level = 0.05;
    std::uint64_t seed = 1;
    SimOptions sim;
};

struct PowerCell {
    double p = 0;
    double beta = 0;
    std::size_t n = 0;
    double power = 0;
    std::size_t reps = 0;
    std::size_t degenerate_reps = 0;
};

/// Rejection rate of lr_test per (p, beta, n). Replication r of every cell uses
/// RngStream(seed, r), so cells share common random numbers.
std::vector<PowerCell> power_study(const PowerConfig& config);

/// Critical value of the chi-square(1) reference at the given level; 3.841 at 5%.
double lr_critical_value(double level);

struct ModelColumn {
    FitReport fit;
    GofReport gof;
};

/// Two ways of reading grouped rows into a likelihood.
struct LikelihoodVariants {
    double grouped_loglik = 0;  // bin masses
    double grouped_aic = 0;
    Eigen::Vector2d grouped_mle = Eigen::Vector2d::Zero();
    double point_loglik = 0;  // every grouped observation placed at its bin's lower end
    double point_aic = 0;
    Eigen::Vector2d point_mle = Eigen::Vector2d::Zero();
};

struct ComparativeReport {
    std::string dataset;
    CountData data;
    std::vector<ModelColumn> models;  // rsg, wg, nb, nd, ngpl
    MleResult rsg_mle;
    LrReport lr;
    std::optional<LikelihoodVariants> variants;  // present when the data are grouped
    std::vector<std::string> notes;
};

ComparativeReport reproduce_table(const std::string& dataset, const MleOptions& options = {});

/// Grouped rows replaced by exact rows at their lower ends.
CountData collapse_to_lower_ends(const CountData& data);

}  // namespace skewgeo
