#include "skewgeo/experiments.hpp"

#include <atomic>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <sstream>
#include <thread>

#include "skewgeo/datasets.hpp"
#include "skewgeo/numeric.hpp"
#include "skewgeo/published.hpp"

namespace skewgeo {

namespace {

// Runs body(i) for i in [0, count); results must be written to per-index slots.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) body(i);
        });
}

}  // namespace

Replication run_replication(const SimCell& cell, std::size_t rep, const SimOptions& options) {
    RngStream rng(cell.seed, rep);
    const auto draws = sample(RSGParams<double>(cell.p, cell.beta), cell.n, rng, options.method);
    const auto data = CountData::from_observations(draws);
    Replication r;
    if (data.all_zero()) {
        r.degenerate = true;
        return r;
    }
    const auto mle = mle_grid(data, MleOptions{options.resolution, false, options.ci_level});
    r.p_hat = mle.p_hat;
    r.beta_hat = mle.beta_hat;
    r.ci_valid = mle.info_positive_definite;
    r.ci_p = mle.ci_p;
    r.ci_beta = mle.ci_beta;
    return r;
}

PerfRow mle_performance(const SimCell& cell, const SimOptions& options) {
    if (cell.reps < 1) throw std::invalid_argument("a simulation cell needs at least one replication");
    std::vector<Replication> reps(cell.reps);
    parallel_for(cell.reps, options.threads, [&](std::size_t i) { reps[i] = run_replication(cell, i, options); });

    NeumaierSum bias_p, sq_p, bias_b, sq_b, lo_p, hi_p, lo_b, hi_b;
    PerfRow row;
    for (const auto& r : reps) {
        if (r.degenerate) {
            ++row.degenerate_reps;
            continue;
        }
        ++row.used_reps;
        const double ep = r.p_hat - cell.p;
        const double eb = r.beta_hat - cell.beta;
        bias_p.add(ep);
        sq_p.add(ep * ep);
        bias_b.add(eb);
        sq_b.add(eb * eb);
        if (r.ci_valid) {
            ++row.ci_reps;
            lo_p.add(r.ci_p.lo);
            hi_p.add(r.ci_p.hi);
            lo_b.add(r.ci_beta.lo);
            hi_b.add(r.ci_beta.hi);
        }
    }
    const double used = static_cast<double>(row.used_reps);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.bias_p = row.used_reps ? bias_p.value() / used : nan;
    row.mse_p = row.used_reps ? sq_p.value() / used : nan;
    row.bias_beta = row.used_reps ? bias_b.value() / used : nan;
    row.mse_beta = row.used_reps ? sq_b.value() / used : nan;
    const double ci = static_cast<double>(row.ci_reps);
    if (row.ci_reps) {
        row.mean_ci_p = {lo_p.value() / ci, hi_p.value() / ci};
        row.mean_ci_beta = {lo_b.value() / ci, hi_b.value() / ci};
    } else {
        row.mean_ci_p = row.mean_ci_beta = {nan, nan};
    }
    return row;
}

double lr_critical_value(double level) {
    if (!(level > 0 && level < 1)) throw std::domain_error("test level must lie in (0,1)");
    if (level == 0.05) return kLrCritical5pct;
    return boost::math::quantile(boost::math::complement(boost::math::chi_squared_distribution<double>(1), level));
}

std::vector<PowerCell> power_study(const PowerConfig& config) {
    for (double b : config.betas)
        if (!(b > 0 && b <= 1)) throw std::domain_error("power study: betas must lie in (0,1]");
    for (auto n : config.sizes)
        if (n == 0) throw std::domain_error("power study: sample sizes must be positive");
    if (config.reps < 1) throw std::invalid_argument("power study needs at least one replication");
    const double critical = lr_critical_value(config.level);

    std::vector<PowerCell> cells;
    for (double p : config.p_grid)
        for (double b : config.betas)
            for (auto n : config.sizes) cells.push_back({p, b, n, 0.0, config.reps, 0});

    const std::size_t total = cells.size() * config.reps;
    std::vector<signed char> outcome(total, 0);  // 1 reject, 0 accept, -1 degenerate
    parallel_for(total, config.sim.threads, [&](std::size_t k) {
        const PowerCell& c = cells[k / config.reps];
        const std::size_t rep = k % config.reps;
        RngStream rng(config.seed, rep);
        const auto draws = sample(RSGParams<double>(c.p, c.beta), c.n, rng, config.sim.method);
        const auto data = CountData::from_observations(draws);
        if (data.all_zero()) {
            outcome[k] = -1;
            return;
        }
        const auto lr = lr_test(data, MleOptions{config.sim.resolution, false, config.sim.ci_level});
        outcome[k] = lr.lambda > critical ? 1 : 0;
    });

    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        std::size_t rejections = 0;
        for (std::size_t r = 0; r < config.reps; ++r) {
            const auto o = outcome[ci * config.reps + r];
            if (o == 1) ++rejections;
            if (o == -1) ++cells[ci].degenerate_reps;
        }
        cells[ci].power = static_cast<double>(rejections) / static_cast<double>(config.reps);
    }
    return cells;
}

CountData collapse_to_lower_ends(const CountData& data) {
    std::vector<FrequencyRow> rows;
    for (const auto& r : data.rows()) rows.push_back({Bin::exact(r.bin.lo), r.count});
    return CountData(std::move(rows));
}

ComparativeReport reproduce_table(const std::string& dataset, const MleOptions& options) {
    ComparativeReport report{dataset, dataset_by_name(dataset), {}, {}, {}, std::nullopt, {}};
    const CountData& data = report.data;
    const auto bins = default_gof_bins(data);

    report.rsg_mle = mle_grid(data, options);
    for (const auto& model : all_models()) {
        ModelColumn col;
        col.fit = fit_model(model, data, options);
        col.gof = gof(data, model, col.fit.theta, bins);
        report.models.push_back(std::move(col));
    }
    report.lr = lr_test(data, report.rsg_mle);

    if (data.is_grouped()) {
        LikelihoodVariants v;
        v.grouped_loglik = report.rsg_mle.loglik;
        v.grouped_aic = aic(v.grouped_loglik);
        v.grouped_mle << report.rsg_mle.p_hat, report.rsg_mle.beta_hat;
        const auto point_data = collapse_to_lower_ends(data);
        const auto point_mle = mle_grid(point_data, options);
        v.point_loglik = point_mle.loglik;
        v.point_aic = aic(v.point_loglik);
        v.point_mle << point_mle.p_hat, point_mle.beta_hat;
        report.variants = v;
    }

    if (const auto* ref = published_table(dataset)) {
        for (std::size_t i = 0; i < report.models.size() && i < ref->models.size(); ++i) {
            const auto& col = report.models[i];
            const auto& pub = ref->models[i];
            const double gap = col.fit.aic - pub.aic;
            if (std::abs(gap) > 0.5) {
                std::ostringstream msg;
                msg << col.fit.model << ": AIC " << col.fit.aic << " differs from the published " << pub.aic << " by "
                    << gap;
                if (data.is_grouped()) msg << " (grouped likelihood; the published fit evidently used ungrouped counts)";
                report.notes.push_back(msg.str());
            }
        }
        if (report.variants) {
            std::ostringstream msg;
            msg << "grouped-data likelihood: the published RSG AIC " << ref->models[0].aic
                << " is not reproducible from the grouped table; grouped AIC " << report.variants->grouped_aic
                << ", lower-end point AIC " << report.variants->point_aic;
            report.notes.push_back(msg.str());
        }
    }
    return report;
}

}  // namespace skewgeo
