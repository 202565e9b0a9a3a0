#include "skewgeo/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "skewgeo/count_data.hpp"
#include "skewgeo/datasets.hpp"
#include "skewgeo/estimation.hpp"
#include "skewgeo/experiments.hpp"
#include "skewgeo/inference.hpp"
#include "skewgeo/model_zoo.hpp"
#include "skewgeo/report.hpp"
#include "skewgeo/reproduction.hpp"
#include "skewgeo/sampler.hpp"
#include "skewgeo/verification.hpp"

namespace skewgeo {

namespace {

// Bad user input that should exit with kExitBadInput.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CountData load_data(const std::string& spec) {
    if (std::filesystem::exists(spec)) return read_frequency_file(spec);
    if (spec == "claims" || spec == "ticks") return dataset_by_name(spec);
    throw UsageError("cannot open data file '" + spec + "' (or use the embedded 'claims' / 'ticks')");
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::vector<T> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        T value{};
        try {
            if constexpr (std::is_floating_point_v<T>)
                value = std::stod(item, &used);
            else
                value = static_cast<T>(std::stoull(item, &used));
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw UsageError(std::string("bad ") + what + " list entry '" + item + "'");
        values.push_back(value);
    }
    if (values.empty()) throw UsageError(std::string("empty ") + what + " list");
    return values;
}

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (format == a) return;
    throw UsageError("unknown --format '" + format + "'");
}

void print_checks(std::ostream& out, const std::vector<ToleranceCheck>& checks) {
    for (const auto& c : checks) out << status_name(c.status) << "  " << c.label << ": " << c.detail << "\n";
}

void write_file(const std::optional<std::string>& dir, const std::string& name, const std::string& content) {
    if (!dir) return;
    std::filesystem::create_directories(*dir);
    std::ofstream f(std::filesystem::path(*dir) / name);
    if (!f) throw std::runtime_error("cannot write " + name + " in " + *dir);
    f << content;
}

std::string perf_csv(const std::vector<PerfCellResult>& cells) {
    std::ostringstream out;
    out << "p,beta,n,reps,used_reps,degenerate_reps,bias_p,mse_p,ci_p_lo,ci_p_hi,bias_beta,mse_beta,ci_beta_lo,ci_beta_hi\n";
    for (const auto& c : cells) {
        const auto& r = c.row;
        out << csv_number(c.cell.p) << ',' << csv_number(c.cell.beta) << ',' << c.cell.n << ',' << c.cell.reps << ','
            << r.used_reps << ',' << r.degenerate_reps << ',' << csv_number(r.bias_p) << ',' << csv_number(r.mse_p) << ','
            << csv_number(r.mean_ci_p.lo) << ',' << csv_number(r.mean_ci_p.hi) << ',' << csv_number(r.bias_beta) << ','
            << csv_number(r.mse_beta) << ',' << csv_number(r.mean_ci_beta.lo) << ',' << csv_number(r.mean_ci_beta.hi)
            << '\n';
    }
    return out.str();
}

nlohmann::json perf_json(const std::vector<PerfCellResult>& cells, const SimOptions& sim) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& c : cells)
        rows.push_back({{"p", c.cell.p},
                        {"beta", c.cell.beta},
                        {"n", c.cell.n},
                        {"reps", c.cell.reps},
                        {"seed", c.cell.seed},
                        {"used_reps", c.row.used_reps},
                        {"degenerate_reps", c.row.degenerate_reps},
                        {"ci_reps", c.row.ci_reps},
                        {"bias_p", c.row.bias_p},
                        {"mse_p", c.row.mse_p},
                        {"ci_p", {c.row.mean_ci_p.lo, c.row.mean_ci_p.hi}},
                        {"bias_beta", c.row.bias_beta},
                        {"mse_beta", c.row.mse_beta},
                        {"ci_beta", {c.row.mean_ci_beta.lo, c.row.mean_ci_beta.hi}}});
    return {{"cells", rows},
            {"meta", {{"resolution", sim.resolution}, {"ci_level", sim.ci_level}, {"version", kVersion}}}};
}

std::string power_csv(const std::vector<PowerCell>& cells) {
    std::ostringstream out;
    out << "p,beta,n,power\n";
    for (const auto& c : cells)
        out << csv_number(c.p) << ',' << csv_number(c.beta) << ',' << c.n << ',' << csv_number(c.power) << '\n';
    return out.str();
}

nlohmann::json power_json(const std::vector<PowerCell>& cells, const PowerConfig& config) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& c : cells)
        rows.push_back({{"p", c.p}, {"beta", c.beta}, {"n", c.n}, {"power", c.power}, {"degenerate_reps", c.degenerate_reps}});
    return {{"cells", rows},
            {"meta",
             {{"seed", config.seed},
              {"reps", config.reps},
              {"level", config.level},
              {"critical_value", lr_critical_value(config.level)},
              {"resolution", config.sim.resolution},
              {"p_grid_note", "the p values behind the published power curves are unstated; this grid is an assumption"},
              {"version", kVersion}}}};
}

std::vector<PerfCellResult> run_perf_cells(const std::vector<double>& ps, const std::vector<double>& betas,
                                           const std::vector<std::size_t>& sizes, std::size_t reps,
                                           std::uint64_t seed, const SimOptions& sim) {
    std::vector<PerfCellResult> cells;
    for (double p : ps)
        for (double b : betas)
            for (auto n : sizes) {
                SimCell cell{p, b, n, reps, seed};
                cells.push_back({cell, mle_performance(cell, sim)});
            }
    return cells;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Skewed geometric distribution: fitting, testing, sampling and simulation", "skewgeo"};
    app.require_subcommand(1);

    // fit
    std::string data_spec, model_name = "rsg", bins_spec, format = "json";
    double resolution = 1e-4;
    bool exhaustive = false;
    auto* fit = app.add_subcommand("fit", "Fit one model to a frequency file");
    fit->add_option("--data", data_spec, "bin,count file, or claims | ticks")->required();
    fit->add_option("--model", model_name, "rsg | wg | nb | nd | ngpl")->capture_default_str();
    fit->add_option("--resolution", resolution, "grid resolution, a power of ten")->capture_default_str();
    fit->add_flag("--exhaustive", exhaustive, "evaluate the full lattice at the target resolution");
    fit->add_option("--bins", bins_spec, "goodness-of-fit bins, e.g. 0,1,2-4,5+");
    fit->add_option("--format", format, "json | text")->capture_default_str();

    // sample
    double p = 0, beta = 1, alpha = 0;
    std::size_t n = 0;
    std::uint64_t seed = 0, stream = 0;
    std::string method = "paper";
    bool summary = false;
    auto* smp = app.add_subcommand("sample", "Draw from RSG(p, beta) or SG(p, alpha)");
    smp->add_option("--p", p, "probability in (0,1)")->required();
    auto* beta_opt = smp->add_option("--beta", beta, "beta in (0,1]");
    auto* alpha_opt = smp->add_option("--alpha", alpha, "alpha >= 0");
    beta_opt->excludes(alpha_opt);
    smp->add_option("--n", n, "number of draws")->required();
    smp->add_option("--seed", seed, "64-bit seed")->required();
    smp->add_option("--stream", stream, "stream id")->capture_default_str();
    smp->add_option("--method", method, "paper | paper-grid | inverse")->capture_default_str();
    smp->add_flag("--summary", summary, "emit a bin,count frequency file instead of one draw per line");

    // test
    std::string test_format = "text";
    auto* tst = app.add_subcommand("test", "Likelihood-ratio test of geometric against RSG");
    tst->add_option("--data", data_spec, "bin,count file, or claims | ticks")->required();
    tst->add_option("--resolution", resolution, "grid resolution")->capture_default_str();
    tst->add_option("--format", test_format, "text | json")->capture_default_str();

    // simulate
    std::string sizes_text = "50,100,200,300", out_format = "csv";
    std::size_t reps = 200;
    double sim_resolution = 1e-3, ci_level = 0.95;
    unsigned threads = 0;
    auto* sim = app.add_subcommand("simulate", "Bias, MSE and mean Wald intervals of the grid MLE");
    sim->add_option("--p", p, "true p")->required();
    sim->add_option("--beta", beta, "true beta")->required();
    sim->add_option("--sizes", sizes_text, "comma-separated sample sizes")->capture_default_str();
    sim->add_option("--reps", reps, "replications per cell")->capture_default_str();
    sim->add_option("--seed", seed, "64-bit seed")->required();
    sim->add_option("--resolution", sim_resolution, "MLE grid resolution")->capture_default_str();
    sim->add_option("--ci-level", ci_level, "Wald interval level")->capture_default_str();
    sim->add_option("--threads", threads, "worker threads, 0 for all cores")->capture_default_str();
    sim->add_option("--method", method, "sampling method")->capture_default_str();
    sim->add_option("--format", out_format, "csv | json")->capture_default_str();

    // power
    std::string p_grid_text = "0.25,0.40,0.55,0.70", betas_text = "1.00,0.85,0.70,0.55,0.40,0.25,0.10";
    double level = 0.05;
    auto* pwr = app.add_subcommand("power", "Rejection rates of the LR test");
    pwr->add_option("--p-grid", p_grid_text, "comma-separated p values")->capture_default_str();
    pwr->add_option("--betas", betas_text, "comma-separated betas in (0,1]")->capture_default_str();
    pwr->add_option("--sizes", sizes_text, "comma-separated sample sizes")->capture_default_str();
    pwr->add_option("--reps", reps, "replications per cell")->capture_default_str();
    pwr->add_option("--level", level, "test level")->capture_default_str();
    pwr->add_option("--seed", seed, "64-bit seed")->required();
    pwr->add_option("--resolution", sim_resolution, "MLE grid resolution")->capture_default_str();
    pwr->add_option("--threads", threads, "worker threads, 0 for all cores")->capture_default_str();
    pwr->add_option("--method", method, "sampling method")->capture_default_str();
    pwr->add_option("--format", out_format, "csv | json")->capture_default_str();

    // reproduce
    std::string table;
    std::optional<std::string> out_dir;
    std::optional<std::size_t> reps_override;
    std::optional<std::string> sizes_override, p_grid_override, betas_override;
    double rep_resolution = 1e-3;
    std::uint64_t rep_seed = 1;
    auto* rep = app.add_subcommand("reproduce", "Rebuild a published table and check it against stored tolerances");
    rep->add_option("--table", table, "1 | 2 | 3 | power")->required()->check(CLI::IsMember({"1", "2", "3", "power"}));
    rep->add_option("--out", out_dir, "directory for report files");
    rep->add_option("--resolution", rep_resolution, "MLE grid resolution for tables 2 and 3")->capture_default_str();
    rep->add_option("--reps", reps_override, "replications (table 1: 200, power: 500)");
    rep->add_option("--sizes", sizes_override, "sample sizes (table 1: 50,500; power: 100,300)");
    rep->add_option("--p-grid", p_grid_override, "p values (table 1: 0.5,0.8; power: 0.4,0.55,0.7)");
    rep->add_option("--betas", betas_override, "betas (table 1: 0.5,0.8; power: the seven published values)");
    rep->add_option("--seed", rep_seed, "64-bit seed")->capture_default_str();
    rep->add_option("--threads", threads, "worker threads, 0 for all cores")->capture_default_str();

    // verify
    std::string grid = "default", perturb;
    bool no_sampler = false;
    std::string verify_format = "text";
    auto* ver = app.add_subcommand("verify", "Run the distribution and characterisation checks");
    ver->add_option("--grid", grid, "default | dense")->check(CLI::IsMember({"default", "dense"}))->capture_default_str();
    ver->add_flag("--no-sampler", no_sampler, "skip the sampler agreement sweep");
    ver->add_option("--perturb", perturb, "test hook: X:EPS multiplies pmf(X) by 1+EPS")->group("");
    ver->add_option("--format", verify_format, "text | json")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    }

    try {
        if (*fit) {
            check_format(format, {"json", "text"});
            const auto data = load_data(data_spec);
            const auto model = model_by_name(model_name);
            const MleOptions options{resolution, exhaustive};
            const auto report = fit_model(model, data, options);
            const auto bins = bins_spec.empty() ? default_gof_bins(data) : parse_bin_spec(bins_spec);
            const auto g = gof(data, model, report.theta, bins);
            const auto lr = lr_test(data, options);
            if (format == "json")
                out << fit_report_json(report, g, lr, ReportMeta{std::nullopt, resolution}).dump(2) << "\n";
            else
                out << fit_report_text(report, g, lr);
            return kExitOk;
        }
        if (*smp) {
            const auto m = parse_sample_method(method);
            if (n == 0) throw UsageError("--n must be positive");
            RngStream rng(seed, stream);
            const auto draws = *alpha_opt ? sample(SGParams<double>(p, alpha), n, rng, m)
                                          : sample(RSGParams<double>(p, beta), n, rng, m);
            if (summary)
                write_frequency_file(out, CountData::from_observations(draws));
            else
                for (auto x : draws) out << x << "\n";
            return kExitOk;
        }
        if (*tst) {
            check_format(test_format, {"json", "text"});
            const auto data = load_data(data_spec);
            const auto lr = lr_test(data, MleOptions{resolution});
            if (test_format == "json")
                out << lr_report_json(lr).dump(2) << "\n";
            else
                out << lr_report_text(lr);
            return kExitOk;
        }
        if (*sim) {
            check_format(out_format, {"csv", "json"});
            const SimOptions options{sim_resolution, ci_level, threads, parse_sample_method(method)};
            RSGParams<double>(p, beta);  // domain check
            const auto cells = run_perf_cells({p}, {beta}, parse_list<std::size_t>(sizes_text, "size"), reps, seed, options);
            if (out_format == "csv")
                out << perf_csv(cells);
            else
                out << perf_json(cells, options).dump(2) << "\n";
            return kExitOk;
        }
        if (*pwr) {
            check_format(out_format, {"csv", "json"});
            PowerConfig config;
            config.p_grid = parse_list<double>(p_grid_text, "p");
            config.betas = parse_list<double>(betas_text, "beta");
            config.sizes = parse_list<std::size_t>(sizes_text, "size");
            config.reps = reps;
            config.level = level;
            config.seed = seed;
            config.sim = SimOptions{sim_resolution, 0.95, threads, parse_sample_method(method)};
            for (double pp : config.p_grid) RSGParams<double>(pp, 1.0);
            const auto cells = power_study(config);
            if (out_format == "csv")
                out << power_csv(cells);
            else
                out << power_json(cells, config).dump(2) << "\n";
            return kExitOk;
        }
        if (*rep) {
            std::vector<ToleranceCheck> checks;
            if (table == "2" || table == "3") {
                const std::string dataset = table == "2" ? "claims" : "ticks";
                const auto report = reproduce_table(dataset, MleOptions{rep_resolution});
                const ReportMeta meta{std::nullopt, rep_resolution};
                out << comparative_report_text(report) << "\n";
                write_file(out_dir, "table" + table + ".json", comparative_report_json(report, meta).dump(2) + "\n");
                write_file(out_dir, "table" + table + ".txt", comparative_report_text(report));
                for (auto&& part : {check_rsg_column(report), check_competitors(report),
                                    check_dispersion(dataset, report.rsg_mle.dispersion)})
                    checks.insert(checks.end(), part.begin(), part.end());
            } else if (table == "1") {
                const SimOptions options{1e-3, 0.95, threads, SampleMethod::paper};
                const auto cells = run_perf_cells(parse_list<double>(p_grid_override.value_or("0.5,0.8"), "p"),
                                                  parse_list<double>(betas_override.value_or("0.5,0.8"), "beta"),
                                                  parse_list<std::size_t>(sizes_override.value_or("50,500"), "size"),
                                                  reps_override.value_or(200), rep_seed, options);
                out << perf_csv(cells) << "\n";
                write_file(out_dir, "table1.csv", perf_csv(cells));
                write_file(out_dir, "table1.json", perf_json(cells, options).dump(2) + "\n");
                checks = check_perf_table(cells);
            } else {
                PowerConfig config;
                config.p_grid = parse_list<double>(p_grid_override.value_or("0.4,0.55,0.7"), "p");
                if (betas_override) config.betas = parse_list<double>(*betas_override, "beta");
                config.sizes = parse_list<std::size_t>(sizes_override.value_or("100,300"), "size");
                config.reps = reps_override.value_or(500);
                config.seed = rep_seed;
                config.sim.threads = threads;
                const auto cells = power_study(config);
                out << power_csv(cells) << "\n";
                write_file(out_dir, "power.csv", power_csv(cells));
                write_file(out_dir, "power.json", power_json(cells, config).dump(2) + "\n");
                checks = check_power(cells, config.reps);
            }
            print_checks(out, checks);
            return acceptable(checks) ? kExitOk : kExitFailure;
        }
        if (*ver) {
            check_format(verify_format, {"json", "text"});
            VerifyOptions options;
            options.dense = grid == "dense";
            options.include_sampler = !no_sampler;
            if (!perturb.empty()) {
                const auto colon = perturb.find(':');
                if (colon == std::string::npos) throw UsageError("--perturb expects X:EPS");
                const auto x0 = parse_list<std::size_t>(perturb.substr(0, colon), "perturb")[0];
                const auto eps = parse_list<double>(perturb.substr(colon + 1), "perturb")[0];
                options.pmf_override = perturbed_pmf(x0, eps);
            }
            const auto report = run_verification(options);
            if (verify_format == "json")
                out << verify_report_json(report).dump(2) << "\n";
            else
                out << verify_report_text(report);
            return report.all_passed() ? kExitOk : kExitFailure;
        }
    } catch (const DegenerateDataError& e) {
        err << "error: degenerate data: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const FrequencyFileError& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}

}  // namespace skewgeo
