// cqed: command-line front end.
//
//   cqed sweep     --config run.yaml --out results/   steady-state scan -> sweep.csv
//   cqed steady    --config run.yaml --out results/   one point at model.delta_c -> steady.csv
//   cqed evolve    --config run.yaml --out results/   n_a(t), master vs no-jump -> evolve.csv
//   cqed threshold --config run.yaml --out results/   g where g2(0) = 1 -> threshold.csv
//   cqed validate                                     oracle suite
//
// Exit codes: 0 success, 1 flagged rows over the failure budget or a failed
// oracle, 2 configuration or IO error, 3 solver error.

#include "cqed/config.hpp"
#include "cqed/kernels.hpp"
#include "cqed/report.hpp"
#include "cqed/sweep.hpp"
#include "cqed/validation.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace {

namespace fs = std::filesystem;
using namespace cqed;

enum Exit { kOk = 0, kFlagged = 1, kConfig = 2, kSolver = 3 };

struct Options {
    std::string config;
    std::string out{"."};
    std::optional<std::size_t> n_max;
    std::optional<int> jobs;
};

class Stopwatch {
public:
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(now - last_).count();
        last_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point last_{std::chrono::steady_clock::now()};
};

RunConfig resolve(const Options& opt) {
    RunConfig cfg = opt.config.empty() ? default_run_config() : load_config(opt.config);
    if (opt.n_max) override_n_max(cfg, *opt.n_max);
    return cfg;
}

nlohmann::json summarize(const SweepConfig& config, const std::vector<SweepRow>& rows,
                         std::size_t& flagged) {
    flagged = 0;
    double max_residual = 0.0;
    double max_shift = 0.0;
    double min_eig = 0.0;
    nlohmann::json failures = nlohmann::json::array();
    for (const SweepRow& row : rows) {
        const auto flags = row.flags(config);
        if (!flags.empty()) ++flagged;
        if (row.diagnostics.solver_failed) {
            failures.push_back({{"axis_value", row.axis_value}, {"error", row.diagnostics.error}});
            continue;
        }
        max_residual = std::max(max_residual, row.diagnostics.residual);
        if (row.diagnostics.truncation_shift) {
            max_shift = std::max(max_shift, *row.diagnostics.truncation_shift);
        }
        min_eig = std::min(min_eig, row.diagnostics.min_eigenvalue);
    }
    return {{"rows", rows.size()},
            {"flagged_rows", flagged},
            {"max_residual", max_residual},
            {"max_truncation_shift", max_shift},
            {"min_eigenvalue", min_eig},
            {"solver_failures", failures}};
}

int emit_statistics(const std::string& command, const Options& opt, const RunConfig& cfg,
                    const SweepConfig& sweep, Stopwatch& clock, std::map<std::string, double> timings) {
    const std::vector<SweepRow> rows = run_sweep(sweep);
    timings["compute"] = clock.lap();

    std::size_t flagged = 0;
    RunManifest manifest;
    manifest.command = command;
    manifest.config_echo = to_json(cfg);
    manifest.diagnostics = summarize(sweep, rows, flagged);
    const fs::path file = fs::path(opt.out) / (command + ".csv");
    manifest.timings = timings;
    write_outputs(file, statistics_table(sweep, rows), manifest);

    std::cout << command << ": " << rows.size() << " rows, " << flagged << " flagged -> "
              << file.string() << '\n';
    if (flagged > cfg.failure_budget) {
        std::cerr << "error: " << flagged << " flagged rows exceed the failure budget of "
                  << cfg.failure_budget << '\n';
        return kFlagged;
    }
    return kOk;
}

int cmd_sweep(const Options& opt) {
    Stopwatch clock;
    const RunConfig cfg = resolve(opt);
    validate(cfg.sweep);
    return emit_statistics("sweep", opt, cfg, cfg.sweep, clock, {{"parse_config", clock.lap()}});
}

int cmd_steady(const Options& opt) {
    Stopwatch clock;
    const RunConfig cfg = resolve(opt);
    SweepConfig point = cfg.sweep;
    point.axis = SweepAxis::DeltaC;
    point.grid = {cfg.model().delta_c};
    validate(point);
    return emit_statistics("steady", opt, cfg, point, clock, {{"parse_config", clock.lap()}});
}

int cmd_evolve(const Options& opt) {
    Stopwatch clock;
    const RunConfig cfg = resolve(opt);
    std::map<std::string, double> timings{{"parse_config", clock.lap()}};
    const EvolutionComparison cmp =
        compare_evolutions(cfg.model(), cfg.evolve.t_max, cfg.evolve.points, cfg.integrator);
    timings["compute"] = clock.lap();

    RunManifest manifest;
    manifest.command = "evolve";
    manifest.config_echo = to_json(cfg);
    manifest.diagnostics = {{"steady_n_a", cmp.steady_n_a},
                            {"max_abs_deviation", cmp.max_abs_deviation},
                            {"max_relative_deviation", cmp.max_relative_deviation}};
    manifest.timings = timings;
    const fs::path file = fs::path(opt.out) / "evolve.csv";
    write_outputs(file, evolution_table(cmp), manifest);
    std::cout << "evolve: " << cmp.rows.size() << " samples, max relative deviation "
              << format_number(cmp.max_relative_deviation) << " -> " << file.string() << '\n';
    return kOk;
}

int cmd_threshold(const Options& opt) {
    Stopwatch clock;
    const RunConfig cfg = resolve(opt);
    std::map<std::string, double> timings{{"parse_config", clock.lap()}};
    const ThresholdResult r = find_g2_threshold(cfg.model(), cfg.threshold.g_lo, cfg.threshold.g_hi,
                                                cfg.threshold.tolerance);
    timings["compute"] = clock.lap();

    RunManifest manifest;
    manifest.command = "threshold";
    manifest.config_echo = to_json(cfg);
    manifest.diagnostics = {{"iterations", r.iterations}, {"g2_at_threshold", r.g2}};
    manifest.timings = timings;
    const fs::path file = fs::path(opt.out) / "threshold.csv";
    write_outputs(file, threshold_table(r), manifest);
    std::cout << "threshold: g = " << format_number(r.g) << " (g2 = " << format_number(r.g2)
              << ") -> " << file.string() << '\n';
    return kOk;
}

int cmd_validate() {
    bool ok = true;
    for (const OracleResult& r : run_validation()) {
        std::printf("%-4s %-24s max error %.3e (tolerance %.0e)  %s\n", r.passed ? "PASS" : "FAIL",
                    r.name.c_str(), r.max_error, r.tolerance, r.detail.c_str());
        ok = ok && r.passed;
    }
    return ok ? kOk : kFlagged;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cascaded cavity-QED photon statistics"};
    app.require_subcommand(1);
    Options opt;
    std::size_t n_max = 0;
    int jobs = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "YAML run configuration")->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out, "output directory")->capture_default_str();
        sub->add_option("--n-max", n_max, "cavity Fock cutoff (overrides numerics.n_max)");
        sub->add_option("--jobs", jobs, "OpenMP threads")->check(CLI::PositiveNumber);
    };
    CLI::App* sweep = app.add_subcommand("sweep", "steady-state scan over delta_c or g");
    CLI::App* steady = app.add_subcommand("steady", "single steady state at model.delta_c");
    CLI::App* evolve = app.add_subcommand("evolve", "master-equation vs no-jump n_a(t)");
    CLI::App* threshold = app.add_subcommand("threshold", "coupling g with g2(0) = 1");
    CLI::App* validate_cmd = app.add_subcommand("validate", "run the oracle suite");
    for (CLI::App* sub : {sweep, steady, evolve, threshold}) add_common(sub);
    validate_cmd->add_option("--jobs", jobs, "OpenMP threads")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);
    if (n_max > 0) opt.n_max = n_max;
    if (jobs > 0) kernels::set_threads(jobs);

    try {
        if (sweep->parsed()) return cmd_sweep(opt);
        if (steady->parsed()) return cmd_steady(opt);
        if (evolve->parsed()) return cmd_evolve(opt);
        if (threshold->parsed()) return cmd_threshold(opt);
        return cmd_validate();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const SolverError& e) {
        std::cerr << "solver error at t = " << e.time() << ": " << e.what() << '\n';
        return kSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfig;
    }
}
