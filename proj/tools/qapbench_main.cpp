#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "qapbench/harness.hpp"

namespace {

using namespace qapbench;

int do_run(const std::string& config_path, const std::string& out_override,
           std::uint64_t seed_override, bool have_seed, int workers_override, bool half_count,
           bool swap_matrices, bool deterministic_time) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    if (!out_override.empty()) cfg.output_dir = out_override;
    if (have_seed) cfg.master_seed = seed_override;
    if (workers_override > 0) cfg.workers = workers_override;
    if (half_count) cfg.half_count = true;
    if (swap_matrices) cfg.swap_matrices = true;
    if (deterministic_time) cfg.deterministic_time = true;

    const ExperimentResult result = run_experiment(cfg, &std::cerr);
    std::cout << result.traces.size() << " cell(s) completed, " << result.failures.size()
              << " failed; reports under " << cfg.output_dir << '\n';
    return result.exit_code;
}

int do_report(const std::string& dir, const std::string& out_override, bool ignore_saved,
              int window, double delta, int target, bool half_count, bool swap_matrices) {
    ReportOptions options;
    options.detector.window = window;
    options.detector.delta = delta;
    options.detector.target = target;
    options.half_count = half_count;
    options.swap_matrices = swap_matrices;
    const std::string out = out_override.empty() ? dir : out_override;
    return cmd_report(dir, out, options, !ignore_saved, std::cerr);
}

int do_oracle(const std::string& instance_path, bool swap_matrices, bool half_count) {
    QapInstance inst = load_qaplib_file(instance_path);
    if (swap_matrices) swap_flow_distance(inst);
    const BruteForceResult result = brute_force(inst);
    std::cout << "instance " << inst.name << " n=" << inst.n << '\n';
    std::cout << "optimal_cost " << result.cost << '\n';
    if (half_count)
        std::cout << "optimal_cost_half " << format_double(static_cast<double>(result.cost) / 2.0)
                  << '\n';
    std::cout << "assignment";
    for (int v : result.assignment) std::cout << ' ' << v;
    std::cout << '\n';
    std::cout << "evaluated " << result.evaluated << '\n';
    return 0;
}

int do_series(const std::string& trace_path, const std::string& out_dir, int window) {
    const TraceFile t = load_trace_file(trace_path);
    const SeriesFiles files = emit_series(t, out_dir, window);
    std::cout << files.objective.string() << '\n'
              << files.lambda.string() << '\n'
              << files.rolling_variance.string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"QAP heuristic benchmark harness"};
    app.require_subcommand(1);

    std::string config_path, out_dir, instance_path, trace_path, trace_dir;
    std::uint64_t seed = 0;
    int workers = 0;
    bool half_count = false, swap_matrices = false, deterministic_time = false;
    bool ignore_saved = false;
    DetectorSettings det;

    CLI::App* run = app.add_subcommand("run", "execute an experiment config");
    run->add_option("--config", config_path, "experiment config (JSON)")->required();
    run->add_option("--out", out_dir, "override the config's output directory");
    CLI::Option* seed_opt = run->add_option("--seed", seed, "override the master seed");
    run->add_option("--workers", workers, "override the worker count");
    run->add_flag("--half-count", half_count, "also emit the value/2 convention column");
    run->add_flag("--swap-matrices", swap_matrices, "swap the two matrix blocks on load");
    run->add_flag("--deterministic-time", deterministic_time,
                  "charge a fixed virtual time per objective evaluation");

    CLI::App* report = app.add_subcommand("report", "rebuild reports from stored traces");
    report->add_option("dir", trace_dir, "directory holding traces (or a traces/ subdir)")
        ->required();
    report->add_option("--out", out_dir, "where to write reports (default: dir)");
    report->add_flag("--ignore-saved", ignore_saved,
                     "ignore report_config.json and use the flags below");
    report->add_option("--window", det.window, "detector window");
    report->add_option("--delta", det.delta, "detector CV-gap threshold");
    report->add_option("--target", det.target, "detector target count");
    report->add_flag("--half-count", half_count, "also emit the value/2 convention column");
    report->add_flag("--swap-matrices", swap_matrices,
                     "instances were loaded with swapped matrices");

    CLI::App* oracle = app.add_subcommand("oracle", "exhaustive optimum of a small instance");
    oracle->add_option("instance", instance_path, "QAPLIB-format instance file")->required();
    oracle->add_flag("--swap-matrices", swap_matrices, "swap the two matrix blocks on load");
    oracle->add_flag("--half-count", half_count, "also print the value/2 convention cost");

    CLI::App* series = app.add_subcommand("series", "emit plot-ready series for one trace");
    series->add_option("trace", trace_path, "trace file written by run")->required();
    series->add_option("--out", out_dir, "output directory (default: .)");
    int rolling_window = 50;
    series->add_option("--window", rolling_window, "rolling-variance window");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return do_run(config_path, out_dir, seed, seed_opt->count() > 0, workers, half_count,
                          swap_matrices, deterministic_time);
        if (report->parsed())
            return do_report(trace_dir, out_dir, ignore_saved, det.window, det.delta, det.target,
                             half_count, swap_matrices);
        if (oracle->parsed()) return do_oracle(instance_path, swap_matrices, half_count);
        if (series->parsed())
            return do_series(trace_path, out_dir.empty() ? "." : out_dir, rolling_window);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
