#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qapbench/convergence.hpp"
#include "qapbench/metrics.hpp"
#include "qapbench/solvers.hpp"

namespace qapbench {

/// One persisted run: its identifying metadata plus the full per-iteration
/// trace. The text
/// form is line-oriented ("# qap-trace 1" header, key/value lines, then one
/// row per iteration) so plots and diffs need no custom tooling. Doubles are
/// written in shortest round-trip form, so parse(serialize(t)) reproduces the
/// numbers bit for bit.
struct TraceFile {
    std::string instance_path;
    std::string instance_name;
    Algorithm algorithm = Algorithm::Lsh;
    int replication = 0;
    std::uint64_t seed = 0;
    Cost best_cost = 0;
    Assignment best_assignment;
    std::vector<IterationTrace> trace;
};

std::string serialize_trace(const TraceFile& t);
/// Throws ParseError on malformed text.
TraceFile parse_trace(const std::string& text);
/// Throws IoError on unreadable files; ParseError is prefixed with the path.
TraceFile load_trace_file(const std::filesystem::path& path);
void write_trace_file(const std::filesystem::path& path, const TraceFile& t);
/// Canonical basename: <instance>__<algorithm>__r<replication, 3 digits>.trace
std::string trace_filename(const TraceFile& t);

/// Shortest decimal form that parses back to exactly the same double. Used by
/// every text artifact so serial and parallel runs agree byte for byte.
std::string format_double(double x);

/// Full experiment description, loadable from a JSON file whose keys mirror
/// the field names (instances, algorithms, replications, seed, workers,
/// output_dir, detector{window,delta,target}, half_count, swap_matrices,
/// deterministic_time, formats, solver_params).
struct ExperimentConfig {
    std::vector<std::string> instances;
    std::vector<Algorithm> algorithms;
    int replications = 10;
    std::uint64_t master_seed = 1;
    int workers = 1;
    std::string output_dir = "out";
    DetectorSettings detector;
    bool half_count = false;       ///< add the value/2 convention column
    bool swap_matrices = false;    ///< swap the two matrix blocks on load
    bool deterministic_time = false;
    bool write_csv = true;
    bool write_json = true;
    /// Per-algorithm parameter overrides, keyed by algorithm name, stored as
    /// JSON object text and applied on top of default_config per instance.
    std::map<std::string, std::string> solver_params;
};

/// Throws ConfigError listing every violated constraint.
void validate(const ExperimentConfig& cfg);
/// Throws IoError on unreadable files, ParseError/ConfigError on bad content.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// default_config(algorithm, instance_size) plus the config's override block
/// for that algorithm, validated. Seed and deterministic_time still come from
/// the caller.
SolverConfig make_cell_config(const ExperimentConfig& cfg, Algorithm algorithm,
                              int instance_size);

/// Replication seed: master xor-mixed with the replication index, so adding
/// replications never disturbs earlier ones and equal indices share seeds
/// across instances and algorithms (paired-seed comparisons).
std::uint64_t replication_seed(std::uint64_t master_seed, int replication);

/// One quality-table row per (instance, algorithm): best over replications
/// (re-verified against the stored assignment via cost()) plus the
/// aggregated statistics in column order best_obj, M.B, M.A, M.W, V.B, V.A,
/// V.W, efficiency, time.
struct ReportRow {
    std::string instance;
    Algorithm algorithm = Algorithm::Lsh;
    Cost best_obj = 0;
    RunStatistics stats;
};

/// Strong-convergence table row: the aggregate over the group's replications.
struct Table2Row {
    std::string instance;
    Algorithm algorithm = Algorithm::Lsh;
    ConvergenceReport report;
};

/// Chi-square uniformity of the group's pooled per-iteration lambda deltas.
/// status is "ok", "degenerate" (zero spread), or "insufficient-data".
struct RobustnessRow {
    std::string instance;
    Algorithm algorithm = Algorithm::Lsh;
    std::size_t samples = 0;
    std::string status;
    GofResult gof;
};

struct ReportBundle {
    std::vector<ReportRow> table1;
    std::vector<Table2Row> table2;
    std::vector<RobustnessRow> robustness;
};

/// How reports are rendered and re-derived. Persisted by cmd_run as
/// report_config.json next to the traces so cmd_report regenerates identical
/// bytes without the original experiment config.
struct ReportOptions {
    DetectorSettings detector;
    bool half_count = false;
    bool swap_matrices = false;
    bool write_csv = true;
    bool write_json = true;
};

/// Groups traces by (instance, algorithm) — ordered by instance name, then
/// path, then algorithm — aggregates each group, attaches the convergence
/// detector, and verifies every group's best objective by re-evaluating the
/// stored assignment on the (re)loaded instance. Throws ContractError when a
/// stored best does not re-verify; IoError when an instance file is missing.
ReportBundle build_reports(const std::vector<TraceFile>& traces, const ReportOptions& options);

std::string table1_csv(const ReportBundle& reports, const ReportOptions& options);
std::string table2_csv(const ReportBundle& reports);
std::string robustness_csv(const ReportBundle& reports);
std::string table1_json(const ReportBundle& reports, const ReportOptions& options);
std::string table2_json(const ReportBundle& reports);
std::string robustness_json(const ReportBundle& reports);

/// Writes table1/table2/robustness in the formats selected by options, plus
/// report_config.json, into out_dir.
void write_reports(const std::filesystem::path& out_dir, const ReportBundle& reports,
                   const ReportOptions& options);

ReportOptions load_report_options(const std::filesystem::path& out_dir);

/// Plot-ready series for one run: (iteration, best, mean, worst),
/// (iteration, lambda), and the rolling population variance of the best
/// column. The rolling file starts at the first record with a full window
/// behind it (ordinal iteration = window).
struct SeriesFiles {
    std::filesystem::path objective;
    std::filesystem::path lambda;
    std::filesystem::path rolling_variance;
};

SeriesFiles emit_series(const TraceFile& t, const std::filesystem::path& out_dir,
                        int rolling_window = 50);

/// Outcome of one (instance, algorithm, replication) cell that failed.
struct CellFailure {
    std::string instance_path;
    Algorithm algorithm = Algorithm::Lsh;
    int replication = 0;
    std::string error;
};

struct ExperimentResult {
    std::vector<TraceFile> traces;    ///< successful cells, canonical order
    std::vector<CellFailure> failures;
    ReportBundle reports;
    int exit_code = 0;                ///< 0 all cells ok, 2 partial failure
};

/// Runs every cell (optionally on cfg.workers threads), writes traces,
/// reports, report_config.json, and a timestamps-only meta.json under
/// cfg.output_dir. Numeric artifacts depend only on (config, master seed),
/// never on the worker count. Throws ConfigError for an invalid config.
ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream* diag = nullptr);

/// Rebuilds all reports from the trace files under dir (dir/traces/*.trace if
/// that subdirectory exists, else dir/*.trace), using report_config.json from
/// dir when present, CLI-level overrides otherwise. Corrupt traces are
/// reported to diag and skipped. Returns 0 (all parsed), 2 (some skipped), or
/// 1 (nothing usable).
int cmd_report(const std::filesystem::path& dir, const std::filesystem::path& out_dir,
               const ReportOptions& options, bool options_from_file, std::ostream& diag);

} // namespace qapbench
