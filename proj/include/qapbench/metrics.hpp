#pragma once

#include <optional>
#include <span>

#include "qapbench/solvers.hpp"
#include "qapbench/trace.hpp"

namespace qapbench {

/// Per-iteration time statistics. A trace with S records is treated as S
/// timestamps, so the deltas are the lambda values of records 1..S-1; the
/// first record's lambda is the cost of arriving at the first timestamp and
/// is excluded. lambda_mean is the sample mean over those S-1 deltas;
/// lambda_mean_literal divides the same sum by S instead (the formula as
/// printed), which undershoots and is kept only as a labeled auxiliary.
struct LambdaStats {
    double lambda_min = 0.0;
    double lambda_mean = 0.0;
    double lambda_max = 0.0;
    double lambda_mean_literal = 0.0;
    int deltas = 0; ///< S-1
};

/// Throws InsufficientDataError when the trace has fewer than 2 records.
LambdaStats lambda_stats(std::span<const IterationTrace> trace);

/// Core of lambda_stats: deltas are the S-1 inter-timestamp gaps,
/// recorded_points is S (used only by the literal mean).
LambdaStats lambda_stats_from_deltas(std::span<const double> deltas, int recorded_points);

/// Pearson chi-square fit of the samples against a uniform distribution.
/// Lower statistic = more uniform = more robust.
struct GofResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int bins = 0;
    bool degenerate = false; ///< zero spread: statistic forced to 0
};

/// Bin-count heuristic: max(2, floor(sqrt(m))).
int default_gof_bins(std::size_t samples);

/// Equal-width bins spanning [min(samples), max(samples)], expected count
/// m/bins per bin, p-value from the chi-square upper tail with bins-1
/// degrees of freedom. Requires bins >= 2 and at least 5*bins samples.
GofResult robustness_gof(std::span<const double> samples, int bins);

/// Same test over an explicit range [lo, hi) (samples must lie inside).
/// Needed when the uniform hypothesis concerns a known support rather than
/// the sample extremes.
GofResult robustness_gof(std::span<const double> samples, int bins, double lo, double hi);

/// Run-level reduction of one replication's trace: the minimum of the best
/// column, the mean of the mean column, the maximum of the worst column.
struct RunSummary {
    Cost best = 0;
    double average = 0.0;
    Cost worst = 0;
};

RunSummary summarize_run(std::span<const IterationTrace> trace);

/// table1 aggregate across replications: means and population variances of
/// the per-replication (best, average, worst), plus timing.
struct RunStatistics {
    double mean_best = 0.0;
    double mean_avg = 0.0;
    double mean_worst = 0.0;
    double var_best = 0.0;
    double var_avg = 0.0;
    double var_worst = 0.0;
    /// Mean over replications of each run's lambda_mean; absent when any
    /// replication has too few records for lambda_stats.
    std::optional<double> efficiency;
    double total_time = 0.0; ///< mean wall time per replication, seconds
    int replications = 0;
};

/// Throws InsufficientDataError on an empty list.
RunStatistics aggregate_replications(std::span<const SolverResult> results);

} // namespace qapbench
