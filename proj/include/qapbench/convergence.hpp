#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qapbench/instance.hpp"
#include "qapbench/trace.hpp"

namespace qapbench {

/// Tunables of the strong-convergence detector: sliding-window length n,
/// CV-gap threshold delta, and the number K of below-threshold iterations
/// required.
struct DetectorSettings {
    int window = 50;
    double delta = 1e-3;
    int target = 10;
};

/// Watches a best-cost series. From iteration i > window on, it computes the
/// coefficient of variation (population std / mean) of every full-length
/// window ending in (i - window, i]; when the gap between the largest and
/// smallest of those CVs falls below delta, the counter k increments
/// (cumulatively — it never resets). The run is declared strongly converged
/// the first time k reaches the target. CV is scale-free, so the verdict is
/// invariant under positive rescaling of the series.
class StrongConvergenceDetector {
public:
    explicit StrongConvergenceDetector(DetectorSettings settings);

    /// Feeds the next iteration's best cost (non-negative). Takes a double so
    /// rescaled or synthetic series keep their exact values; integral costs
    /// convert losslessly.
    void step(double best);

    int iterations() const { return static_cast<int>(history_.size()); }
    int k() const { return k_; }
    bool converged() const { return trigger_.has_value(); }
    /// 1-based iteration count at which k first reached the target.
    std::optional<int> trigger_iteration() const { return trigger_; }
    const DetectorSettings& settings() const { return settings_; }

private:
    DetectorSettings settings_;
    std::vector<double> history_;
    int k_ = 0;
    std::optional<int> trigger_;
};

/// One Max/Mean/Min column group of the strong-convergence table.
struct Table2Block {
    double max = 0.0;
    double mean = 0.0;
    double min = 0.0;
};

/// Detector verdict plus the table2 aggregates. A single-replication report
/// carries that run's own values (max = mean = min); table2_summary folds
/// many of these into one. iterations/run_time cover converged replications
/// only and are absent when none converged; best_objective always covers all
/// replications (non-converged ones contribute their at-budget best).
struct ConvergenceReport {
    bool converged = false;
    std::optional<int> trigger_iteration;
    int k_final = 0;
    DetectorSettings settings;
    Table2Block best_objective;
    std::optional<Table2Block> iterations;
    std::optional<Table2Block> run_time;
    int replications = 0;
    int converged_count = 0;
};

/// Runs the detector over a trace's best column. The reported objective is
/// the best-so-far at the trigger (converged) or at budget end; run_time is
/// the lambda sum up to and including the trigger iteration.
ConvergenceReport detect_convergence(std::span<const IterationTrace> trace,
                                     DetectorSettings settings);

/// Folds per-replication reports into one table2 row. The aggregate is
/// "converged" only when every replication is; its k_final is the smallest
/// k seen and its trigger_iteration the latest trigger (absent unless all
/// converged). All inputs must share identical settings.
ConvergenceReport table2_summary(std::span<const ConvergenceReport> replications);

} // namespace qapbench
