#pragma once

#include <vector>

#include "qapbench/evaluate.hpp"
#include "qapbench/instance.hpp"
#include "qapbench/perm_ops.hpp"
#include "qapbench/rng.hpp"
#include "qapbench/solver_config.hpp"
#include "qapbench/trace.hpp"

namespace qapbench {

struct SolverResult {
    Assignment best_assignment;
    Cost best_cost = 0;
    std::vector<IterationTrace> trace;
    int iterations_run = 0;
    double wall_time = 0.0; ///< sum of per-iteration lambda, seconds
    std::optional<bool> converged; ///< filled by the harness detector when attached
};

/// Dispatches on cfg.algorithm after validate(cfg). Every solver:
///   - emits exactly one trace record (and observer call) per iteration,
///   - is deterministic in (instance, config): same seed, same bytes,
///   - satisfies best_cost == cost(inst, best_assignment)
///     == min over trace records of their best field.
SolverResult run(const QapInstance& inst, const SolverConfig& cfg,
                 const TraceObserver& observer = {});

/// 2-opt local search with inversion-mutation restarts. One iteration scans
/// all facility pairs (i, j > i) from the incumbent, taking improvements as
/// found; the scanned optimum then receives one inversion mutation which is
/// adopted only if it beats the incumbent. The trace best column is the
/// incumbent cost; mean/worst cover the scan's evaluated candidates.
SolverResult run_lsh(const QapInstance& inst, const SolverConfig& cfg, Rng& rng,
                     const TraceObserver& observer = {});

/// Generational GA on permutations: roulette selection, MOX crossover,
/// ISM/IVM/EM mutation mix, elitism of one. Trace columns cover the
/// generation's population; best is the elite (monotone).
SolverResult run_ga(const QapInstance& inst, const SolverConfig& cfg, Rng& rng,
                    const TraceObserver& observer = {});

/// Random-key PSO with linearly decreasing c1/c2. Trace best is the global
/// best (monotone); mean/worst cover the swarm's current positions.
SolverResult run_pso(const QapInstance& inst, const SolverConfig& cfg, Rng& rng,
                     const TraceObserver& observer = {});

/// PSO core plus accept-if-better permutation mutations applied to every
/// personal best each iteration and to the global best once per iteration.
/// Mutation randomness comes from a stream separate from the swarm's, so a
/// run in which no mutant is ever accepted matches run_pso step for step.
SolverResult run_ga_pso(const QapInstance& inst, const SolverConfig& cfg, Rng& rng,
                        const TraceObserver& observer = {});

/// Random-key grey wolf optimizer. Three leader positions guide the pack;
/// each pack wolf draws fresh r1/r2 per leader. Leaders and the moved pack
/// are re-ranked each iteration, so the alpha cost is monotone. Requires
/// population_size >= 4. Trace columns cover leaders plus pack.
SolverResult run_gwo(const QapInstance& inst, const SolverConfig& cfg, Rng& rng,
                     const TraceObserver& observer = {});

/// Random-key harmony search: one improvisation per iteration replaces the
/// worst memory member if strictly better. Trace columns cover the memory.
SolverResult run_hs(const QapInstance& inst, const SolverConfig& cfg, Rng& rng,
                    const TraceObserver& observer = {});

/// Simulated annealing over the swap neighborhood with geometric cooling.
/// One iteration is one temperature plateau of moves_per_temperature
/// proposals; trace columns summarize the plateau's visited states, so the
/// best column is not monotone (the running minimum is).
SolverResult run_sa(const QapInstance& inst, const SolverConfig& cfg, Rng& rng,
                    const TraceObserver& observer = {});

/// One grey-wolf encircling step toward one leader, componentwise
/// X' = L - A.D with A = 2a*r1 - a, C = 2*r2, D = |C.L - X|.
/// Exposed so the algebra is unit-testable.
KeyVector gwo_encircle(const KeyVector& leader, const KeyVector& x, double a,
                       const KeyVector& r1, const KeyVector& r2);

/// Metropolis rule: 1 for delta <= 0, exp(-delta/temperature) otherwise.
double metropolis_acceptance(Cost delta, double temperature);

/// Number of uphill swap deltas sampled when calibrating the SA start
/// temperature.
inline constexpr int kSaCalibrationSamples = 100;

/// Start temperature such that an average sampled uphill swap is accepted
/// with probability target_ratio: T0 = -mean(positive deltas)/ln(ratio).
/// Falls back to 1.0 when no sampled swap is uphill.
double calibrate_initial_temperature(const QapInstance& inst, const Assignment& start,
                                     double target_ratio, Rng& rng,
                                     int samples = kSaCalibrationSamples);

} // namespace qapbench
