#include "common.hpp"

namespace qapbench {

SolverResult run_lsh(const QapInstance& inst, const SolverConfig& cfg, Rng& rng,
                     const TraceObserver& observer) {
    detail::check_runnable(inst);
    const int n = inst.n;
    detail::TraceSink sink(cfg, observer);

    Assignment current = random_assignment(n, rng);
    sink.charge();
    Cost current_cost = cost(inst, current);
    Assignment incumbent = current;
    Cost incumbent_cost = current_cost;

    for (int t = 0; t < cfg.max_iterations; ++t) {
        sink.begin_iteration();
        detail::CandidateSet cs;

        // Multi-start: every round after the first begins from a fresh random
        // assignment; round 0 polishes the initial solution.
        if (t > 0) {
            current = random_assignment(n, rng);
            sink.charge();
            current_cost = cost(inst, current);
        }
        cs.add(current_cost);

        // First-improvement 2-opt descent: improving swaps are applied
        // immediately, and full passes repeat until one changes nothing, so
        // `current` ends swap-local-optimal. The incumbent is only ever
        // replaced by such a polished solution.
        bool improved = true;
        while (improved) {
            improved = false;
            for (int i = 0; i + 1 < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    sink.charge();
                    const Cost delta = swap_delta(inst, current, i, j);
                    cs.add(current_cost + delta);
                    if (delta < 0) {
                        std::swap(current[static_cast<std::size_t>(i)],
                                  current[static_cast<std::size_t>(j)]);
                        current_cost += delta;
                        improved = true;
                    }
                }
        }
        if (current_cost < incumbent_cost) {
            incumbent = current;
            incumbent_cost = current_cost;
        }

        sink.record(t, incumbent_cost, cs);
    }
    return detail::finish(std::move(incumbent), incumbent_cost, std::move(sink));
}

} // namespace qapbench
