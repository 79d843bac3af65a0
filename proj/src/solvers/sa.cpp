#include "common.hpp"

#include <cmath>

namespace qapbench {

double metropolis_acceptance(Cost delta, double temperature) {
    if (delta <= 0) return 1.0;
    if (temperature <= 0.0) return 0.0;
    return std::exp(-static_cast<double>(delta) / temperature);
}

double calibrate_initial_temperature(const QapInstance& inst, const Assignment& start,
                                     double target_ratio, Rng& rng, int samples) {
    if (target_ratio <= 0.0 || target_ratio >= 1.0)
        throw ContractError("calibrate_initial_temperature: ratio must be in (0,1)");
    double uphill_sum = 0.0;
    int uphill_count = 0;
    for (int s = 0; s < samples; ++s) {
        auto [i, j] = rng.next_distinct_pair(inst.n);
        const Cost delta = swap_delta(inst, start, i, j);
        if (delta > 0) {
            uphill_sum += static_cast<double>(delta);
            ++uphill_count;
        }
    }
    if (uphill_count == 0) return 1.0; // flat or descent-only neighborhood sample
    const double mean_uphill = uphill_sum / static_cast<double>(uphill_count);
    return -mean_uphill / std::log(target_ratio);
}

SolverResult run_sa(const QapInstance& inst, const SolverConfig& cfg, Rng& rng,
                    const TraceObserver& observer) {
    detail::check_runnable(inst);
    const int n = inst.n;
    detail::TraceSink sink(cfg, observer);

    Assignment state = random_assignment(n, rng);
    sink.charge();
    Cost state_cost = cost(inst, state);
    Assignment best_assignment = state;
    Cost best_cost = state_cost;

    double temperature =
        calibrate_initial_temperature(inst, state, cfg.sa.t0_acceptance_ratio, rng);

    for (int t = 0; t < cfg.max_iterations; ++t) {
        sink.begin_iteration();
        detail::CandidateSet cs;
        cs.add(state_cost); // plateau entry state counts as visited

        for (int move = 0; move < cfg.sa.moves_per_temperature; ++move) {
            auto [i, j] = rng.next_distinct_pair(n);
            sink.charge();
            const Cost delta = swap_delta(inst, state, i, j);
            bool accept = delta <= 0;
            if (!accept) accept = rng.next_unit() < metropolis_acceptance(delta, temperature);
            if (accept) {
                std::swap(state[static_cast<std::size_t>(i)],
                          state[static_cast<std::size_t>(j)]);
                state_cost += delta;
                if (state_cost < best_cost) {
                    best_cost = state_cost;
                    best_assignment = state;
                }
            }
            cs.add(state_cost);
        }
        temperature *= cfg.sa.cooling_alpha;

        // Unlike the population methods, the plateau minimum is reported, so
        // the best column is not monotone; the running minimum is.
        sink.record(t, cs.best(), cs);
    }
    return detail::finish(std::move(best_assignment), best_cost, std::move(sink));
}

} // namespace qapbench
