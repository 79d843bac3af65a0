#include "common.hpp"

namespace qapbench {

SolverResult run_hs(const QapInstance& inst, const SolverConfig& cfg, Rng& rng,
                    const TraceObserver& observer) {
    detail::check_runnable(inst);
    const int n = inst.n;
    const int hms = cfg.hs.hms;
    detail::TraceSink sink(cfg, observer);

    std::vector<KeyVector> memory;
    std::vector<Cost> costs;
    memory.reserve(static_cast<std::size_t>(hms));
    costs.reserve(static_cast<std::size_t>(hms));
    for (int i = 0; i < hms; ++i) {
        memory.push_back(random_keys(n, rng));
        sink.charge();
        costs.push_back(cost(inst, decode_keys(memory.back())));
    }

    std::size_t best = 0;
    Assignment best_assignment;
    for (std::size_t i = 1; i < costs.size(); ++i)
        if (costs[i] < costs[best]) best = i;
    best_assignment = decode_keys(memory[best]);
    Cost best_cost = costs[best];

    for (int t = 0; t < cfg.max_iterations; ++t) {
        sink.begin_iteration();

        KeyVector harmony(static_cast<std::size_t>(n));
        for (int d = 0; d < n; ++d) {
            const std::size_t k = static_cast<std::size_t>(d);
            if (rng.next_unit() < cfg.hs.hmcr) {
                harmony[k] = memory[rng.next_below(static_cast<std::uint64_t>(hms))][k];
                if (rng.next_unit() < cfg.hs.par)
                    harmony[k] += rng.next_range(-cfg.hs.bandwidth, cfg.hs.bandwidth);
            } else {
                harmony[k] = rng.next_unit();
            }
        }
        sink.charge();
        const Cost harmony_cost = cost(inst, decode_keys(harmony));

        std::size_t worst = 0;
        for (std::size_t i = 1; i < costs.size(); ++i)
            if (costs[i] > costs[worst]) worst = i;
        if (harmony_cost < costs[worst]) {
            memory[worst] = std::move(harmony);
            costs[worst] = harmony_cost;
            if (harmony_cost < best_cost) {
                best_cost = harmony_cost;
                best_assignment = decode_keys(memory[worst]);
            }
        }

        detail::CandidateSet cs;
        for (Cost c : costs) cs.add(c);
        sink.record(t, cs.best(), cs);
    }
    return detail::finish(std::move(best_assignment), best_cost, std::move(sink));
}

} // namespace qapbench
