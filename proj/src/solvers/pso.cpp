#include "common.hpp"

namespace qapbench {

namespace {

// Sub-stream tag for the hybrid's mutation draws. Keeping them off the swarm
// stream means a hybrid run that never accepts a mutant replays the plain PSO
// trajectory exactly.
constexpr std::uint64_t kMutationStreamTag = 0x6d75746174696f6eULL; // "mutation"

struct Particle {
    KeyVector x;
    KeyVector v;
    KeyVector pbest;
    Cost pbest_cost;
};

Assignment mutate_uniform(const Assignment& a, Rng& rng) {
    switch (rng.next_index(3)) {
    case 0: return insertion_mutation(a, rng);
    case 1: return inversion_mutation(a, rng);
    default: return exchange_mutation(a, rng);
    }
}

SolverResult run_pso_core(const QapInstance& inst, const SolverConfig& cfg, Rng& rng,
                          const TraceObserver& observer, bool hybrid) {
    detail::check_runnable(inst);
    const int n = inst.n;
    const int swarm_size = cfg.population_size;
    detail::TraceSink sink(cfg, observer);
    Rng mutation_rng(derive_seed(cfg.seed, kMutationStreamTag));

    std::vector<Particle> swarm;
    swarm.reserve(static_cast<std::size_t>(swarm_size));
    for (int i = 0; i < swarm_size; ++i) {
        Particle p;
        p.x = random_keys(n, rng);
        p.v.assign(static_cast<std::size_t>(n), 0.0);
        p.pbest = p.x;
        sink.charge();
        p.pbest_cost = cost(inst, decode_keys(p.x));
        swarm.push_back(std::move(p));
    }

    std::size_t seed_best = 0;
    for (std::size_t i = 1; i < swarm.size(); ++i)
        if (swarm[i].pbest_cost < swarm[seed_best].pbest_cost) seed_best = i;
    KeyVector gbest = swarm[seed_best].pbest;
    Cost gbest_cost = swarm[seed_best].pbest_cost;

    auto try_mutate = [&](KeyVector& keys, Cost& keys_cost) {
        const Assignment mutant = mutate_uniform(decode_keys(keys), mutation_rng);
        sink.charge();
        const Cost mutant_cost = cost(inst, mutant);
        if (mutant_cost < keys_cost) {
            keys = reencode_keys(keys, mutant);
            keys_cost = mutant_cost;
        }
    };

    for (int t = 0; t < cfg.max_iterations; ++t) {
        sink.begin_iteration();
        const double c1 =
            interpolate_coefficient(cfg.pso.c1_start, cfg.pso.c1_end, t, cfg.max_iterations);
        const double c2 =
            interpolate_coefficient(cfg.pso.c2_start, cfg.pso.c2_end, t, cfg.max_iterations);

        detail::CandidateSet cs;
        for (Particle& p : swarm) {
            for (int d = 0; d < n; ++d) {
                const std::size_t k = static_cast<std::size_t>(d);
                const double r1 = rng.next_unit();
                const double r2 = rng.next_unit();
                p.v[k] = cfg.pso.inertia * p.v[k] + c1 * r1 * (p.pbest[k] - p.x[k]) +
                         c2 * r2 * (gbest[k] - p.x[k]);
                p.x[k] += p.v[k];
            }
            sink.charge();
            const Cost c = cost(inst, decode_keys(p.x));
            cs.add(c);
            if (c < p.pbest_cost) {
                p.pbest = p.x;
                p.pbest_cost = c;
            }
            if (hybrid) try_mutate(p.pbest, p.pbest_cost);
        }

        for (const Particle& p : swarm)
            if (p.pbest_cost < gbest_cost) {
                gbest = p.pbest;
                gbest_cost = p.pbest_cost;
            }
        if (hybrid) try_mutate(gbest, gbest_cost);

        sink.record(t, gbest_cost, cs.mean(), cs.worst());
    }
    return detail::finish(decode_keys(gbest), gbest_cost, std::move(sink));
}

} // namespace

SolverResult run_pso(const QapInstance& inst, const SolverConfig& cfg, Rng& rng,
                     const TraceObserver& observer) {
    return run_pso_core(inst, cfg, rng, observer, /*hybrid=*/false);
}

SolverResult run_ga_pso(const QapInstance& inst, const SolverConfig& cfg, Rng& rng,
                        const TraceObserver& observer) {
    return run_pso_core(inst, cfg, rng, observer, /*hybrid=*/true);
}

} // namespace qapbench
