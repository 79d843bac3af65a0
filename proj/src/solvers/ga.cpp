#include "common.hpp"

namespace qapbench {

namespace {

Assignment mutate_by_mix(const Assignment& a, const std::array<double, 3>& mix, Rng& rng) {
    const double total = mix[0] + mix[1] + mix[2];
    const double u = rng.next_unit() * total;
    if (u < mix[0]) return insertion_mutation(a, rng);
    if (u < mix[0] + mix[1]) return inversion_mutation(a, rng);
    return exchange_mutation(a, rng);
}

} // namespace

SolverResult run_ga(const QapInstance& inst, const SolverConfig& cfg, Rng& rng,
                    const TraceObserver& observer) {
    detail::check_runnable(inst);
    const int pop_size = cfg.population_size;
    detail::TraceSink sink(cfg, observer);

    Population pop;
    pop.members.reserve(static_cast<std::size_t>(pop_size));
    pop.costs.reserve(static_cast<std::size_t>(pop_size));
    for (int i = 0; i < pop_size; ++i) {
        pop.members.push_back(random_assignment(inst.n, rng));
        sink.charge();
        pop.costs.push_back(cost(inst, pop.members.back()));
    }

    auto best_index = [&pop]() {
        std::size_t best = 0;
        for (std::size_t i = 1; i < pop.size(); ++i)
            if (pop.costs[i] < pop.costs[best]) best = i;
        return best;
    };

    std::size_t elite = best_index();
    Assignment best_assignment = pop.members[elite];
    Cost best_cost = pop.costs[elite];

    for (int t = 0; t < cfg.max_iterations; ++t) {
        sink.begin_iteration();

        Population next;
        next.members.reserve(pop.members.size());
        next.costs.reserve(pop.costs.size());
        next.members.push_back(pop.members[elite]); // elitism of one
        next.costs.push_back(pop.costs[elite]);

        while (next.members.size() < pop.members.size()) {
            const std::size_t pa = roulette_select(pop, rng);
            const std::size_t pb = roulette_select(pop, rng);
            Assignment child1 = pop.members[pa];
            Assignment child2 = pop.members[pb];
            if (rng.next_unit() < cfg.ga.crossover_rate)
                std::tie(child1, child2) = mox_crossover(child1, child2, rng);
            for (Assignment* child : {&child1, &child2}) {
                if (next.members.size() >= pop.members.size()) break;
                if (rng.next_unit() < cfg.ga.mutation_rate)
                    *child = mutate_by_mix(*child, cfg.ga.mutation_mix, rng);
                sink.charge();
                next.costs.push_back(cost(inst, *child));
                next.members.push_back(std::move(*child));
            }
        }
        pop = std::move(next);

        elite = best_index();
        if (pop.costs[elite] < best_cost) {
            best_cost = pop.costs[elite];
            best_assignment = pop.members[elite];
        }

        detail::CandidateSet cs;
        for (Cost c : pop.costs) cs.add(c);
        sink.record(t, cs.best(), cs);
    }
    return detail::finish(std::move(best_assignment), best_cost, std::move(sink));
}

} // namespace qapbench
