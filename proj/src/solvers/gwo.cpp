#include "common.hpp"

#include <cmath>

namespace qapbench {

KeyVector gwo_encircle(const KeyVector& leader, const KeyVector& x, double a,
                       const KeyVector& r1, const KeyVector& r2) {
    if (leader.size() != x.size() || r1.size() != x.size() || r2.size() != x.size())
        throw ContractError("gwo_encircle: vector sizes differ");
    KeyVector out(x.size());
    for (std::size_t d = 0; d < x.size(); ++d) {
        const double A = 2.0 * a * r1[d] - a;
        const double C = 2.0 * r2[d];
        const double D = std::fabs(C * leader[d] - x[d]);
        out[d] = leader[d] - A * D;
    }
    return out;
}

namespace {

struct Wolf {
    KeyVector keys;
    Cost cost_value;
};

void sort_by_cost(std::vector<Wolf>& wolves) {
    std::stable_sort(wolves.begin(), wolves.end(),
                     [](const Wolf& a, const Wolf& b) { return a.cost_value < b.cost_value; });
}

} // namespace

SolverResult run_gwo(const QapInstance& inst, const SolverConfig& cfg, Rng& rng,
                     const TraceObserver& observer) {
    detail::check_runnable(inst);
    const int n = inst.n;
    detail::TraceSink sink(cfg, observer);

    // population_size wolves total; after ranking, the three best become the
    // leaders and the rest hunt as the pack.
    std::vector<Wolf> all;
    all.reserve(static_cast<std::size_t>(cfg.population_size));
    for (int i = 0; i < cfg.population_size; ++i) {
        Wolf w;
        w.keys = random_keys(n, rng);
        sink.charge();
        w.cost_value = cost(inst, decode_keys(w.keys));
        all.push_back(std::move(w));
    }
    sort_by_cost(all);
    std::vector<Wolf> leaders(all.begin(), all.begin() + 3);
    std::vector<Wolf> pack(all.begin() + 3, all.end());

    for (int t = 0; t < cfg.max_iterations; ++t) {
        sink.begin_iteration();
        const double a =
            interpolate_coefficient(cfg.gwo.a_start, cfg.gwo.a_end, t, cfg.max_iterations);

        for (Wolf& w : pack) {
            KeyVector sum(static_cast<std::size_t>(n), 0.0);
            for (const Wolf& leader : leaders) {
                // Fresh stochastic vectors for every leader pull.
                const KeyVector r1 = random_keys(n, rng);
                const KeyVector r2 = random_keys(n, rng);
                const KeyVector pulled = gwo_encircle(leader.keys, w.keys, a, r1, r2);
                for (std::size_t d = 0; d < sum.size(); ++d) sum[d] += pulled[d];
            }
            for (double& v : sum) v /= 3.0;
            w.keys = std::move(sum);
            sink.charge();
            w.cost_value = cost(inst, decode_keys(w.keys));
        }

        // Re-rank leaders and moved pack together; leaders listed first so a
        // tie keeps the old hierarchy (stable sort).
        all.clear();
        all.insert(all.end(), leaders.begin(), leaders.end());
        all.insert(all.end(), pack.begin(), pack.end());
        sort_by_cost(all);
        leaders.assign(all.begin(), all.begin() + 3);
        pack.assign(all.begin() + 3, all.end());

        detail::CandidateSet cs;
        for (const Wolf& w : all) cs.add(w.cost_value);
        sink.record(t, leaders.front().cost_value, cs);
    }
    return detail::finish(decode_keys(leaders.front().keys), leaders.front().cost_value,
                          std::move(sink));
}

} // namespace qapbench
