#include "common.hpp"

namespace qapbench {

SolverResult run(const QapInstance& inst, const SolverConfig& cfg, const TraceObserver& observer) {
    validate(cfg);
    Rng rng(cfg.seed);
    switch (cfg.algorithm) {
    case Algorithm::Lsh: return run_lsh(inst, cfg, rng, observer);
    case Algorithm::Ga: return run_ga(inst, cfg, rng, observer);
    case Algorithm::Pso: return run_pso(inst, cfg, rng, observer);
    case Algorithm::GaPso: return run_ga_pso(inst, cfg, rng, observer);
    case Algorithm::Gwo: return run_gwo(inst, cfg, rng, observer);
    case Algorithm::Hs: return run_hs(inst, cfg, rng, observer);
    case Algorithm::Sa: return run_sa(inst, cfg, rng, observer);
    }
    throw ConfigError("run: unknown algorithm tag");
}

} // namespace qapbench
