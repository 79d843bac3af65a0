#include "qapbench/solver_config.hpp"

#include <sstream>
#include <vector>

namespace qapbench {

std::string_view algorithm_name(Algorithm a) {
    switch (a) {
    case Algorithm::Lsh: return "lsh";
    case Algorithm::Ga: return "ga";
    case Algorithm::Pso: return "pso";
    case Algorithm::GaPso: return "ga-pso";
    case Algorithm::Gwo: return "gwo";
    case Algorithm::Hs: return "hs";
    case Algorithm::Sa: return "sa";
    }
    return "?";
}

std::optional<Algorithm> algorithm_from_name(std::string_view name) {
    for (Algorithm a : kAllAlgorithms)
        if (name == algorithm_name(a)) return a;
    if (name == "gapso" || name == "ga_pso") return Algorithm::GaPso;
    return std::nullopt;
}

void validate(const SolverConfig& cfg) {
    std::vector<std::string> bad;
    auto check = [&](bool ok, const char* what) {
        if (!ok) bad.emplace_back(what);
    };

    check(cfg.max_iterations >= 1, "max_iterations must be >= 1");
    check(cfg.population_size >= 1, "population_size must be >= 1");
    if (cfg.algorithm == Algorithm::Gwo)
        check(cfg.population_size >= 4, "gwo needs population_size >= 4 (3 leaders + pack)");

    auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    check(unit(cfg.ga.crossover_rate), "ga.crossover_rate must be in [0,1]");
    check(unit(cfg.ga.mutation_rate), "ga.mutation_rate must be in [0,1]");
    double mix_sum = 0.0;
    bool mix_ok = true;
    for (double w : cfg.ga.mutation_mix) {
        if (w < 0.0) mix_ok = false;
        mix_sum += w;
    }
    check(mix_ok && mix_sum > 0.0, "ga.mutation_mix must be non-negative with positive sum");

    check(unit(cfg.pso.inertia), "pso.inertia must be in [0,1]");
    check(cfg.pso.c1_start >= 0.0 && cfg.pso.c2_start >= 0.0 && cfg.pso.c1_end >= 0.0 &&
              cfg.pso.c2_end >= 0.0,
          "pso coefficients must be non-negative");
    check(cfg.pso.c1_end <= cfg.pso.c1_start, "pso.c1_end must not exceed c1_start");
    check(cfg.pso.c2_end <= cfg.pso.c2_start, "pso.c2_end must not exceed c2_start");

    check(cfg.gwo.a_start >= cfg.gwo.a_end && cfg.gwo.a_end >= 0.0,
          "gwo.a must decrease and stay non-negative");

    check(cfg.hs.hms >= 1, "hs.hms must be >= 1");
    check(unit(cfg.hs.hmcr), "hs.hmcr must be in [0,1]");
    check(unit(cfg.hs.par), "hs.par must be in [0,1]");
    check(cfg.hs.bandwidth >= 0.0, "hs.bandwidth must be non-negative");

    check(cfg.sa.t0_acceptance_ratio > 0.0 && cfg.sa.t0_acceptance_ratio < 1.0,
          "sa.t0_acceptance_ratio must be in (0,1)");
    check(cfg.sa.cooling_alpha > 0.0 && cfg.sa.cooling_alpha < 1.0,
          "sa.cooling_alpha must be in (0,1)");
    check(cfg.sa.moves_per_temperature >= 1, "sa.moves_per_temperature must be >= 1");

    if (!bad.empty()) {
        std::ostringstream msg;
        msg << "invalid solver config (" << bad.size() << " problem" << (bad.size() > 1 ? "s" : "")
            << "): ";
        for (std::size_t i = 0; i < bad.size(); ++i) {
            if (i) msg << "; ";
            msg << bad[i];
        }
        throw ConfigError(msg.str());
    }
}

double interpolate_coefficient(double start, double end, int iteration, int max_iterations) {
    if (max_iterations <= 1) return start;
    return start + (end - start) * static_cast<double>(iteration) /
                       static_cast<double>(max_iterations - 1);
}

namespace {

enum class Band { Small, Medium, Large };

Band band_of(int n) {
    if (n <= 30) return Band::Small;
    if (n <= 60) return Band::Medium;
    return Band::Large;
}

} // namespace

SolverConfig default_config(Algorithm algorithm, int instance_size) {
    const Band band = band_of(instance_size);
    SolverConfig cfg;
    cfg.algorithm = algorithm;

    switch (algorithm) {
    case Algorithm::Lsh:
        cfg.max_iterations = band == Band::Small ? 600 : band == Band::Medium ? 800 : 1000;
        cfg.population_size = 1;
        break;
    case Algorithm::Ga:
        cfg.population_size = band == Band::Small ? 60 : band == Band::Medium ? 80 : 100;
        cfg.max_iterations = band == Band::Small ? 400 : band == Band::Medium ? 600 : 800;
        cfg.ga.crossover_rate = 0.9;
        cfg.ga.mutation_rate = 0.3;
        break;
    case Algorithm::Pso:
    case Algorithm::GaPso:
        cfg.population_size = band == Band::Small ? 40 : band == Band::Medium ? 60 : 80;
        cfg.max_iterations = band == Band::Small ? 400 : band == Band::Medium ? 600 : 800;
        break;
    case Algorithm::Gwo:
        cfg.population_size = band == Band::Small ? 40 : band == Band::Medium ? 60 : 80;
        cfg.max_iterations = band == Band::Small ? 400 : band == Band::Medium ? 600 : 800;
        break;
    case Algorithm::Hs:
        cfg.population_size = 30;
        cfg.hs.hms = 30;
        cfg.max_iterations = band == Band::Small ? 5000 : band == Band::Medium ? 8000 : 12000;
        break;
    case Algorithm::Sa:
        cfg.population_size = 1;
        cfg.max_iterations = band == Band::Small ? 250 : band == Band::Medium ? 300 : 350;
        cfg.sa.moves_per_temperature =
            band == Band::Small ? 1500 : band == Band::Medium ? 3000 : 6000;
        break;
    }
    return cfg;
}

} // namespace qapbench
