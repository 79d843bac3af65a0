#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "qapbench/errors.hpp"

namespace qapbench {

enum class Algorithm { Lsh, Ga, Pso, GaPso, Gwo, Hs, Sa };

inline constexpr std::array<Algorithm, 7> kAllAlgorithms = {
    Algorithm::Lsh, Algorithm::Ga,  Algorithm::Pso, Algorithm::GaPso,
    Algorithm::Gwo, Algorithm::Hs, Algorithm::Sa};

std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> algorithm_from_name(std::string_view name);

struct GaParams {
    double crossover_rate = 0.9;
    double mutation_rate = 0.2;
    std::array<double, 3> mutation_mix = {1.0, 1.0, 1.0}; ///< ISM, IVM, EM weights
};

struct PsoParams {
    double inertia = 0.7;
    double c1_start = 2.0;
    double c1_end = 0.5;
    double c2_start = 2.0;
    double c2_end = 0.5;
};

struct GwoParams {
    double a_start = 2.0;
    double a_end = 0.0;
};

struct HsParams {
    int hms = 30;          ///< harmony memory size
    double hmcr = 0.9;     ///< memory consideration rate
    double par = 0.3;      ///< pitch adjustment rate
    double bandwidth = 0.05;
};

struct SaParams {
    double t0_acceptance_ratio = 0.8; ///< target initial uphill acceptance, in (0,1)
    double cooling_alpha = 0.95;
    int moves_per_temperature = 1000;
};

struct SolverConfig {
    Algorithm algorithm = Algorithm::Lsh;
    int max_iterations = 100;
    int population_size = 30;
    std::uint64_t seed = 1;
    GaParams ga;
    PsoParams pso;
    GwoParams gwo;
    HsParams hs;
    SaParams sa;
    /// Use the virtual work-unit clock for lambda instead of wall time.
    bool deterministic_time = false;
};

/// Throws ConfigError listing every violated constraint (not just the first).
void validate(const SolverConfig& cfg);

/// Tuned defaults for the given algorithm and instance size. Size bands:
/// n <= 30, 31..60, and larger. Mirrored by configs/defaults.json.
SolverConfig default_config(Algorithm algorithm, int instance_size);

/// Coefficient schedule used by PSO/GA-PSO (c1, c2) and GWO (a): linear from
/// start at iteration 0 to end at iteration max_iterations-1; start when
/// max_iterations == 1.
double interpolate_coefficient(double start, double end, int iteration, int max_iterations);

} // namespace qapbench
