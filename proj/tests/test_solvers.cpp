#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "qapbench/metrics.hpp"
#include "qapbench/solvers.hpp"
#include "support/oracles.hpp"

using namespace qapbench;

namespace {

SolverConfig small_config(Algorithm a, std::uint64_t seed) {
    SolverConfig cfg = default_config(a, 6);
    cfg.algorithm = a;
    cfg.seed = seed;
    cfg.deterministic_time = true;
    cfg.max_iterations = 60;
    if (a == Algorithm::Hs) cfg.max_iterations = 400;
    if (a == Algorithm::Sa) cfg.sa.moves_per_temperature = 60;
    return cfg;
}

std::vector<Cost> best_so_far(const SolverResult& r) {
    std::vector<Cost> out;
    Cost best = r.trace.front().best;
    for (const IterationTrace& rec : r.trace) {
        best = std::min(best, rec.best);
        out.push_back(best);
    }
    return out;
}

} // namespace

TEST_CASE("run validates configuration before dispatch") {
    const QapInstance inst = random_instance(5, 20, 1);
    SolverConfig cfg = default_config(Algorithm::Lsh, 5);
    cfg.max_iterations = 0;
    CHECK_THROWS_AS(run(inst, cfg), ConfigError);
    cfg.max_iterations = 10;
    cfg.sa.cooling_alpha = 1.5;
    CHECK_THROWS_AS(run(inst, cfg), ConfigError);
}

TEST_CASE("validate lists every violation at once") {
    SolverConfig cfg;
    cfg.max_iterations = 0;
    cfg.ga.crossover_rate = 2.0;
    cfg.sa.moves_per_temperature = 0;
    try {
        validate(cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("max_iterations") != std::string::npos);
        CHECK(msg.find("crossover_rate") != std::string::npos);
        CHECK(msg.find("moves_per_temperature") != std::string::npos);
    }
}

TEST_CASE("identical seeds reproduce identical traces; different seeds differ") {
    const QapInstance inst = random_instance(8, 40, 7);
    for (Algorithm a : kAllAlgorithms) {
        CAPTURE(algorithm_name(a));
        const SolverResult r1 = run(inst, small_config(a, 99));
        const SolverResult r2 = run(inst, small_config(a, 99));
        REQUIRE(r1.trace.size() == r2.trace.size());
        CHECK(r1.best_cost == r2.best_cost);
        CHECK(r1.best_assignment == r2.best_assignment);
        for (std::size_t s = 0; s < r1.trace.size(); ++s) {
            CHECK(r1.trace[s].best == r2.trace[s].best);
            CHECK(r1.trace[s].mean == r2.trace[s].mean);
            CHECK(r1.trace[s].worst == r2.trace[s].worst);
            CHECK(r1.trace[s].lambda == r2.trace[s].lambda);
        }
    }
}

TEST_CASE("observer fires once per iteration with consistent records") {
    const QapInstance inst = random_instance(6, 30, 9);
    for (Algorithm a : kAllAlgorithms) {
        CAPTURE(algorithm_name(a));
        int calls = 0;
        const SolverResult r = run(inst, small_config(a, 5), [&](const IterationTrace& rec) {
            CHECK(rec.iteration == calls);
            CHECK(rec.best <= static_cast<Cost>(rec.mean + 1e-9));
            CHECK(static_cast<double>(rec.worst) >= rec.mean - 1e-9);
            CHECK(rec.lambda >= 0.0);
            ++calls;
        });
        CHECK(calls == r.iterations_run);
        CHECK(static_cast<std::size_t>(calls) == r.trace.size());
    }
}

TEST_CASE("every algorithm agrees with its own trace and the evaluator") {
    const QapInstance inst = random_instance(7, 35, 21);
    for (Algorithm a : kAllAlgorithms) {
        CAPTURE(algorithm_name(a));
        const SolverResult r = run(inst, small_config(a, 31));
        CHECK(is_permutation(r.best_assignment, inst.n));
        CHECK(r.best_cost == cost(inst, r.best_assignment));
        Cost trace_min = r.trace.front().best;
        for (const IterationTrace& rec : r.trace) trace_min = std::min(trace_min, rec.best);
        CHECK(r.best_cost == trace_min);
        double lambda_sum = 0.0;
        for (const IterationTrace& rec : r.trace) lambda_sum += rec.lambda;
        CHECK(r.wall_time == doctest::Approx(lambda_sum));
    }
}

TEST_CASE("best-so-far series is non-increasing for every algorithm") {
    const QapInstance inst = random_instance(9, 45, 3);
    for (Algorithm a : kAllAlgorithms) {
        CAPTURE(algorithm_name(a));
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const std::vector<Cost> series = best_so_far(run(inst, small_config(a, seed)));
            CHECK(std::is_sorted(series.rbegin(), series.rend()));
        }
    }
}

TEST_CASE("trace best column is itself monotone for the incumbent-reporting algorithms") {
    const QapInstance inst = random_instance(8, 40, 17);
    for (Algorithm a : {Algorithm::Lsh, Algorithm::Ga, Algorithm::Pso, Algorithm::GaPso,
                        Algorithm::Gwo, Algorithm::Hs}) {
        CAPTURE(algorithm_name(a));
        const SolverResult r = run(inst, small_config(a, 23));
        for (std::size_t s = 1; s < r.trace.size(); ++s)
            CHECK(r.trace[s].best <= r.trace[s - 1].best);
    }
}

TEST_CASE("no algorithm reports a cost below the brute-force optimum") {
    const QapInstance inst = random_instance(6, 30, 55);
    const Cost optimum = brute_force(inst).cost;
    for (Algorithm a : kAllAlgorithms) {
        CAPTURE(algorithm_name(a));
        const SolverResult r = run(inst, small_config(a, 8));
        CHECK(r.best_cost >= optimum);
        for (const IterationTrace& rec : r.trace) CHECK(rec.best >= optimum);
    }
}

TEST_CASE("lsh on a two-facility instance returns the optimum after one scan") {
    const QapInstance inst = parse_qaplib("2\n0 1\n1 0\n0 3\n3 0");
    SolverConfig cfg = small_config(Algorithm::Lsh, 4);
    cfg.max_iterations = 1;
    const SolverResult r = run(inst, cfg);
    CHECK(r.best_cost == 6);
}

TEST_CASE("lsh results have no improving single swap") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const QapInstance inst = random_instance(7, 30, 400 + seed);
        SolverConfig cfg = small_config(Algorithm::Lsh, seed);
        cfg.max_iterations = 120;
        const SolverResult r = run(inst, cfg);
        CHECK(oracle::is_swap_local_optimal(inst, r.best_assignment));
    }
}

TEST_CASE("lsh finds the optimum on most small seeds and never beats it") {
    int hits = 0;
    const QapInstance inst = random_instance(6, 25, 606);
    const Cost optimum = brute_force(inst).cost;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SolverConfig cfg = small_config(Algorithm::Lsh, seed);
        cfg.max_iterations = 100;
        const SolverResult r = run(inst, cfg);
        REQUIRE(r.best_cost >= optimum);
        if (r.best_cost == optimum) ++hits;
    }
    CHECK(hits >= 14); // "large majority" of 20 seeds
}

TEST_CASE("ga with a single frozen individual yields a constant trace") {
    const QapInstance inst = random_instance(6, 30, 12);
    SolverConfig cfg = small_config(Algorithm::Ga, 3);
    cfg.population_size = 1;
    cfg.ga.crossover_rate = 0.0;
    cfg.ga.mutation_rate = 0.0;
    const SolverResult r = run(inst, cfg);
    for (const IterationTrace& rec : r.trace) {
        CHECK(rec.best == r.trace.front().best);
        CHECK(rec.worst == rec.best);
        CHECK(rec.mean == static_cast<double>(rec.best));
    }
}

TEST_CASE("ga closes most of the gap to the optimum at desk scale") {
    const QapInstance inst = random_instance(6, 30, 777);
    const Cost optimum = brute_force(inst).cost;
    std::vector<double> ratios;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        SolverConfig cfg = small_config(Algorithm::Ga, seed);
        cfg.max_iterations = 200;
        cfg.population_size = 30;
        const SolverResult r = run(inst, cfg);
        ratios.push_back(static_cast<double>(r.best_cost) / static_cast<double>(optimum));
    }
    std::sort(ratios.begin(), ratios.end());
    CHECK(ratios[ratios.size() / 2] <= 1.05); // median within 5%
}

TEST_CASE("pso coefficients follow the linear schedule exactly") {
    CHECK(interpolate_coefficient(2.0, 0.5, 0, 11) == 2.0);
    CHECK(interpolate_coefficient(2.0, 0.5, 10, 11) == 0.5);
    CHECK(interpolate_coefficient(2.0, 0.5, 5, 11) == doctest::Approx(1.25));
    CHECK(interpolate_coefficient(2.0, 0.5, 0, 1) == 2.0); // degenerate budget
    CHECK(interpolate_coefficient(2.0, 2.0, 3, 7) == 2.0); // constant schedule
}

TEST_CASE("single-particle swarm at its own best never moves") {
    const QapInstance inst = random_instance(5, 20, 40);
    SolverConfig cfg = small_config(Algorithm::Pso, 6);
    cfg.population_size = 1;
    const SolverResult r = run(inst, cfg);
    for (const IterationTrace& rec : r.trace) {
        CHECK(rec.best == r.trace.front().best);
        CHECK(rec.worst == rec.best); // the lone particle is pinned at its best
    }
}

TEST_CASE("pso global best cost is non-increasing") {
    const QapInstance inst = random_instance(8, 40, 41);
    const SolverResult r = run(inst, small_config(Algorithm::Pso, 77));
    for (std::size_t s = 1; s < r.trace.size(); ++s)
        CHECK(r.trace[s].best <= r.trace[s - 1].best);
}

TEST_CASE("ga-pso equals pso step-for-step when no mutant can improve") {
    // All-zero flow makes every assignment cost 0, so strict-improvement
    // acceptance never fires and the hybrid must replay the plain swarm.
    QapInstance inst = random_instance(7, 30, 42);
    inst.flow = SquareMatrix(7, 0);
    const SolverResult pso = run(inst, small_config(Algorithm::Pso, 11));
    SolverConfig hybrid_cfg = small_config(Algorithm::GaPso, 11);
    const SolverResult hybrid = run(inst, hybrid_cfg);
    REQUIRE(pso.trace.size() == hybrid.trace.size());
    for (std::size_t s = 0; s < pso.trace.size(); ++s) {
        CHECK(pso.trace[s].best == hybrid.trace[s].best);
        CHECK(pso.trace[s].mean == hybrid.trace[s].mean);
        CHECK(pso.trace[s].worst == hybrid.trace[s].worst);
    }
    CHECK(pso.best_assignment == hybrid.best_assignment);
}

TEST_CASE("ga-pso improves on pso for at least half the paired seeds") {
    const QapInstance inst = random_instance(6, 30, 4242);
    int not_worse = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const SolverResult pso = run(inst, small_config(Algorithm::Pso, seed));
        const SolverResult hybrid = run(inst, small_config(Algorithm::GaPso, seed));
        if (hybrid.best_cost <= pso.best_cost) ++not_worse;
    }
    CHECK(not_worse >= 15);
}

TEST_CASE("gwo_encircle collapses onto the leader when a=0 and C=1") {
    const KeyVector leader = {0.2, 0.9, 0.4};
    const KeyVector x = {0.7, 0.1, 0.5};
    const KeyVector r1 = {0.3, 0.8, 0.6}; // irrelevant at a=0
    const KeyVector r2 = {0.5, 0.5, 0.5}; // C = 2*r2 = 1
    CHECK(gwo_encircle(leader, x, 0.0, r1, r2) == leader);
}

TEST_CASE("gwo alpha cost is non-increasing and leads the trace") {
    const QapInstance inst = random_instance(8, 40, 50);
    const SolverResult r = run(inst, small_config(Algorithm::Gwo, 51));
    for (std::size_t s = 1; s < r.trace.size(); ++s)
        CHECK(r.trace[s].best <= r.trace[s - 1].best);
}

TEST_CASE("gwo requires at least four wolves") {
    SolverConfig cfg = default_config(Algorithm::Gwo, 6);
    cfg.population_size = 3;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("hs with a single locked harmony never changes") {
    const QapInstance inst = random_instance(6, 30, 60);
    SolverConfig cfg = small_config(Algorithm::Hs, 61);
    cfg.hs.hms = 1;
    cfg.hs.hmcr = 1.0;
    cfg.hs.par = 0.0;
    cfg.max_iterations = 50;
    const SolverResult r = run(inst, cfg);
    for (const IterationTrace& rec : r.trace) {
        CHECK(rec.best == r.trace.front().best);
        CHECK(rec.worst == rec.best);
    }
}

TEST_CASE("hs memory worst cost is non-increasing") {
    const QapInstance inst = random_instance(7, 35, 62);
    const SolverResult r = run(inst, small_config(Algorithm::Hs, 63));
    for (std::size_t s = 1; s < r.trace.size(); ++s)
        CHECK(r.trace[s].worst <= r.trace[s - 1].worst);
}

TEST_CASE("hs keys stay finite and decodable over long runs") {
    const QapInstance inst = random_instance(5, 25, 64);
    SolverConfig cfg = small_config(Algorithm::Hs, 65);
    cfg.max_iterations = 10000;
    const SolverResult r = run(inst, cfg); // decode_keys throws on non-finite keys
    CHECK(r.iterations_run == 10000);
    CHECK(is_permutation(r.best_assignment, 5));
}

TEST_CASE("metropolis acceptance matches the formula") {
    CHECK(metropolis_acceptance(0, 2.0) == 1.0);
    CHECK(metropolis_acceptance(-5, 2.0) == 1.0);
    const double p = metropolis_acceptance(3, 2.0);
    CHECK(p == doctest::Approx(std::exp(-1.5)));
    CHECK(p > 0.0);
    CHECK(p < 1.0);
    CHECK(metropolis_acceptance(1, 0.0) == 0.0);
}

TEST_CASE("sa at near-zero temperature descends to a swap-local optimum") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const QapInstance inst = random_instance(6, 30, 500 + seed);
        SolverConfig cfg = small_config(Algorithm::Sa, seed);
        cfg.sa.t0_acceptance_ratio = 1e-12; // freezes uphill moves immediately
        cfg.sa.moves_per_temperature = 200;
        cfg.max_iterations = 40;
        const SolverResult r = run(inst, cfg);
        CHECK(oracle::is_swap_local_optimal(inst, r.best_assignment));
    }
}

TEST_CASE("sa closes in on the optimum at desk scale") {
    const QapInstance inst = random_instance(6, 30, 888);
    const Cost optimum = brute_force(inst).cost;
    std::vector<double> ratios;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        SolverConfig cfg = small_config(Algorithm::Sa, seed);
        cfg.max_iterations = 80;
        cfg.sa.moves_per_temperature = 150;
        const SolverResult r = run(inst, cfg);
        ratios.push_back(static_cast<double>(r.best_cost) / static_cast<double>(optimum));
    }
    std::sort(ratios.begin(), ratios.end());
    CHECK(ratios[ratios.size() / 2] <= 1.02); // median within 2%
}

TEST_CASE("sa calibration hits the requested acceptance ratio on average") {
    const QapInstance inst = random_instance(10, 50, 70);
    Rng rng(71);
    const Assignment start = random_assignment(10, rng);
    const double t0 = calibrate_initial_temperature(inst, start, 0.8, rng);
    CHECK(t0 > 0.0);
    // An average uphill move at T0 is accepted with probability ~0.8.
    Rng probe(72);
    double uphill_sum = 0.0;
    int uphill = 0;
    for (int s = 0; s < 2000; ++s) {
        auto [i, j] = probe.next_distinct_pair(10);
        const Cost d = swap_delta(inst, start, i, j);
        if (d > 0) {
            uphill_sum += static_cast<double>(d);
            ++uphill;
        }
    }
    const double mean_uphill = uphill_sum / uphill;
    CHECK(metropolis_acceptance(static_cast<Cost>(mean_uphill), t0) == doctest::Approx(0.8).epsilon(0.1));
}

TEST_CASE("deterministic clock charges work units; real clock measures time") {
    const QapInstance inst = random_instance(6, 30, 73);
    SolverConfig cfg = small_config(Algorithm::Lsh, 74);
    cfg.max_iterations = 5;
    const SolverResult det = run(inst, cfg);
    // Every lambda is a whole number of 1e-6 s work units covering at least
    // one full 15-pair descent pass, and the wall time is their exact sum.
    double lambda_sum = 0.0;
    for (const IterationTrace& rec : det.trace) {
        const auto units = std::llround(rec.lambda * 1e6);
        CHECK(std::abs(rec.lambda - static_cast<double>(units) * 1e-6) < 1e-15);
        CHECK(units >= 15);
        lambda_sum += rec.lambda;
    }
    CHECK(det.wall_time == lambda_sum);
    const SolverResult again = run(inst, cfg);
    for (std::size_t s = 0; s < det.trace.size(); ++s)
        CHECK(again.trace[s].lambda == det.trace[s].lambda);
    cfg.deterministic_time = false;
    const SolverResult real = run(inst, cfg);
    for (const IterationTrace& rec : real.trace) CHECK(rec.lambda >= 0.0);
}
