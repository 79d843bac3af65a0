#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "qapbench/convergence.hpp"

using namespace qapbench;

namespace {

std::vector<IterationTrace> trace_from_bests(const std::vector<Cost>& bests) {
    std::vector<IterationTrace> t;
    for (std::size_t s = 0; s < bests.size(); ++s)
        t.push_back({static_cast<int>(s), bests[s], static_cast<double>(bests[s]), bests[s], 1e-6});
    return t;
}

} // namespace

TEST_CASE("constant series converges after exactly window + target steps") {
    DetectorSettings cfg;
    cfg.window = 5;
    cfg.delta = 0.01;
    cfg.target = 3;
    StrongConvergenceDetector det(cfg);
    std::vector<int> increments_at;
    for (int i = 1; i <= 20; ++i) {
        const int before = det.k();
        det.step(100.0);
        if (det.k() > before) increments_at.push_back(i);
        if (det.converged()) break;
    }
    CHECK(increments_at == std::vector<int>{6, 7, 8});
    CHECK(det.converged());
    REQUIRE(det.trigger_iteration().has_value());
    CHECK(*det.trigger_iteration() == 8); // window + target
    CHECK(det.k() == 3);
}

TEST_CASE("detector defaults") {
    const DetectorSettings cfg;
    CHECK(cfg.window == 50);
    CHECK(cfg.delta == doctest::Approx(1e-3));
    CHECK(cfg.target == 10);
}

TEST_CASE("geometric decay converges as soon as full windows exist") {
    // 1000 * 0.9^t has the same window CV everywhere (CV is scale-free), so
    // the max-min gap stays at floating-point noise.
    DetectorSettings cfg;
    cfg.window = 10;
    cfg.delta = 1e-6;
    cfg.target = 4;
    StrongConvergenceDetector det(cfg);
    double v = 1000.0;
    int steps = 0;
    while (!det.converged() && steps < 200) {
        det.step(v);
        v *= 0.9;
        ++steps;
    }
    CHECK(det.converged());
    REQUIRE(det.trigger_iteration().has_value());
    CHECK(*det.trigger_iteration() == cfg.window + cfg.target);
}

TEST_CASE("alternating series never accumulates k") {
    DetectorSettings cfg;
    cfg.window = 5;
    cfg.delta = 0.01;
    cfg.target = 3;
    StrongConvergenceDetector det(cfg);
    for (int i = 0; i < 200; ++i) det.step(i % 2 == 0 ? 100.0 : 200.0);
    CHECK_FALSE(det.converged());
    CHECK(det.k() == 0);
}

TEST_CASE("k accumulates without reset across rough patches") {
    DetectorSettings cfg;
    cfg.window = 4;
    cfg.delta = 0.05;
    cfg.target = 6;
    StrongConvergenceDetector det(cfg);
    // Two flat stretches separated by a spike. While the spike sits inside
    // some-but-not-all windows the gap is large and scoring pauses, but the
    // credit earned before it is never erased.
    for (int i = 0; i < 8; ++i) det.step(50.0);
    const int mid = det.k();
    CHECK(mid > 0);
    det.step(500.0);
    for (int i = 0; i < 30 && !det.converged(); ++i) det.step(50.0);
    CHECK(det.converged());
    CHECK(det.k() >= mid);
}

TEST_CASE("detector is invariant under power-of-two rescaling") {
    std::mt19937_64 gen(20260814u);
    std::uniform_real_distribution<double> jit(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        DetectorSettings cfg;
        cfg.window = 6;
        cfg.delta = 0.02;
        cfg.target = 5;
        StrongConvergenceDetector a(cfg), b(cfg);
        const double scale = 4.0; // exact in floating point
        double v = 900.0 + 200.0 * jit(gen);
        for (int i = 1; i <= 120; ++i) {
            v = v * 0.97 + 3.0 * jit(gen);
            a.step(v);
            b.step(v * scale);
            CHECK(a.k() == b.k());
        }
        CHECK(a.converged() == b.converged());
        CHECK(a.trigger_iteration().value_or(-1) == b.trigger_iteration().value_or(-1));
    }
}

TEST_CASE("detector rejects bad settings and negative costs") {
    DetectorSettings cfg;
    cfg.window = 0;
    CHECK_THROWS_AS(StrongConvergenceDetector{cfg}, ConfigError);
    cfg.window = 5;
    cfg.delta = 0.0;
    CHECK_THROWS_AS(StrongConvergenceDetector{cfg}, ConfigError);
    cfg.delta = 0.01;
    cfg.target = 0;
    CHECK_THROWS_AS(StrongConvergenceDetector{cfg}, ConfigError);
    cfg.target = 3;
    StrongConvergenceDetector det(cfg);
    CHECK_THROWS_AS(det.step(-1.0), ContractError);
}

TEST_CASE("all-zero series counts as perfectly stable") {
    DetectorSettings cfg;
    cfg.window = 4;
    cfg.delta = 0.01;
    cfg.target = 2;
    StrongConvergenceDetector det(cfg);
    for (int i = 0; i < 10 && !det.converged(); ++i) det.step(0.0);
    CHECK(det.converged());
    CHECK(*det.trigger_iteration() == 6);
}

TEST_CASE("detect_convergence snapshots the state at the trigger") {
    DetectorSettings cfg;
    cfg.window = 3;
    cfg.delta = 0.01;
    cfg.target = 2;
    const std::vector<Cost> bests = {90, 80, 70, 70, 70, 70, 70, 70};
    const ConvergenceReport rep = detect_convergence(trace_from_bests(bests), cfg);
    CHECK(rep.converged);
    // Windows stabilize once the decaying prefix has left all of them.
    CHECK(rep.k_final == cfg.target);
    REQUIRE(rep.trigger_iteration.has_value());
    CHECK(*rep.trigger_iteration == 8);
    REQUIRE(rep.iterations.has_value());
    CHECK(rep.iterations->mean == doctest::Approx(8.0));
    CHECK(rep.best_objective.mean == doctest::Approx(70.0));
    CHECK(rep.best_objective.max == rep.best_objective.min);
    REQUIRE(rep.run_time.has_value());
    CHECK(rep.run_time->mean == doctest::Approx(8e-6)); // lambda sum through the trigger
    CHECK(rep.replications == 1);
    CHECK(rep.converged_count == 1);
}

TEST_CASE("non-converged trace reports objective but no trigger blocks") {
    DetectorSettings cfg;
    cfg.window = 5;
    cfg.delta = 0.001;
    cfg.target = 3;
    std::vector<Cost> bests;
    for (int i = 0; i < 40; ++i) bests.push_back(i % 2 == 0 ? 400 : 900);
    const ConvergenceReport rep = detect_convergence(trace_from_bests(bests), cfg);
    CHECK_FALSE(rep.converged);
    CHECK_FALSE(rep.trigger_iteration.has_value());
    CHECK_FALSE(rep.iterations.has_value());
    CHECK_FALSE(rep.run_time.has_value());
    CHECK(rep.best_objective.mean == doctest::Approx(400.0)); // best-so-far at budget
    CHECK(rep.converged_count == 0);
}

TEST_CASE("table2_summary over one replication collapses each block") {
    DetectorSettings cfg;
    cfg.window = 3;
    cfg.delta = 0.01;
    cfg.target = 2;
    const std::vector<Cost> bests = {100, 100, 100, 100, 100, 100};
    const ConvergenceReport one = detect_convergence(trace_from_bests(bests), cfg);
    const std::vector<ConvergenceReport> reps = {one};
    const ConvergenceReport agg = table2_summary(reps);
    CHECK(agg.replications == 1);
    CHECK(agg.best_objective.max == agg.best_objective.min);
    CHECK(agg.best_objective.mean == doctest::Approx(100.0));
    REQUIRE(agg.iterations.has_value());
    CHECK(agg.iterations->max == agg.iterations->min);
    CHECK(agg.converged);
    CHECK(agg.k_final == one.k_final);
}

TEST_CASE("table2_summary aggregates a three-replication group") {
    // Three replications settling at {2950, 4375, 4550} after different
    // warmups, all converging. The tight delta keeps the steady warmup ramp
    // (whose window CV is nearly constant) from counting as stable.
    DetectorSettings cfg;
    cfg.window = 4;
    cfg.delta = 1e-9;
    cfg.target = 3;
    auto make_rep = [&](Cost settle, int warmup) {
        std::vector<Cost> bests;
        for (int i = 0; i < warmup; ++i) bests.push_back(settle + 40 * (warmup - i));
        for (int i = 0; i < 30; ++i) bests.push_back(settle);
        return detect_convergence(trace_from_bests(bests), cfg);
    };
    const std::vector<ConvergenceReport> reps = {make_rep(2950, 2), make_rep(4375, 5),
                                                 make_rep(4550, 9)};
    for (const ConvergenceReport& r : reps) REQUIRE(r.converged);
    const ConvergenceReport agg = table2_summary(reps);
    CHECK(agg.replications == 3);
    CHECK(agg.best_objective.min == doctest::Approx(2950.0));
    CHECK(agg.best_objective.max == doctest::Approx(4550.0));
    CHECK(agg.best_objective.mean == doctest::Approx((2950.0 + 4375.0 + 4550.0) / 3.0));
    CHECK(agg.converged);
    REQUIRE(agg.iterations.has_value());
    CHECK(agg.iterations->min <= agg.iterations->mean);
    CHECK(agg.iterations->mean <= agg.iterations->max);
    REQUIRE(agg.run_time.has_value());
    // Aggregate k is the weakest replication's count; the trigger the latest.
    int min_k = reps[0].k_final;
    int max_trigger = *reps[0].trigger_iteration;
    double iter_sum = 0.0;
    for (const ConvergenceReport& r : reps) {
        min_k = std::min(min_k, r.k_final);
        max_trigger = std::max(max_trigger, *r.trigger_iteration);
        iter_sum += static_cast<double>(*r.trigger_iteration);
    }
    CHECK(agg.k_final == min_k);
    REQUIRE(agg.trigger_iteration.has_value());
    CHECK(*agg.trigger_iteration == max_trigger);
    CHECK(agg.iterations->mean == doctest::Approx(iter_sum / 3.0));
}

TEST_CASE("table2_summary excludes non-converged reps from trigger blocks only") {
    DetectorSettings cfg;
    cfg.window = 3;
    cfg.delta = 0.01;
    cfg.target = 2;
    const std::vector<Cost> flat(12, 500);
    std::vector<Cost> noisy;
    for (int i = 0; i < 12; ++i) noisy.push_back(i % 2 == 0 ? 300 : 800);
    const ConvergenceReport good = detect_convergence(trace_from_bests(flat), cfg);
    const ConvergenceReport bad = detect_convergence(trace_from_bests(noisy), cfg);
    REQUIRE(good.converged);
    REQUIRE_FALSE(bad.converged);
    const std::vector<ConvergenceReport> reps = {good, bad};
    const ConvergenceReport agg = table2_summary(reps);
    CHECK_FALSE(agg.converged);
    CHECK(agg.converged_count == 1);
    CHECK(agg.best_objective.min == doctest::Approx(300.0)); // objectives cover all reps
    CHECK(agg.best_objective.max == doctest::Approx(500.0));
    REQUIRE(agg.iterations.has_value()); // from the converged rep alone
    CHECK(agg.iterations->min == agg.iterations->max);
    CHECK(agg.k_final == std::min(good.k_final, bad.k_final));
    CHECK_FALSE(agg.trigger_iteration.has_value());
}

TEST_CASE("table2_summary rejects empty input and mismatched settings") {
    const std::vector<ConvergenceReport> none;
    CHECK_THROWS_AS(table2_summary(none), InsufficientDataError);
    DetectorSettings a, b;
    b.window = 20;
    const std::vector<Cost> flat(80, 10);
    const ConvergenceReport ra = detect_convergence(trace_from_bests(flat), a);
    const ConvergenceReport rb = detect_convergence(trace_from_bests(flat), b);
    const std::vector<ConvergenceReport> mixed = {ra, rb};
    CHECK_THROWS_AS(table2_summary(mixed), ContractError);
}

TEST_CASE("detect_convergence accepts traces shorter than a window") {
    DetectorSettings cfg;
    cfg.window = 10;
    cfg.delta = 0.01;
    cfg.target = 2;
    const ConvergenceReport rep = detect_convergence(trace_from_bests({7, 6, 5}), cfg);
    CHECK_FALSE(rep.converged);
    CHECK(rep.k_final == 0);
    CHECK(rep.best_objective.mean == doctest::Approx(5.0));
}
