#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <vector>

#include "qapbench/instance.hpp"

namespace qapbench {

/// One record per solver iteration. best/mean/worst summarize the costs the
/// iteration examined (population, plateau, or scan candidates); lambda is the
/// time the iteration body took, in seconds, excluding observer work.
struct IterationTrace {
    int iteration = 0;
    Cost best = 0;
    double mean = 0.0;
    Cost worst = 0;
    double lambda = 0.0;
};

/// Called once per iteration, after the record is complete.
using TraceObserver = std::function<void(const IterationTrace&)>;

/// Seconds charged per objective evaluation when the virtual clock is active.
inline constexpr double kWorkUnitSeconds = 1e-6;

/// Times one iteration body. In real mode it reads a monotonic clock; in
/// deterministic mode it counts objective evaluations and charges
/// kWorkUnitSeconds each, which makes lambda (and therefore every report
/// byte) reproducible across machines and worker counts.
class IterationClock {
public:
    explicit IterationClock(bool deterministic) : deterministic_(deterministic) {}

    void begin() {
        work_ = 0;
        if (!deterministic_) start_ = std::chrono::steady_clock::now();
    }

    /// Records n units of objective work (deterministic mode only uses this).
    void add_work(std::uint64_t n = 1) { work_ += n; }

    /// Seconds elapsed (or charged) since begin().
    double end() const {
        if (deterministic_) return static_cast<double>(work_) * kWorkUnitSeconds;
        const auto now = std::chrono::steady_clock::now();
        return std::chrono::duration<double>(now - start_).count();
    }

private:
    bool deterministic_;
    std::chrono::steady_clock::time_point start_{};
    std::uint64_t work_ = 0;
};

} // namespace qapbench
