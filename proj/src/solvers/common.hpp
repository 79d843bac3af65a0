#pragma once

#include <algorithm>
#include <limits>

#include "qapbench/solvers.hpp"

namespace qapbench::detail {

/// Cost summary of whatever candidates an iteration examined.
class CandidateSet {
public:
    void add(Cost c) {
        best_ = std::min(best_, c);
        worst_ = std::max(worst_, c);
        sum_ += static_cast<double>(c);
        ++count_;
    }

    Cost best() const { return best_; }
    Cost worst() const { return worst_; }
    double mean() const { return sum_ / static_cast<double>(count_); }
    std::size_t count() const { return count_; }

private:
    Cost best_ = std::numeric_limits<Cost>::max();
    Cost worst_ = std::numeric_limits<Cost>::min();
    double sum_ = 0.0;
    std::size_t count_ = 0;
};

/// Per-iteration plumbing shared by the solvers: times the body, appends the
/// record, and notifies the observer outside the timed region.
class TraceSink {
public:
    TraceSink(const SolverConfig& cfg, const TraceObserver& observer)
        : clock_(cfg.deterministic_time), observer_(observer) {
        trace_.reserve(static_cast<std::size_t>(cfg.max_iterations));
    }

    void begin_iteration() { clock_.begin(); }
    void charge(std::uint64_t evaluations = 1) { clock_.add_work(evaluations); }

    void record(int iteration, Cost best, double mean, Cost worst) {
        IterationTrace rec{iteration, best, mean, worst, clock_.end()};
        total_time_ += rec.lambda;
        trace_.push_back(rec);
        if (observer_) observer_(rec);
    }

    void record(int iteration, Cost best, const CandidateSet& cs) {
        record(iteration, best, cs.mean(), cs.worst());
    }

    std::vector<IterationTrace>&& take_trace() { return std::move(trace_); }
    double total_time() const { return total_time_; }

private:
    IterationClock clock_;
    const TraceObserver& observer_;
    std::vector<IterationTrace> trace_;
    double total_time_ = 0.0;
};

/// Assembles the SolverResult fields every solver fills the same way.
inline SolverResult finish(Assignment best_assignment, Cost best_cost, TraceSink&& sink) {
    SolverResult result;
    result.best_assignment = std::move(best_assignment);
    result.best_cost = best_cost;
    result.trace = sink.take_trace();
    result.iterations_run = static_cast<int>(result.trace.size());
    result.wall_time = sink.total_time();
    return result;
}

inline void check_runnable(const QapInstance& inst) {
    if (inst.n < 2 || inst.flow.size() != inst.n || inst.distance.size() != inst.n)
        throw ContractError("solver: instance is not a valid n >= 2 QAP instance");
}

} // namespace qapbench::detail
