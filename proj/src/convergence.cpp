#include "qapbench/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "qapbench/errors.hpp"

namespace qapbench {

StrongConvergenceDetector::StrongConvergenceDetector(DetectorSettings settings)
    : settings_(settings) {
    if (settings.window <= 0 || settings.delta <= 0.0 || settings.target <= 0)
        throw ConfigError("strong-convergence detector: window, delta, and target "
                          "must all be positive");
}

namespace {

// Coefficient of variation over history[first, first+n). Zero spread around a
// zero mean counts as perfectly stable (CV 0).
double window_cv(const std::vector<double>& history, std::size_t first, std::size_t n) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += history[first + i];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = history[first + i] - mean;
        var += d * d;
    }
    var /= static_cast<double>(n);
    const double sd = std::sqrt(var);
    if (mean == 0.0) {
        if (sd == 0.0) return 0.0;
        throw ContractError("strong-convergence detector: zero-mean window with spread");
    }
    return sd / mean;
}

} // namespace

void StrongConvergenceDetector::step(double best) {
    if (best < 0.0)
        throw ContractError("strong-convergence detector: negative best cost");
    history_.push_back(best);

    const int i = static_cast<int>(history_.size());
    const int n = settings_.window;
    if (i <= n) return;

    // Full-length windows ending at t for t in (i-n, i], 1-based.
    double cv_min = 0.0;
    double cv_max = 0.0;
    bool first_window = true;
    for (int t = std::max(n, i - n + 1); t <= i; ++t) {
        const double cv = window_cv(history_, static_cast<std::size_t>(t - n),
                                    static_cast<std::size_t>(n));
        if (first_window) {
            cv_min = cv_max = cv;
            first_window = false;
        } else {
            cv_min = std::min(cv_min, cv);
            cv_max = std::max(cv_max, cv);
        }
    }
    if (cv_max - cv_min < settings_.delta) {
        ++k_;
        if (!trigger_ && k_ >= settings_.target) trigger_ = i;
    }
}

ConvergenceReport detect_convergence(std::span<const IterationTrace> trace,
                                     DetectorSettings settings) {
    StrongConvergenceDetector detector(settings);
    Cost best_so_far = 0;
    Cost best_at_trigger = 0;
    double time_sum = 0.0;
    double time_at_trigger = 0.0;
    for (std::size_t s = 0; s < trace.size(); ++s) {
        best_so_far = s == 0 ? trace[s].best : std::min(best_so_far, trace[s].best);
        time_sum += trace[s].lambda;
        const bool was_converged = detector.converged();
        detector.step(static_cast<double>(trace[s].best));
        if (!was_converged && detector.converged()) {
            best_at_trigger = best_so_far;
            time_at_trigger = time_sum;
        }
    }

    ConvergenceReport report;
    report.settings = settings;
    report.replications = 1;
    report.k_final = detector.k();
    report.converged = detector.converged();
    report.trigger_iteration = detector.trigger_iteration();
    const double objective =
        static_cast<double>(report.converged ? best_at_trigger : best_so_far);
    report.best_objective = {objective, objective, objective};
    if (report.converged) {
        report.converged_count = 1;
        const double iter = static_cast<double>(*report.trigger_iteration);
        report.iterations = Table2Block{iter, iter, iter};
        report.run_time = Table2Block{time_at_trigger, time_at_trigger, time_at_trigger};
    }
    return report;
}

namespace {

class BlockBuilder {
public:
    void add(double value) {
        if (count_ == 0) {
            block_ = {value, value, value};
        } else {
            block_.max = std::max(block_.max, value);
            block_.min = std::min(block_.min, value);
        }
        sum_ += value;
        ++count_;
    }

    bool empty() const { return count_ == 0; }

    Table2Block finish() const {
        Table2Block b = block_;
        b.mean = sum_ / static_cast<double>(count_);
        return b;
    }

private:
    Table2Block block_;
    double sum_ = 0.0;
    int count_ = 0;
};

} // namespace

ConvergenceReport table2_summary(std::span<const ConvergenceReport> replications) {
    if (replications.empty())
        throw InsufficientDataError("table2_summary: no replications");

    ConvergenceReport out;
    out.settings = replications[0].settings;
    BlockBuilder objective, iterations, run_time;
    int min_k = replications[0].k_final;
    std::optional<int> last_trigger;
    for (const ConvergenceReport& rep : replications) {
        if (rep.settings.window != out.settings.window ||
            rep.settings.delta != out.settings.delta ||
            rep.settings.target != out.settings.target)
            throw ContractError("table2_summary: detector settings differ across replications");
        objective.add(rep.best_objective.mean);
        min_k = std::min(min_k, rep.k_final);
        out.replications += rep.replications;
        out.converged_count += rep.converged_count;
        if (rep.converged) {
            iterations.add(rep.iterations ? rep.iterations->mean
                                          : static_cast<double>(*rep.trigger_iteration));
            if (rep.run_time) run_time.add(rep.run_time->mean);
            if (!last_trigger || *rep.trigger_iteration > *last_trigger)
                last_trigger = rep.trigger_iteration;
        }
    }

    out.k_final = min_k;
    out.converged = min_k >= out.settings.target;
    if (out.converged) out.trigger_iteration = last_trigger;
    out.best_objective = objective.finish();
    if (!iterations.empty()) out.iterations = iterations.finish();
    if (!run_time.empty()) out.run_time = run_time.finish();
    return out;
}

} // namespace qapbench
