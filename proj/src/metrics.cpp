#include "qapbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace qapbench {

LambdaStats lambda_stats_from_deltas(std::span<const double> deltas, int recorded_points) {
    if (deltas.empty()) throw InsufficientDataError("lambda_stats: no inter-iteration deltas");
    if (recorded_points < static_cast<int>(deltas.size()) + 1)
        throw ContractError("lambda_stats: recorded_points must exceed delta count");
    LambdaStats out;
    out.deltas = static_cast<int>(deltas.size());
    out.lambda_min = deltas[0];
    out.lambda_max = deltas[0];
    double sum = 0.0;
    for (double d : deltas) {
        out.lambda_min = std::min(out.lambda_min, d);
        out.lambda_max = std::max(out.lambda_max, d);
        sum += d;
    }
    // Rounding in the accumulated sum can push the quotient an ulp past the
    // envelope when many near-identical deltas pile up; the exact mean cannot
    // leave [min, max], so clamp it back.
    out.lambda_mean =
        std::clamp(sum / static_cast<double>(deltas.size()), out.lambda_min, out.lambda_max);
    out.lambda_mean_literal = sum / static_cast<double>(recorded_points);
    return out;
}

LambdaStats lambda_stats(std::span<const IterationTrace> trace) {
    if (trace.size() < 2)
        throw InsufficientDataError("lambda_stats: need at least 2 trace records");
    std::vector<double> deltas;
    deltas.reserve(trace.size() - 1);
    for (std::size_t s = 1; s < trace.size(); ++s) deltas.push_back(trace[s].lambda);
    return lambda_stats_from_deltas(deltas, static_cast<int>(trace.size()));
}

int default_gof_bins(std::size_t samples) {
    const int root = static_cast<int>(std::floor(std::sqrt(static_cast<double>(samples))));
    return std::max(2, root);
}

GofResult robustness_gof(std::span<const double> samples, int bins, double lo, double hi) {
    if (bins < 2) throw ConfigError("robustness_gof: need at least 2 bins");
    if (static_cast<int>(samples.size()) < 5 * bins) {
        std::ostringstream msg;
        msg << "robustness_gof: need at least " << 5 * bins << " samples for " << bins
            << " bins, got " << samples.size();
        throw InsufficientDataError(msg.str());
    }
    GofResult out;
    out.bins = bins;
    if (hi <= lo) {
        if (hi < lo) throw ContractError("robustness_gof: empty range");
        out.degenerate = true; // zero spread: nothing to test against
        return out;
    }

    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    const double width = hi - lo;
    for (double x : samples) {
        if (x < lo || x > hi)
            throw ContractError("robustness_gof: sample outside the stated range");
        int idx = static_cast<int>((x - lo) / width * static_cast<double>(bins));
        idx = std::clamp(idx, 0, bins - 1);
        ++counts[static_cast<std::size_t>(idx)];
    }

    const double expected = static_cast<double>(samples.size()) / static_cast<double>(bins);
    double statistic = 0.0;
    for (std::size_t b : counts) {
        const double diff = static_cast<double>(b) - expected;
        statistic += diff * diff / expected;
    }
    out.statistic = statistic;
    const boost::math::chi_squared dist(static_cast<double>(bins - 1));
    out.p_value = boost::math::cdf(boost::math::complement(dist, statistic));
    return out;
}

GofResult robustness_gof(std::span<const double> samples, int bins) {
    if (samples.empty()) throw InsufficientDataError("robustness_gof: no samples");
    const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
    return robustness_gof(samples, bins, *lo, *hi);
}

RunSummary summarize_run(std::span<const IterationTrace> trace) {
    if (trace.empty()) throw InsufficientDataError("summarize_run: empty trace");
    RunSummary out;
    out.best = trace[0].best;
    out.worst = trace[0].worst;
    double mean_sum = 0.0;
    for (const IterationTrace& rec : trace) {
        out.best = std::min(out.best, rec.best);
        out.worst = std::max(out.worst, rec.worst);
        mean_sum += rec.mean;
    }
    out.average = mean_sum / static_cast<double>(trace.size());
    return out;
}

namespace {

struct MeanVar {
    double mean = 0.0;
    double var = 0.0; ///< population variance
};

MeanVar mean_var(const std::vector<double>& xs) {
    MeanVar mv;
    for (double x : xs) mv.mean += x;
    mv.mean /= static_cast<double>(xs.size());
    for (double x : xs) mv.var += (x - mv.mean) * (x - mv.mean);
    mv.var /= static_cast<double>(xs.size());
    return mv;
}

} // namespace

RunStatistics aggregate_replications(std::span<const SolverResult> results) {
    if (results.empty())
        throw InsufficientDataError("aggregate_replications: no replications");

    std::vector<double> bests, avgs, worsts, lambda_means;
    bests.reserve(results.size());
    avgs.reserve(results.size());
    worsts.reserve(results.size());
    lambda_means.reserve(results.size());
    double time_sum = 0.0;
    bool lambda_complete = true;
    for (const SolverResult& r : results) {
        const RunSummary s = summarize_run(r.trace);
        bests.push_back(static_cast<double>(s.best));
        avgs.push_back(s.average);
        worsts.push_back(static_cast<double>(s.worst));
        time_sum += r.wall_time;
        if (r.trace.size() < 2)
            lambda_complete = false;
        else
            lambda_means.push_back(lambda_stats(r.trace).lambda_mean);
    }

    RunStatistics out;
    out.replications = static_cast<int>(results.size());
    const MeanVar b = mean_var(bests);
    const MeanVar a = mean_var(avgs);
    const MeanVar w = mean_var(worsts);
    out.mean_best = b.mean;
    out.var_best = b.var;
    out.mean_avg = a.mean;
    out.var_avg = a.var;
    out.mean_worst = w.mean;
    out.var_worst = w.var;
    if (lambda_complete) {
        double sum = 0.0;
        for (double m : lambda_means) sum += m;
        out.efficiency = sum / static_cast<double>(lambda_means.size());
    }
    out.total_time = time_sum / static_cast<double>(results.size());
    return out;
}

} // namespace qapbench
