#include "qapbench/evaluate.hpp"

#include <algorithm>
#include <sstream>

namespace qapbench {

namespace {

void check_assignment(const QapInstance& inst, const Assignment& a, const char* fn) {
    if (inst.flow.size() != inst.n || inst.distance.size() != inst.n) {
        std::ostringstream msg;
        msg << fn << ": instance matrices are not " << inst.n << "x" << inst.n;
        throw ContractError(msg.str());
    }
    if (!is_permutation(a, inst.n)) {
        std::ostringstream msg;
        msg << fn << ": assignment of size " << a.size() << " is not a permutation of 0.."
            << inst.n - 1;
        throw ContractError(msg.str());
    }
}

} // namespace

Cost cost(const QapInstance& inst, const Assignment& a) {
    check_assignment(inst, a, "cost");
    const int n = inst.n;
    Cost total = 0;
    for (int i = 0; i < n; ++i) {
        const int ai = a[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j)
            total += inst.flow(i, j) * inst.distance(ai, a[static_cast<std::size_t>(j)]);
    }
    return total;
}

Cost cost_linear(const QapInstance& inst, const Assignment& a) {
    if (!inst.linear_cost)
        throw ContractError("cost_linear: instance has no linear cost matrix");
    Cost total = cost(inst, a);
    for (int i = 0; i < inst.n; ++i)
        total += (*inst.linear_cost)(a[static_cast<std::size_t>(i)], i);
    return total;
}

Cost swap_delta(const QapInstance& inst, const Assignment& a, int i, int j) {
    const int n = inst.n;
    if (static_cast<int>(a.size()) != n)
        throw ContractError("swap_delta: assignment size does not match instance");
    if (i < 0 || j < 0 || i >= n || j >= n)
        throw ContractError("swap_delta: facility index out of range");
    if (i == j) return 0;

    const auto& f = inst.flow;
    const auto& d = inst.distance;
    const int r = a[static_cast<std::size_t>(i)];
    const int s = a[static_cast<std::size_t>(j)];

    // General asymmetric O(n) update; diagonal flow terms move with the
    // facilities, everything else cancels pairwise.
    Cost delta = f(i, i) * (d(s, s) - d(r, r)) + f(j, j) * (d(r, r) - d(s, s)) +
                 f(i, j) * (d(s, r) - d(r, s)) + f(j, i) * (d(r, s) - d(s, r));
    for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const int t = a[static_cast<std::size_t>(k)];
        delta += f(k, i) * (d(t, s) - d(t, r)) + f(k, j) * (d(t, r) - d(t, s)) +
                 f(i, k) * (d(s, t) - d(r, t)) + f(j, k) * (d(r, t) - d(s, t));
    }
    return delta;
}

BruteForceResult brute_force(const QapInstance& inst) {
    if (inst.n > kBruteForceLimit) {
        std::ostringstream msg;
        msg << "brute_force: n=" << inst.n << " exceeds limit " << kBruteForceLimit;
        throw SizeLimitError(msg.str());
    }
    Assignment candidate = identity_assignment(inst.n);
    BruteForceResult result;
    result.assignment = candidate;
    result.cost = cost(inst, candidate);
    result.evaluated = 1;
    while (std::next_permutation(candidate.begin(), candidate.end())) {
        ++result.evaluated;
        const Cost c = cost(inst, candidate);
        if (c < result.cost) { // strict: keeps the lexicographically first optimum
            result.cost = c;
            result.assignment = candidate;
        }
    }
    return result;
}

} // namespace qapbench
