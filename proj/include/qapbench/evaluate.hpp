#pragma once

#include <cstdint>

#include "qapbench/instance.hpp"

namespace qapbench {

/// Largest n accepted by brute_force (10! = 3.6M permutations).
inline constexpr int kBruteForceLimit = 10;

/// Quadratic objective: sum over all ordered pairs (i, j), including i == j,
/// of flow(i, j) * distance(a[i], a[j]).
Cost cost(const QapInstance& inst, const Assignment& a);

/// cost(inst, a) plus the linear term sum_i linear_cost(a[i], i).
/// Throws ContractError when the instance has no linear cost matrix.
Cost cost_linear(const QapInstance& inst, const Assignment& a);

/// Exact change in cost() caused by exchanging the locations of facilities
/// i and j, in O(n) time: cost(swapped) == cost(a) + swap_delta(inst, a, i, j).
/// Valid for asymmetric matrices and nonzero diagonals; i == j gives 0.
Cost swap_delta(const QapInstance& inst, const Assignment& a, int i, int j);

struct BruteForceResult {
    Assignment assignment; ///< lexicographically smallest among optima
    Cost cost = 0;
    std::uint64_t evaluated = 0; ///< permutations visited (n!)
};

/// Exhaustive minimisation of cost() over all n! assignments. Ties break
/// toward the lexicographically smallest assignment. Throws SizeLimitError
/// for n > kBruteForceLimit.
BruteForceResult brute_force(const QapInstance& inst);

} // namespace qapbench
