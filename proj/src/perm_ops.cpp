#include "qapbench/perm_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qapbench {

namespace {

void require_size(const Assignment& a, const char* fn) {
    if (a.size() < 2) throw ContractError(std::string(fn) + ": need at least 2 elements");
}

} // namespace

Assignment exchange_mutation(const Assignment& a, Rng& rng) {
    require_size(a, "exchange_mutation");
    auto [i, j] = rng.next_distinct_pair(static_cast<int>(a.size()));
    Assignment out = a;
    std::swap(out[static_cast<std::size_t>(i)], out[static_cast<std::size_t>(j)]);
    return out;
}

Assignment insertion_mutation(const Assignment& a, Rng& rng) {
    require_size(a, "insertion_mutation");
    const int n = static_cast<int>(a.size());
    const int i = rng.next_index(n);
    int j = rng.next_index(n - 1);
    if (j >= i) ++j;
    Assignment out = a;
    const int moved = out[static_cast<std::size_t>(i)];
    out.erase(out.begin() + i);
    out.insert(out.begin() + j, moved);
    return out;
}

Assignment inversion_mutation(const Assignment& a, Rng& rng) {
    require_size(a, "inversion_mutation");
    auto [l, r] = rng.next_distinct_pair(static_cast<int>(a.size()));
    Assignment out = a;
    std::reverse(out.begin() + l, out.begin() + r + 1);
    return out;
}

std::pair<Assignment, Assignment> mox_crossover_with_mask(const Assignment& p1,
                                                          const Assignment& p2,
                                                          const std::vector<int>& mask) {
    const std::size_t n = p1.size();
    if (p2.size() != n) throw ContractError("mox_crossover: parents differ in size");
    if (mask.size() != 2 * n) throw ContractError("mox_crossover: mask must have size 2n");

    // Interleave the parents according to the mask, keeping each parent's
    // internal order.
    std::vector<int> merged;
    merged.reserve(2 * n);
    std::size_t i1 = 0;
    std::size_t i2 = 0;
    for (int take_second : mask) {
        if (take_second) {
            if (i2 >= n) throw ContractError("mox_crossover: mask has more than n ones");
            merged.push_back(p2[i2++]);
        } else {
            if (i1 >= n) throw ContractError("mox_crossover: mask has more than n zeros");
            merged.push_back(p1[i1++]);
        }
    }

    // First occurrences form one child, last occurrences the other.
    Assignment first;
    Assignment last;
    first.reserve(n);
    last.reserve(n);
    std::vector<char> seen(n, 0);
    for (int v : merged)
        if (!seen[static_cast<std::size_t>(v)]) {
            seen[static_cast<std::size_t>(v)] = 1;
            first.push_back(v);
        }
    std::fill(seen.begin(), seen.end(), 0);
    for (auto it = merged.rbegin(); it != merged.rend(); ++it)
        if (!seen[static_cast<std::size_t>(*it)]) {
            seen[static_cast<std::size_t>(*it)] = 1;
            last.push_back(*it);
        }
    std::reverse(last.begin(), last.end());
    return {std::move(first), std::move(last)};
}

std::pair<Assignment, Assignment> mox_crossover(const Assignment& p1, const Assignment& p2,
                                                Rng& rng) {
    require_size(p1, "mox_crossover");
    std::vector<int> mask(2 * p1.size(), 0);
    std::fill(mask.begin() + static_cast<std::ptrdiff_t>(p1.size()), mask.end(), 1);
    rng.shuffle(mask);
    return mox_crossover_with_mask(p1, p2, mask);
}

std::vector<double> selection_weights(const std::vector<Cost>& costs) {
    if (costs.empty()) throw ContractError("selection_weights: empty cost vector");
    const auto [lo, hi] = std::minmax_element(costs.begin(), costs.end());
    const double span = static_cast<double>(*hi - *lo);
    std::vector<double> w(costs.size());
    if (span == 0.0) {
        std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(costs.size()));
        return w;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < costs.size(); ++i) {
        w[i] = std::exp(-kSelectionSharpness * static_cast<double>(costs[i] - *lo) / span);
        total += w[i];
    }
    for (double& x : w) x /= total;
    return w;
}

std::size_t roulette_select(const Population& pop, Rng& rng) {
    if (pop.members.size() != pop.costs.size())
        throw ContractError("roulette_select: members/costs size mismatch");
    const std::vector<double> w = selection_weights(pop.costs);
    const double u = rng.next_unit();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        acc += w[i];
        if (u < acc) return i;
    }
    return w.size() - 1; // guards against rounding shortfall
}

Assignment decode_keys(const KeyVector& keys) {
    const int n = static_cast<int>(keys.size());
    for (double k : keys)
        if (!std::isfinite(k)) throw ContractError("decode_keys: keys must be finite");
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double ka = keys[static_cast<std::size_t>(a)];
        const double kb = keys[static_cast<std::size_t>(b)];
        return ka < kb || (ka == kb && a < b);
    });
    Assignment ranks(static_cast<std::size_t>(n));
    for (int rank = 0; rank < n; ++rank) ranks[static_cast<std::size_t>(order[rank])] = rank;
    return ranks;
}

KeyVector random_keys(int n, Rng& rng) {
    KeyVector keys(static_cast<std::size_t>(n));
    for (double& k : keys) k = rng.next_unit();
    return keys;
}

KeyVector reencode_keys(const KeyVector& keys, const Assignment& target) {
    if (keys.size() != target.size())
        throw ContractError("reencode_keys: keys/target size mismatch");
    if (!is_permutation(target, static_cast<int>(target.size())))
        throw ContractError("reencode_keys: target is not a permutation");
    KeyVector sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    // Duplicate values would decode by index order, not by target order; nudge
    // them apart so the round trip decode_keys(result) == target always holds.
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] <= sorted[i - 1])
            sorted[i] = std::nextafter(sorted[i - 1], std::numeric_limits<double>::infinity());
    KeyVector out(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i)
        out[i] = sorted[static_cast<std::size_t>(target[i])];
    return out;
}

} // namespace qapbench
