#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qapbench/instance.hpp"
#include "qapbench/rng.hpp"

namespace qapbench {

/// Continuous position vector for the key-coded algorithms; decoded to a
/// permutation with decode_keys.
using KeyVector = std::vector<double>;

/// Candidate pool used by selection. costs[i] must equal the objective value
/// of members[i]; the constructors used by the solvers keep them in sync.
struct Population {
    std::vector<Assignment> members;
    std::vector<Cost> costs;

    std::size_t size() const { return members.size(); }
};

/// Sharpness of the exponential fitness transform used by roulette_select.
inline constexpr double kSelectionSharpness = 3.0;

/// Exchange mutation: swaps the contents of two distinct positions chosen
/// uniformly at random.
Assignment exchange_mutation(const Assignment& a, Rng& rng);

/// Insertion mutation: removes the element at a random position i and
/// reinserts it so that it lands at a random other position j.
Assignment insertion_mutation(const Assignment& a, Rng& rng);

/// Inversion mutation: reverses a contiguous segment [l, r], l < r, chosen
/// uniformly among all such segments.
Assignment inversion_mutation(const Assignment& a, Rng& rng);

/// Merged order crossover. A uniformly random interleaving of the two parents
/// (a binary mask with n entries per parent, each parent read left to right)
/// forms a length-2n sequence; the first occurrence of each element, in
/// sequence order, forms one child and the last occurrences form the other.
/// Both children are permutations.
std::pair<Assignment, Assignment> mox_crossover(const Assignment& p1, const Assignment& p2,
                                                Rng& rng);

/// mox_crossover with the interleaving mask supplied by the caller:
/// mask has size 2n with exactly n zeros (take next element of p1) and
/// n ones (take next element of p2). Exposed for reproducible traces.
std::pair<Assignment, Assignment> mox_crossover_with_mask(const Assignment& p1,
                                                          const Assignment& p2,
                                                          const std::vector<int>& mask);

/// Selection weights: w_i = exp(-kSelectionSharpness * (z_i - z_min) / span),
/// normalised to sum 1. All-equal costs give uniform weights.
std::vector<double> selection_weights(const std::vector<Cost>& costs);

/// Roulette-wheel draw over selection_weights(pop.costs). Lower cost means a
/// strictly higher chance whenever costs differ.
std::size_t roulette_select(const Population& pop, Rng& rng);

/// Random-key decoding: position of the smallest key gets location rank 0 and
/// so on; equal keys break toward the lower index. decode_keys of strictly
/// increasing keys is the identity. The result a satisfies: a[i] = rank of
/// keys[i] in ascending order.
Assignment decode_keys(const KeyVector& keys);

/// n independent keys uniform in [0, 1).
KeyVector random_keys(int n, Rng& rng);

/// Rewrites keys so that decode_keys(result) == target while reusing the
/// sorted key values already present (duplicates are nudged apart to keep the
/// round trip exact). Used when a discrete mutation has to be folded back
/// into a key-coded individual.
KeyVector reencode_keys(const KeyVector& keys, const Assignment& target);

} // namespace qapbench
