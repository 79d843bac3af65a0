#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "qapbench/errors.hpp"

namespace qapbench {

/// splitmix64 finalizer. mix64(x) is a bijection on 64-bit values and is used
/// to derive well-separated seeds from small indices.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for replication (or sub-stream) `index` of a run seeded with `master`.
/// Defined as master XOR mix64(index); stable across platforms and versions.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return master ^ mix64(index);
}

/// Deterministic random source. Wraps std::mt19937_64 but implements every
/// distribution itself so that streams are identical across standard
/// libraries and compilers.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53 significant bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double next_range(double lo, double hi) {
        return lo + (hi - lo) * next_unit();
    }

    /// Uniform integer in [0, bound). Rejection sampling, no modulo bias.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw ContractError("Rng::next_below: bound must be positive");
        const std::uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    int next_index(int bound) { return static_cast<int>(next_below(static_cast<std::uint64_t>(bound))); }

    /// Uniform unordered pair of distinct indices in [0, n), returned as (lo, hi).
    std::pair<int, int> next_distinct_pair(int n) {
        if (n < 2) throw ContractError("Rng::next_distinct_pair: need n >= 2");
        int a = next_index(n);
        int b = next_index(n - 1);
        if (b >= a) ++b;
        return std::minmax(a, b);
    }

    /// Fisher-Yates shuffle driven by next_below.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = next_below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace qapbench
