#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qapbench/errors.hpp"
#include "qapbench/rng.hpp"

namespace qapbench {

/// Objective values and matrix entries. Signed 64-bit so that cost sums and
/// swap deltas for every instance size we care about fit without overflow.
using Cost = std::int64_t;

/// assignment[facility] = location. Always a permutation of 0..n-1.
using Assignment = std::vector<int>;

/// Dense row-major square matrix of integer weights.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(int n, Cost fill = 0)
        : n_(n), cells_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill) {}

    int size() const { return n_; }

    Cost& operator()(int r, int c) { return cells_[static_cast<std::size_t>(r) * n_ + c]; }
    Cost operator()(int r, int c) const { return cells_[static_cast<std::size_t>(r) * n_ + c]; }

    bool operator==(const SquareMatrix&) const = default;

private:
    int n_ = 0;
    std::vector<Cost> cells_;
};

/// A quadratic assignment instance: flow between facilities, distance between
/// locations, and an optional linear placement cost.
///
/// linear_cost, when present, is indexed (location, facility): the entry
/// (k, i) is the fixed cost of placing facility i at location k.
struct QapInstance {
    int n = 0;
    SquareMatrix flow;
    SquareMatrix distance;
    std::optional<SquareMatrix> linear_cost;
    std::string name;
};

bool is_permutation(const Assignment& a, int n);
Assignment identity_assignment(int n);
Assignment random_assignment(int n, Rng& rng);

/// Parses the plain QAPLIB text layout: a single size token n followed by the
/// n x n flow matrix and the n x n distance matrix in row-major order. A third
/// n x n block, when present, is read as the linear cost matrix. Whitespace
/// (including newlines) is interchangeable. Throws ParseError on a non-numeric
/// token, a bad size, or a token count that matches neither layout.
/// Non-fatal oddities (nonzero diagonals) are appended to *warnings when given.
QapInstance parse_qaplib(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// Inverse of parse_qaplib; parse(serialize(inst)) == inst.
std::string serialize_qaplib(const QapInstance& inst);

/// Reads and parses a file; the instance name is the file stem.
QapInstance load_qaplib_file(const std::filesystem::path& path,
                             std::vector<std::string>* warnings = nullptr);

/// Exchanges the two matrices, for data sets that store distance first.
void swap_flow_distance(QapInstance& inst);

/// Uniform random instance with entries in [0, max_entry] and zero diagonals.
/// Matrices are asymmetric in general. Intended for tests and studies.
QapInstance random_instance(int n, Cost max_entry, std::uint64_t seed);

} // namespace qapbench
