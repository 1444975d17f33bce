// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sparsecode {

/// Nonzero-row indices of one precoder column, 1-based and strictly increasing.
struct SupportSet {
    std::vector<int> indices;

    int size() const { return static_cast<int>(indices.size()); }
    bool operator==(const SupportSet&) const = default;
};

/// Partition of {1..nt} into ns nonempty disjoint support sets, one per
/// precoder column. Blocks are kept in canonical order (sorted by smallest
/// element), and block j is assigned to column j.
struct SparsityPattern {
    int nt = 0;
    std::vector<SupportSet> blocks;

    int ns() const { return static_cast<int>(blocks.size()); }
    bool operator==(const SparsityPattern&) const = default;
};

/// Number of valid sparsity patterns (the Stirling number of the second kind),
/// evaluated in exact integer arithmetic. Requires 1 <= ns <= nt <= 16.
std::uint64_t count_patterns(int nt, int ns);

/// All patterns in canonical order (lexicographic on the restricted growth
/// encoding). Length always equals count_patterns(nt, ns).
std::vector<SparsityPattern> enumerate_patterns(int nt, int ns);

/// Complement J_j = {1..nt} \ I_j of the block at position j (0-based), sorted.
SupportSet complement(const SparsityPattern& pattern, int j);

/// Formats as "{1,2}|{3,4}".
std::string to_string(const SparsityPattern& pattern);

}  // namespace sparsecode
