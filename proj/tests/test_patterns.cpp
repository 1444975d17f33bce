// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sparsecode/patterns.hpp"

#include <algorithm>
#include <set>

using namespace sparsecode;

namespace {

// Independent oracle: S(n, k) = k S(n-1, k) + S(n-1, k-1).
std::uint64_t stirling_recurrence(int n, int k) {
    if (k == 0) return n == 0 ? 1 : 0;
    if (n == 0 || k > n) return 0;
    return k * stirling_recurrence(n - 1, k) + stirling_recurrence(n - 1, k - 1);
}

std::set<std::set<std::set<int>>> as_sets(const std::vector<SparsityPattern>& patterns) {
    std::set<std::set<std::set<int>>> out;
    for (const auto& p : patterns) {
        std::set<std::set<int>> blocks;
        for (const auto& b : p.blocks) blocks.emplace(b.indices.begin(), b.indices.end());
        out.insert(std::move(blocks));
    }
    return out;
}

}  // namespace

TEST_CASE("count_patterns closed-form values") {
    CHECK(count_patterns(4, 2) == 7);
    for (int k = 1; k <= 10; ++k) {
        CHECK(count_patterns(k, k) == 1);
        CHECK(count_patterns(k, 1) == 1);
    }
    CHECK(count_patterns(16, 8) == stirling_recurrence(16, 8));
}

TEST_CASE("count_patterns rejects out-of-range dimensions") {
    CHECK_THROWS_AS(count_patterns(17, 2), std::invalid_argument);
    CHECK_THROWS_AS(count_patterns(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(count_patterns(3, 4), std::invalid_argument);
}

TEST_CASE("count matches recurrence and enumeration for all nt <= 10") {
    for (int nt = 1; nt <= 10; ++nt) {
        for (int ns = 1; ns <= nt; ++ns) {
            const std::uint64_t count = count_patterns(nt, ns);
            CHECK(count == stirling_recurrence(nt, ns));
            CHECK(enumerate_patterns(nt, ns).size() == count);
        }
    }
}

TEST_CASE("enumerate_patterns(4,2) yields the seven known partitions") {
    const auto patterns = enumerate_patterns(4, 2);
    REQUIRE(patterns.size() == 7);
    const auto got = as_sets(patterns);
    const std::set<std::set<std::set<int>>> expected{
        {{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}, {{1, 4}, {2, 3}},    {{1}, {2, 3, 4}},
        {{1, 3, 4}, {2}}, {{1, 2, 4}, {3}}, {{1, 2, 3}, {4}}};
    CHECK(got == expected);
}

TEST_CASE("enumerate_patterns(2,2) is the single split") {
    const auto patterns = enumerate_patterns(2, 2);
    REQUIRE(patterns.size() == 1);
    CHECK(patterns[0].blocks[0].indices == std::vector<int>{1});
    CHECK(patterns[0].blocks[1].indices == std::vector<int>{2});
}

TEST_CASE("patterns are canonical, disjoint, and cover the index range") {
    for (auto [nt, ns] : {std::pair{4, 2}, std::pair{6, 3}, std::pair{8, 4}}) {
        const auto patterns = enumerate_patterns(nt, ns);
        CHECK(patterns.size() == count_patterns(nt, ns));
        for (const auto& p : patterns) {
            REQUIRE(p.ns() == ns);
            std::set<int> seen;
            int prev_min = 0;
            for (const auto& block : p.blocks) {
                REQUIRE(!block.indices.empty());
                CHECK(std::is_sorted(block.indices.begin(), block.indices.end()));
                CHECK(block.indices.front() > prev_min);  // canonical block order
                prev_min = block.indices.front();
                for (int idx : block.indices) {
                    CHECK(idx >= 1);
                    CHECK(idx <= nt);
                    CHECK(seen.insert(idx).second);  // pairwise disjoint
                }
            }
            CHECK(static_cast<int>(seen.size()) == nt);  // full cover
        }
    }
}

TEST_CASE("complement of a block") {
    SparsityPattern p;
    p.nt = 4;
    p.blocks = {{{1, 2}}, {{3, 4}}};
    CHECK(complement(p, 0).indices == std::vector<int>{3, 4});
    CHECK(complement(p, 1).indices == std::vector<int>{1, 2});

    SparsityPattern q;
    q.nt = 2;
    q.blocks = {{{1}}, {{2}}};
    CHECK(complement(q, 1).indices == std::vector<int>{1});

    CHECK_THROWS_AS(complement(p, 2), std::invalid_argument);
}

TEST_CASE("block plus complement covers the range on random patterns") {
    const auto patterns = enumerate_patterns(7, 3);
    for (std::size_t k = 0; k < patterns.size(); k += 17) {
        const auto& p = patterns[k];
        for (int j = 0; j < p.ns(); ++j) {
            std::set<int> all(p.blocks[static_cast<std::size_t>(j)].indices.begin(),
                              p.blocks[static_cast<std::size_t>(j)].indices.end());
            for (int idx : complement(p, j).indices) CHECK(all.insert(idx).second);
            CHECK(static_cast<int>(all.size()) == p.nt);
        }
    }
}

TEST_CASE("pattern formatting") {
    SparsityPattern p;
    p.nt = 4;
    p.blocks = {{{1, 2}}, {{3, 4}}};
    CHECK(to_string(p) == "{1,2}|{3,4}");
}
