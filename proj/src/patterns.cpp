// SPDX-License-Identifier: Apache-2.0
#include "sparsecode/patterns.hpp"

#include <stdexcept>

namespace sparsecode {

namespace {

void check_dims(int nt, int ns) {
    if (ns < 1 || ns > nt || nt > 16) {
        throw std::invalid_argument("patterns: need 1 <= ns <= nt <= 16, got nt=" +
                                    std::to_string(nt) + " ns=" + std::to_string(ns));
    }
}

__int128 binomial(int n, int k) {
    __int128 result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

__int128 ipow(int base, int exp) {
    __int128 result = 1;
    for (int i = 0; i < exp; ++i) result *= base;
    return result;
}

}  // namespace

std::uint64_t count_patterns(int nt, int ns) {
    check_dims(nt, ns);
    // (1/ns!) * sum_m (-1)^m C(ns, m) (ns - m)^nt; 128-bit intermediates since
    // (ns - m)^nt reaches 2^64 at the nt = 16 cap.
    __int128 sum = 0;
    for (int m = 0; m <= ns; ++m) {
        const __int128 term = binomial(ns, m) * ipow(ns - m, nt);
        sum += (m % 2 == 0) ? term : -term;
    }
    __int128 factorial = 1;
    for (int i = 2; i <= ns; ++i) factorial *= i;
    return static_cast<std::uint64_t>(sum / factorial);
}

std::vector<SparsityPattern> enumerate_patterns(int nt, int ns) {
    check_dims(nt, ns);
    std::vector<SparsityPattern> out;
    std::vector<int> code(static_cast<std::size_t>(nt), 0);  // restricted growth string

    // Depth-first over growth strings, pruned to exactly ns blocks.
    auto emit = [&] {
        SparsityPattern p;
        p.nt = nt;
        p.blocks.resize(static_cast<std::size_t>(ns));
        for (int i = 0; i < nt; ++i) {
            p.blocks[static_cast<std::size_t>(code[static_cast<std::size_t>(i)])].indices.push_back(i + 1);
        }
        out.push_back(std::move(p));
    };

    auto recurse = [&](auto&& self, int pos, int max_used) -> void {
        if (pos == nt) {
            if (max_used + 1 == ns) emit();
            return;
        }
        const int remaining = nt - pos;
        for (int b = 0; b <= max_used + 1 && b < ns; ++b) {
            const int used_after = std::max(max_used, b);
            if (used_after + 1 + remaining - 1 < ns) continue;  // cannot reach ns blocks
            code[static_cast<std::size_t>(pos)] = b;
            self(self, pos + 1, used_after);
        }
    };
    code[0] = 0;
    recurse(recurse, 1, 0);
    return out;
}

SupportSet complement(const SparsityPattern& pattern, int j) {
    if (j < 0 || j >= pattern.ns()) {
        throw std::invalid_argument("complement: block index " + std::to_string(j) + " out of range");
    }
    std::vector<bool> in_block(static_cast<std::size_t>(pattern.nt) + 1, false);
    for (int idx : pattern.blocks[static_cast<std::size_t>(j)].indices) {
        in_block[static_cast<std::size_t>(idx)] = true;
    }
    SupportSet result;
    for (int i = 1; i <= pattern.nt; ++i) {
        if (!in_block[static_cast<std::size_t>(i)]) result.indices.push_back(i);
    }
    return result;
}

std::string to_string(const SparsityPattern& pattern) {
    std::string s;
    for (std::size_t b = 0; b < pattern.blocks.size(); ++b) {
        if (b > 0) s += '|';
        s += '{';
        const auto& idx = pattern.blocks[b].indices;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (i > 0) s += ',';
            s += std::to_string(idx[i]);
        }
        s += '}';
    }
    return s;
}

}  // namespace sparsecode
