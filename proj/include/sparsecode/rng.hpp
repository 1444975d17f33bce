// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sparsecode/types.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace sparsecode {

inline constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Counter-based substream derivation: one master seed fans out into named
/// per-item streams, so parallel trials are independent of scheduling order.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view stream,
                                 std::uint64_t index = 0) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a over the stream name
    for (unsigned char c : stream) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::uint64_t s = master;
    s ^= splitmix64(s) ^ h;
    s ^= splitmix64(s) ^ index;
    return splitmix64(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    }

    /// Uniform integer in [0, n).
    int uniform_int(int n) {
        return std::uniform_int_distribution<int>(0, n - 1)(engine_);
    }

    /// Standard real Gaussian N(0, 1).
    double gaussian() { return normal_(engine_); }

    /// Circularly symmetric complex Gaussian CN(0, 1).
    cxd complex_gaussian() {
        return {gaussian() * kInvSqrt2, gaussian() * kInvSqrt2};
    }

    /// Matrix with i.i.d. CN(0, 1) entries.
    ComplexMatrix complex_gaussian_matrix(int rows, int cols) {
        ComplexMatrix m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) m(r, c) = complex_gaussian();
        return m;
    }

private:
    static constexpr double kInvSqrt2 = 0.70710678118654752440;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace sparsecode
