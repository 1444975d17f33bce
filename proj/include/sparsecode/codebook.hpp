// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sparsecode/grassmann.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sparsecode {

/// Indexed set of precoders sharing one (nt, ns). Entry k is addressed by the
/// feedback index k+1 in serialized form.
struct Codebook {
    int nt = 0;
    int ns = 0;
    std::string label;
    std::vector<SemiUnitaryMatrix> entries;

    int size() const { return static_cast<int>(entries.size()); }
};

/// Reads a codebook JSON file. Entries are validated as semi-unitary with
/// tolerance 1e-8; malformed files are rejected with the offending entry named.
Codebook load_codebook(const std::string& path);

/// Writes codebook JSON with >= 17 significant digits (lossless round-trip).
void save_codebook(const Codebook& codebook, const std::string& path);

/// The eight dense fully-coherent rank-2 four-port entries of 3GPP TS 38.211
/// Table 6.3.1.5-5 (TPMI 14-21), rescaled to unit column norm.
Codebook nr_codebook_4x2();

/// Random-restart + local perturbation search maximizing the minimum pairwise
/// chordal distance. Approximate by design; deterministic given the seed.
Codebook generate_packing(int nt, int ns, int size, int iterations, std::uint64_t rng_seed);

/// Smallest pairwise chordal distance; requires size >= 2.
double min_pairwise_distance(const Codebook& codebook);

}  // namespace sparsecode
