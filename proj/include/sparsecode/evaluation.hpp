// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sparsecode/codebook.hpp"
#include "sparsecode/grassmann.hpp"
#include "sparsecode/rng.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace sparsecode {

/// nr x nt uncorrelated Rayleigh channel (i.i.d. CN(0,1) entries).
using ChannelSample = ComplexMatrix;

struct RateConfig {
    int nt = 4;
    int ns = 2;
    int nr = 32;
    std::vector<double> snr_grid_db;
    int trials = 10000;
    int subcarriers_k = 1;
    std::uint64_t seed = 0;
    int threads = 0;

    void validate() const;
};

struct RateCurve {
    std::vector<double> snr_db;
    std::vector<double> mean_rate;  // bits/s/Hz per subcarrier
    std::vector<double> std_err;
};

ChannelSample rayleigh_channel(int nr, int nt, Rng& rng);

/// Mean over the provided subcarrier channels of
/// log2 det(I + (rho/ns) W^H H^H H W), in bits/s/Hz per subcarrier.
double rate(const SemiUnitaryMatrix& w, const std::vector<ChannelSample>& channels, double rho);

/// 0-based position of the rate-maximizing entry; ties go to the lowest index.
/// The feedback payload for a codebook of this size is ceil(log2 |W|) bits.
int select_index(const Codebook& codebook, const std::vector<ChannelSample>& channels, double rho);

int feedback_bits(const Codebook& codebook);

struct RateExperimentResult {
    RateCurve dense;
    RateCurve sparse;
};

/// Per trial the index is selected over the DENSE codebook only; the sparse
/// codebook is evaluated at that same index, never re-selected.
RateExperimentResult rate_experiment(const RateConfig& cfg, const Codebook& dense,
                                     const Codebook& sparse);

/// SNR (dB) each curve needs to reach target_rate, by linear interpolation;
/// returns snr_b - snr_a.
double snr_gap(const RateCurve& a, const RateCurve& b, double target_rate);

/// Normalized subspace error ||P P^H - W W^H||_F^2 / (2 ns), in [0, 1].
double distortion(const SemiUnitaryMatrix& w, const SemiUnitaryMatrix& p);

struct DistortionRow {
    int nt = 0;
    int ns = 0;
    int trials = 0;
    double mean_sigma_e = 0.0;
    double std_err = 0.0;
};

/// Mean SPCA distortion over random Grassmann points, per (nt, ns). SPCA is
/// applied unconditionally; exactly sparsifiable points contribute ~0.
std::vector<DistortionRow> distortion_sweep(const std::vector<std::pair<int, int>>& dims,
                                            int trials, std::uint64_t seed, int threads = 0);

}  // namespace sparsecode
