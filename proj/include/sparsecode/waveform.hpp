// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sparsecode/codebook.hpp"
#include "sparsecode/rng.hpp"

#include <optional>
#include <vector>

namespace sparsecode {

enum class Modulation { Qam4, Qam16, Qam64 };

Modulation parse_modulation(const std::string& name);
const char* to_string(Modulation mod);

struct WaveformConfig {
    int n_prb = 52;
    int fft_size = 1024;
    int oversample = 8;
    Modulation modulation = Modulation::Qam4;
    int nt = 4;
    int ns = 2;

    int subcarriers() const { return 12 * n_prb; }          // M
    int grid_size() const { return fft_size * oversample; } // N * L

    void validate() const;
};

/// Gray-mapped square QAM with unit average symbol energy.
ComplexVector modulate(Rng& rng, int count, Modulation mod);

/// One DFT-s-OFDM block: per-stream M-point DFT spreading, wideband precoding
/// on each occupied tone, contiguous mapping centered at DC on the oversampled
/// grid, and a per-antenna inverse DFT. Returns nt x (N*L) time samples.
ComplexMatrix dfts_ofdm_symbol(const WaveformConfig& cfg, const SemiUnitaryMatrix& precoder,
                               const ComplexMatrix& stream_symbols);

/// Peak-to-average power per antenna in dB; all-zero antennas yield NaN and
/// are excluded downstream. Throws if every antenna is silent.
std::vector<double> papr_per_antenna(const ComplexMatrix& block);

struct CcdfCurve {
    std::vector<double> threshold_db;  // 0.05 dB grid
    std::vector<double> ccdf;          // P(PAPR > threshold), nonincreasing 1 -> 0
};

enum class PaprAggregation {
    MeanOverAntennas,  // linear mean of per-antenna peak/average, one sample per block
    PoolAntennas       // every active antenna contributes its own sample
};

struct PaprOptions {
    int n_symbols = 20000;
    std::uint64_t seed = 0;
    std::optional<int> fixed_index;  // 0-based; unset = uniform over the codebook
    PaprAggregation aggregation = PaprAggregation::MeanOverAntennas;
    int threads = 0;
};

/// Raw PAPR samples (dB), one per block (or per active antenna when pooling).
/// Per-block substreams are derived from the master seed, so results do not
/// depend on the thread count.
std::vector<double> papr_samples(const WaveformConfig& cfg, const Codebook& codebook,
                                 const PaprOptions& options);

CcdfCurve ccdf_from_samples(const std::vector<double>& samples_db);

/// Same, on an explicit grid range (for plotting two sample sets together).
CcdfCurve ccdf_from_samples(const std::vector<double>& samples_db, double grid_lo_db,
                            double grid_hi_db);

CcdfCurve papr_ccdf(const WaveformConfig& cfg, const Codebook& codebook, const PaprOptions& options);

/// Threshold (dB) where the CCDF crosses p, interpolated on the 0.05 dB grid.
double ccdf_quantile_db(const CcdfCurve& curve, double p);

}  // namespace sparsecode
