// SPDX-License-Identifier: Apache-2.0
#include "sparsecode/waveform.hpp"

#include "sparsecode/kernels.hpp"
#include "sparsecode/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sparsecode {

Modulation parse_modulation(const std::string& name) {
    if (name == "qam4" || name == "qpsk") return Modulation::Qam4;
    if (name == "qam16") return Modulation::Qam16;
    if (name == "qam64") return Modulation::Qam64;
    throw std::invalid_argument("unknown modulation: " + name + " (expected qam4|qam16|qam64)");
}

const char* to_string(Modulation mod) {
    switch (mod) {
        case Modulation::Qam4: return "qam4";
        case Modulation::Qam16: return "qam16";
        case Modulation::Qam64: return "qam64";
    }
    return "?";
}

void WaveformConfig::validate() const {
    if (n_prb < 1 || fft_size < 1 || oversample < 1 || nt < 1 || ns < 1 || ns > nt) {
        throw std::invalid_argument("waveform config: invalid dimensions");
    }
    if (subcarriers() > fft_size) {
        throw std::invalid_argument("waveform config: M = " + std::to_string(subcarriers()) +
                                    " subcarriers exceed FFT size " + std::to_string(fft_size));
    }
}

namespace {

int side_of(Modulation mod) {
    switch (mod) {
        case Modulation::Qam4: return 2;
        case Modulation::Qam16: return 4;
        case Modulation::Qam64: return 8;
    }
    return 2;
}

// Gray-coded PAM level for a side-of-2^b axis, centered and odd-spaced.
int gray_level(int bits, int side) {
    int g = bits ^ (bits >> 1);
    return 2 * g - (side - 1);
}

}  // namespace

ComplexVector modulate(Rng& rng, int count, Modulation mod) {
    if (count < 1) throw std::invalid_argument("modulate: count must be >= 1");
    const int side = side_of(mod);
    // Unit average energy: E|s|^2 = 2 * (side^2 - 1) / 3 before scaling.
    const double scale = std::sqrt(3.0 / (2.0 * (side * side - 1)));
    ComplexVector s(count);
    for (int i = 0; i < count; ++i) {
        const int re_bits = rng.uniform_int(side);
        const int im_bits = rng.uniform_int(side);
        s(i) = scale * cxd(gray_level(re_bits, side), gray_level(im_bits, side));
    }
    return s;
}

ComplexMatrix dfts_ofdm_symbol(const WaveformConfig& cfg, const SemiUnitaryMatrix& precoder,
                               const ComplexMatrix& stream_symbols) {
    cfg.validate();
    const int m = cfg.subcarriers();
    const int grid = cfg.grid_size();
    if (precoder.nt() != cfg.nt || precoder.ns() != cfg.ns) {
        throw std::invalid_argument("dfts_ofdm_symbol: precoder dimensions do not match config");
    }
    if (stream_symbols.rows() != cfg.ns || stream_symbols.cols() != m) {
        throw std::invalid_argument("dfts_ofdm_symbol: expected " + std::to_string(cfg.ns) + "x" +
                                    std::to_string(m) + " stream symbols");
    }

    ComplexMatrix spread(cfg.ns, m);
    for (int j = 0; j < cfg.ns; ++j) {
        spread.row(j) = dft(stream_symbols.row(j).transpose()).transpose();
    }

    // Contiguous allocation centered at DC; tone t occupies frequency
    // t - floor(M/2), i.e. grid bin (t - floor(M/2)) mod (N*L).
    ComplexMatrix freq = ComplexMatrix::Zero(cfg.nt, grid);
    const ComplexMatrix& w = precoder.matrix();
    for (int t = 0; t < m; ++t) {
        const int offset = t - m / 2;
        const int bin = offset >= 0 ? offset : grid + offset;
        freq.col(bin) = w * spread.col(t);
    }

    ComplexMatrix time(cfg.nt, grid);
    for (int a = 0; a < cfg.nt; ++a) {
        time.row(a) = idft(freq.row(a).transpose()).transpose();
    }
    return time;
}

std::vector<double> papr_per_antenna(const ComplexMatrix& block) {
    if (block.size() == 0) throw std::invalid_argument("papr_per_antenna: empty block");
    std::vector<double> out(static_cast<std::size_t>(block.rows()));
    bool any_active = false;
    for (Eigen::Index a = 0; a < block.rows(); ++a) {
        double peak = 0.0;
        double sum = 0.0;
        for (Eigen::Index n = 0; n < block.cols(); ++n) {
            const double p = std::norm(block(a, n));
            peak = std::max(peak, p);
            sum += p;
        }
        if (peak <= 0.0) {
            out[static_cast<std::size_t>(a)] = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        any_active = true;
        out[static_cast<std::size_t>(a)] = 10.0 * std::log10(peak * block.cols() / sum);
    }
    if (!any_active) throw std::invalid_argument("papr_per_antenna: all antennas are silent");
    return out;
}

std::vector<double> papr_samples(const WaveformConfig& cfg, const Codebook& codebook,
                                 const PaprOptions& options) {
    cfg.validate();
    if (options.n_symbols < 1) throw std::invalid_argument("papr_samples: n_symbols must be >= 1");
    if (codebook.nt != cfg.nt || codebook.ns != cfg.ns) {
        throw std::invalid_argument("papr_samples: codebook dimensions do not match config");
    }
    if (options.fixed_index &&
        (*options.fixed_index < 0 || *options.fixed_index >= codebook.size())) {
        throw std::invalid_argument("papr_samples: precoder index out of range");
    }

    const int m = cfg.subcarriers();
    std::vector<std::vector<double>> per_block(static_cast<std::size_t>(options.n_symbols));

    parallel_for(options.n_symbols, options.threads, [&](std::int64_t b) {
        Rng rng(derive_seed(options.seed, "papr-block", static_cast<std::uint64_t>(b)));
        const int index = options.fixed_index ? *options.fixed_index : rng.uniform_int(codebook.size());

        ComplexMatrix symbols(cfg.ns, m);
        for (int j = 0; j < cfg.ns; ++j) {
            symbols.row(j) = modulate(rng, m, cfg.modulation).transpose();
        }
        const ComplexMatrix block =
            dfts_ofdm_symbol(cfg, codebook.entries[static_cast<std::size_t>(index)], symbols);
        const std::vector<double> papr_db = papr_per_antenna(block);

        std::vector<double>& out = per_block[static_cast<std::size_t>(b)];
        if (options.aggregation == PaprAggregation::PoolAntennas) {
            for (double v : papr_db) {
                if (!std::isnan(v)) out.push_back(v);
            }
        } else {
            double linear_sum = 0.0;
            int active = 0;
            for (double v : papr_db) {
                if (std::isnan(v)) continue;
                linear_sum += std::pow(10.0, v / 10.0);
                ++active;
            }
            out.push_back(10.0 * std::log10(linear_sum / active));
        }
    });

    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(options.n_symbols));
    for (const auto& block_samples : per_block) {
        samples.insert(samples.end(), block_samples.begin(), block_samples.end());
    }
    return samples;
}

CcdfCurve ccdf_from_samples(const std::vector<double>& samples_db) {
    if (samples_db.empty()) throw std::invalid_argument("ccdf_from_samples: no samples");
    const auto [lo, hi] = std::minmax_element(samples_db.begin(), samples_db.end());
    return ccdf_from_samples(samples_db, *lo, *hi);
}

CcdfCurve ccdf_from_samples(const std::vector<double>& samples_db, double grid_lo_db,
                            double grid_hi_db) {
    if (samples_db.empty()) throw std::invalid_argument("ccdf_from_samples: no samples");
    std::vector<double> sorted = samples_db;
    std::sort(sorted.begin(), sorted.end());

    constexpr double kStep = 0.05;
    const long first = static_cast<long>(std::floor(grid_lo_db / kStep)) - 1;
    const long last = static_cast<long>(std::ceil(grid_hi_db / kStep));

    CcdfCurve curve;
    curve.threshold_db.reserve(static_cast<std::size_t>(last - first + 1));
    curve.ccdf.reserve(static_cast<std::size_t>(last - first + 1));
    const double n = static_cast<double>(sorted.size());
    for (long g = first; g <= last; ++g) {
        const double threshold = static_cast<double>(g) * kStep;
        const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), threshold);
        curve.threshold_db.push_back(threshold);
        curve.ccdf.push_back(static_cast<double>(above) / n);
    }
    return curve;
}

CcdfCurve papr_ccdf(const WaveformConfig& cfg, const Codebook& codebook, const PaprOptions& options) {
    return ccdf_from_samples(papr_samples(cfg, codebook, options));
}

double ccdf_quantile_db(const CcdfCurve& curve, double p) {
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("ccdf_quantile_db: p must be in (0, 1)");
    for (std::size_t i = 0; i < curve.ccdf.size(); ++i) {
        if (curve.ccdf[i] > p) continue;
        if (i == 0) return curve.threshold_db.front();
        // interpolate on log10(ccdf) between the bracketing grid points
        const double hi = std::log10(curve.ccdf[i - 1]);
        const double lo = curve.ccdf[i] > 0.0 ? std::log10(curve.ccdf[i]) : hi - 6.0;
        const double frac = hi > lo ? (hi - std::log10(p)) / (hi - lo) : 1.0;
        return curve.threshold_db[i - 1] + frac * (curve.threshold_db[i] - curve.threshold_db[i - 1]);
    }
    throw std::invalid_argument("ccdf_quantile_db: curve never reaches the requested probability");
}

}  // namespace sparsecode
