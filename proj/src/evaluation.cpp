// SPDX-License-Identifier: Apache-2.0
#include "sparsecode/evaluation.hpp"

#include "sparsecode/parallel.hpp"
#include "sparsecode/patterns.hpp"
#include "sparsecode/rng.hpp"
#include "sparsecode/sparsifier.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>

namespace sparsecode {

void RateConfig::validate() const {
    if (ns < 1 || ns > std::min(nt, nr)) {
        throw std::invalid_argument("rate config: need 1 <= ns <= min(nt, nr)");
    }
    if (snr_grid_db.empty()) throw std::invalid_argument("rate config: empty SNR grid");
    if (trials < 1) throw std::invalid_argument("rate config: trials must be >= 1");
    if (subcarriers_k < 1) throw std::invalid_argument("rate config: K must be >= 1");
}

ChannelSample rayleigh_channel(int nr, int nt, Rng& rng) {
    return rng.complex_gaussian_matrix(nr, nt);
}

namespace {

// log2 det(I + (rho/ns) G) for the Hermitian PSD Gram matrix G = (HW)^H (HW).
double rate_from_gram(const ComplexMatrix& gram, double rho, int ns) {
    ComplexMatrix m = ComplexMatrix::Identity(ns, ns) + (rho / ns) * gram;
    Eigen::LLT<ComplexMatrix> llt(m);
    if (llt.info() != Eigen::Success) {
        throw numerical_error("rate: Cholesky failed on " + std::to_string(ns) + "x" +
                              std::to_string(ns) + " matrix");
    }
    double log2det = 0.0;
    for (int i = 0; i < ns; ++i) {
        log2det += 2.0 * std::log2(llt.matrixL()(i, i).real());
    }
    return log2det;
}

}  // namespace

double rate(const SemiUnitaryMatrix& w, const std::vector<ChannelSample>& channels, double rho) {
    if (channels.empty()) throw std::invalid_argument("rate: no channel samples");
    if (rho <= 0.0) throw std::invalid_argument("rate: rho must be positive");
    double sum = 0.0;
    for (const ChannelSample& h : channels) {
        if (h.cols() != w.nt()) throw std::invalid_argument("rate: channel width does not match precoder");
        const ComplexMatrix hw = h * w.matrix();
        sum += rate_from_gram(hw.adjoint() * hw, rho, w.ns());
    }
    return sum / static_cast<double>(channels.size());
}

int select_index(const Codebook& codebook, const std::vector<ChannelSample>& channels, double rho) {
    if (codebook.entries.empty()) throw std::invalid_argument("select_index: empty codebook");
    int best = 0;
    double best_rate = -1.0;
    for (int i = 0; i < codebook.size(); ++i) {
        const double r = rate(codebook.entries[static_cast<std::size_t>(i)], channels, rho);
        if (r > best_rate) {
            best_rate = r;
            best = i;
        }
    }
    return best;
}

int feedback_bits(const Codebook& codebook) {
    int bits = 0;
    while ((1 << bits) < codebook.size()) ++bits;
    return bits;
}

RateExperimentResult rate_experiment(const RateConfig& cfg, const Codebook& dense,
                                     const Codebook& sparse) {
    cfg.validate();
    if (dense.size() != sparse.size()) {
        throw std::invalid_argument("rate_experiment: codebook sizes differ (" +
                                    std::to_string(dense.size()) + " vs " +
                                    std::to_string(sparse.size()) + ")");
    }
    if (dense.nt != cfg.nt || dense.ns != cfg.ns || sparse.nt != cfg.nt || sparse.ns != cfg.ns) {
        throw std::invalid_argument("rate_experiment: codebook dimensions do not match config");
    }

    const int n_snr = static_cast<int>(cfg.snr_grid_db.size());
    const int size = dense.size();

    // per trial and SNR point: rate of the dense selection and of the sparse
    // entry at the same index
    std::vector<double> dense_rates(static_cast<std::size_t>(cfg.trials) * n_snr);
    std::vector<double> sparse_rates(static_cast<std::size_t>(cfg.trials) * n_snr);

    parallel_for(cfg.trials, cfg.threads, [&](std::int64_t t) {
        Rng rng(derive_seed(cfg.seed, "rate-trial", static_cast<std::uint64_t>(t)));
        // Gram matrices (HW)^H (HW) per entry and subcarrier; the per-SNR loop
        // then only needs small log-det evaluations.
        const int k_total = cfg.subcarriers_k;
        std::vector<ComplexMatrix> dense_grams(static_cast<std::size_t>(size) * k_total);
        std::vector<ComplexMatrix> sparse_grams(static_cast<std::size_t>(size) * k_total);
        for (int k = 0; k < k_total; ++k) {
            const ChannelSample h = rayleigh_channel(cfg.nr, cfg.nt, rng);
            for (int i = 0; i < size; ++i) {
                const ComplexMatrix hd = h * dense.entries[static_cast<std::size_t>(i)].matrix();
                const ComplexMatrix hs = h * sparse.entries[static_cast<std::size_t>(i)].matrix();
                dense_grams[static_cast<std::size_t>(i) * k_total + static_cast<std::size_t>(k)] =
                    hd.adjoint() * hd;
                sparse_grams[static_cast<std::size_t>(i) * k_total + static_cast<std::size_t>(k)] =
                    hs.adjoint() * hs;
            }
        }
        auto mean_rate = [&](const std::vector<ComplexMatrix>& grams, int i, double rho) {
            double sum = 0.0;
            for (int k = 0; k < k_total; ++k) {
                sum += rate_from_gram(
                    grams[static_cast<std::size_t>(i) * k_total + static_cast<std::size_t>(k)], rho,
                    cfg.ns);
            }
            return sum / k_total;
        };

        for (int s = 0; s < n_snr; ++s) {
            const double rho = std::pow(10.0, cfg.snr_grid_db[static_cast<std::size_t>(s)] / 10.0);
            int best = 0;
            double best_rate = -1.0;
            for (int i = 0; i < size; ++i) {
                const double r = mean_rate(dense_grams, i, rho);
                if (r > best_rate) {
                    best_rate = r;
                    best = i;
                }
            }
            const std::size_t slot = static_cast<std::size_t>(t) * n_snr + static_cast<std::size_t>(s);
            dense_rates[slot] = best_rate;
            sparse_rates[slot] = mean_rate(sparse_grams, best, rho);
        }
    });

    auto reduce = [&](const std::vector<double>& rates) {
        RateCurve curve;
        curve.snr_db = cfg.snr_grid_db;
        curve.mean_rate.resize(static_cast<std::size_t>(n_snr));
        curve.std_err.resize(static_cast<std::size_t>(n_snr));
        for (int s = 0; s < n_snr; ++s) {
            double sum = 0.0;
            for (int t = 0; t < cfg.trials; ++t) {
                sum += rates[static_cast<std::size_t>(t) * n_snr + static_cast<std::size_t>(s)];
            }
            const double mean = sum / cfg.trials;
            double var = 0.0;
            for (int t = 0; t < cfg.trials; ++t) {
                const double d = rates[static_cast<std::size_t>(t) * n_snr + static_cast<std::size_t>(s)] - mean;
                var += d * d;
            }
            var = cfg.trials > 1 ? var / (cfg.trials - 1) : 0.0;
            curve.mean_rate[static_cast<std::size_t>(s)] = mean;
            curve.std_err[static_cast<std::size_t>(s)] = std::sqrt(var / cfg.trials);
        }
        return curve;
    };

    return {reduce(dense_rates), reduce(sparse_rates)};
}

namespace {

double snr_at_rate(const RateCurve& curve, double target) {
    for (std::size_t i = 0; i + 1 < curve.mean_rate.size(); ++i) {
        const double lo = curve.mean_rate[i];
        const double hi = curve.mean_rate[i + 1];
        if (target >= lo && target <= hi) {
            const double frac = hi > lo ? (target - lo) / (hi - lo) : 0.0;
            return curve.snr_db[i] + frac * (curve.snr_db[i + 1] - curve.snr_db[i]);
        }
    }
    throw std::invalid_argument("snr_gap: target rate " + std::to_string(target) +
                                " outside curve range");
}

}  // namespace

double snr_gap(const RateCurve& a, const RateCurve& b, double target_rate) {
    return snr_at_rate(b, target_rate) - snr_at_rate(a, target_rate);
}

double distortion(const SemiUnitaryMatrix& w, const SemiUnitaryMatrix& p) {
    if (w.nt() != p.nt() || w.ns() != p.ns()) {
        throw std::invalid_argument("distortion: dimension mismatch");
    }
    const double err = (subspace_projector(p) - subspace_projector(w)).squaredNorm();
    return err / (2.0 * w.ns());
}

std::vector<DistortionRow> distortion_sweep(const std::vector<std::pair<int, int>>& dims,
                                            int trials, std::uint64_t seed, int threads) {
    if (trials < 1) throw std::invalid_argument("distortion_sweep: trials must be >= 1");
    std::vector<DistortionRow> rows;
    rows.reserve(dims.size());
    for (const auto& [nt, ns] : dims) {
        const std::vector<SparsityPattern> patterns = enumerate_patterns(nt, ns);
        std::vector<double> sigma(static_cast<std::size_t>(trials));
        parallel_for(trials, threads, [&](std::int64_t t) {
            const std::uint64_t point_seed =
                derive_seed(seed, "distortion", (static_cast<std::uint64_t>(nt) << 32) ^
                                                    (static_cast<std::uint64_t>(ns) << 20) ^
                                                    static_cast<std::uint64_t>(t));
            const SemiUnitaryMatrix w = random_grassmann_point(nt, ns, point_seed);
            const SpcaResult result = spca_sparsify(w, patterns);
            sigma[static_cast<std::size_t>(t)] = distortion(w, result.sparse);
        });

        double sum = 0.0;
        for (double v : sigma) sum += v;
        const double mean = sum / trials;
        double var = 0.0;
        for (double v : sigma) var += (v - mean) * (v - mean);
        var = trials > 1 ? var / (trials - 1) : 0.0;
        rows.push_back({nt, ns, trials, mean, std::sqrt(var / trials)});
    }
    return rows;
}

}  // namespace sparsecode
