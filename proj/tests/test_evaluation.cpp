// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sparsecode/evaluation.hpp"
#include "sparsecode/sparsifier.hpp"
#include "test_helpers.hpp"

#include <cmath>

using namespace sparsecode;
namespace th = sparsecode::test;

namespace {

// Independent argmax oracle with its own log-det route (eigenvalues instead of
// the Cholesky used by the implementation).
int brute_force_select(const Codebook& cb, const std::vector<ChannelSample>& channels, double rho) {
    int best = 0;
    double best_rate = -1.0;
    for (int i = 0; i < cb.size(); ++i) {
        double sum = 0.0;
        for (const auto& h : channels) {
            const ComplexMatrix hw = h * cb.entries[static_cast<std::size_t>(i)].matrix();
            const ComplexMatrix m =
                ComplexMatrix::Identity(cb.ns, cb.ns) + (rho / cb.ns) * hw.adjoint() * hw;
            double log2det = 0.0;
            for (const auto& ev : m.eigenvalues()) log2det += std::log2(ev.real());
            sum += log2det;
        }
        const double r = sum / static_cast<double>(channels.size());
        if (r > best_rate) {
            best_rate = r;
            best = i;
        }
    }
    return best;
}

Codebook identity_pair_codebook() {
    Codebook cb;
    cb.nt = 4;
    cb.ns = 2;
    ComplexMatrix a = ComplexMatrix::Zero(4, 2);
    a(0, 0) = a(1, 1) = cxd(1.0, 0.0);
    ComplexMatrix b = ComplexMatrix::Zero(4, 2);
    b(2, 0) = b(3, 1) = cxd(1.0, 0.0);
    cb.entries.emplace_back(a);
    cb.entries.emplace_back(b);
    return cb;
}

}  // namespace

TEST_CASE("rate vanishes as rho goes to zero") {
    Rng rng(1);
    const SemiUnitaryMatrix w = random_grassmann_point(4, 2, 1);
    const std::vector<ChannelSample> channels{rayleigh_channel(8, 4, rng)};
    CHECK(rate(w, channels, 1e-12) < 1e-9);
    CHECK(rate(w, channels, 1.0) > 0.0);
    CHECK_THROWS_AS(rate(w, channels, 0.0), std::invalid_argument);
}

TEST_CASE("rate has the closed form for an identity channel") {
    ComplexMatrix e = ComplexMatrix::Zero(4, 2);
    e(0, 0) = e(1, 1) = cxd(1.0, 0.0);
    const std::vector<ChannelSample> channels{ComplexMatrix::Identity(4, 4)};
    // log2 det(I + (ns/ns) I) = ns
    CHECK(rate(SemiUnitaryMatrix(e), channels, 2.0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("rate is invariant under right-unitary rotation") {
    Rng rng(2);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const SemiUnitaryMatrix w = random_grassmann_point(4, 2, seed);
        const SemiUnitaryMatrix wu(w.matrix() * th::random_unitary(2, 30 + seed));
        const std::vector<ChannelSample> channels{rayleigh_channel(6, 4, rng)};
        const double rho = 3.0;
        CHECK(std::abs(rate(w, channels, rho) - rate(wu, channels, rho)) < 1e-10);
    }
}

TEST_CASE("select_index basics and the brute-force oracle") {
    Codebook single;
    single.nt = 4;
    single.ns = 2;
    single.entries.push_back(random_grassmann_point(4, 2, 0));
    Rng rng(3);
    const std::vector<ChannelSample> channels{rayleigh_channel(4, 4, rng)};
    CHECK(select_index(single, channels, 1.0) == 0);

    // a channel concentrated on antennas 1-2 prefers the e1/e2 entry
    ComplexMatrix h = ComplexMatrix::Zero(4, 4);
    h(0, 0) = cxd(2.0, 0.0);
    h(1, 1) = cxd(1.0, 0.0);
    h(2, 2) = cxd(0.1, 0.0);
    h(3, 3) = cxd(0.1, 0.0);
    CHECK(select_index(identity_pair_codebook(), {h}, 5.0) == 0);

    const Codebook nr = nr_codebook_4x2();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng trial_rng(100 + seed);
        const std::vector<ChannelSample> ch{rayleigh_channel(8, 4, trial_rng)};
        CHECK(select_index(nr, ch, 4.0) == brute_force_select(nr, ch, 4.0));
    }
    CHECK(feedback_bits(nr) == 3);
}

TEST_CASE("selection is stable when entries are rotated in place") {
    const Codebook nr = nr_codebook_4x2();
    Codebook rotated = nr;
    for (int i = 0; i < nr.size(); ++i) {
        rotated.entries[static_cast<std::size_t>(i)] = SemiUnitaryMatrix(
            nr.entries[static_cast<std::size_t>(i)].matrix() *
            th::random_unitary(2, 60 + static_cast<std::uint64_t>(i)));
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(200 + seed);
        const std::vector<ChannelSample> ch{rayleigh_channel(8, 4, rng)};
        CHECK(select_index(nr, ch, 2.5) == select_index(rotated, ch, 2.5));
    }
}

TEST_CASE("rate_experiment with sparse == dense is an exact tie") {
    const Codebook nr = nr_codebook_4x2();
    RateConfig cfg;
    cfg.nt = 4;
    cfg.ns = 2;
    cfg.nr = 8;
    cfg.snr_grid_db = {-5.0, 5.0, 15.0};
    cfg.trials = 200;
    cfg.seed = 42;
    const RateExperimentResult result = rate_experiment(cfg, nr, nr);
    for (std::size_t i = 0; i < cfg.snr_grid_db.size(); ++i) {
        CHECK(result.dense.mean_rate[i] == result.sparse.mean_rate[i]);
        CHECK(result.dense.std_err[i] == result.sparse.std_err[i]);
    }
}

TEST_CASE("rate_experiment on the NR pair shows no loss") {
    const Codebook dense = nr_codebook_4x2();
    const Codebook sparse = build_sparse_codebook(dense).sparse;
    RateConfig cfg;
    cfg.nt = 4;
    cfg.ns = 2;
    cfg.nr = 32;
    cfg.snr_grid_db = {-10.0, 0.0, 10.0, 20.0};
    cfg.trials = 2000;
    cfg.seed = 7;
    const RateExperimentResult result = rate_experiment(cfg, dense, sparse);
    for (std::size_t i = 0; i < cfg.snr_grid_db.size(); ++i) {
        const double diff = std::abs(result.dense.mean_rate[i] - result.sparse.mean_rate[i]);
        const double se = std::hypot(result.dense.std_err[i], result.sparse.std_err[i]);
        CHECK(diff <= 2.0 * se + 1e-12);
        if (i > 0) {
            CHECK(result.dense.mean_rate[i] >
                  result.dense.mean_rate[i - 1] - 3.0 * result.dense.std_err[i]);
        }
    }
}

TEST_CASE("rate_experiment is thread-count independent and validates sizes") {
    const Codebook dense = nr_codebook_4x2();
    RateConfig cfg;
    cfg.nt = 4;
    cfg.ns = 2;
    cfg.nr = 6;
    cfg.snr_grid_db = {0.0, 10.0};
    cfg.trials = 100;
    cfg.seed = 9;
    cfg.threads = 1;
    const RateExperimentResult a = rate_experiment(cfg, dense, dense);
    cfg.threads = 4;
    const RateExperimentResult b = rate_experiment(cfg, dense, dense);
    for (std::size_t i = 0; i < cfg.snr_grid_db.size(); ++i) {
        CHECK(a.dense.mean_rate[i] == b.dense.mean_rate[i]);
        CHECK(a.sparse.mean_rate[i] == b.sparse.mean_rate[i]);
    }

    Codebook shorter = dense;
    shorter.entries.pop_back();
    CHECK_THROWS_AS(rate_experiment(cfg, dense, shorter), std::invalid_argument);
}

TEST_CASE("snr_gap on constructed curves") {
    RateCurve a;
    a.snr_db = {0.0, 2.0, 4.0, 6.0};
    a.mean_rate = {1.0, 2.0, 3.0, 4.0};
    CHECK(snr_gap(a, a, 2.5) == doctest::Approx(0.0));

    RateCurve b = a;  // the same curve shifted right by exactly 1 dB
    for (auto& v : b.snr_db) v += 1.0;
    CHECK(snr_gap(a, b, 2.5) == doctest::Approx(1.0).epsilon(0.02));

    RateCurve a_shift = a, b_shift = b;
    for (auto& v : a_shift.snr_db) v += 3.0;
    for (auto& v : b_shift.snr_db) v += 3.0;
    CHECK(snr_gap(a_shift, b_shift, 2.5) == doctest::Approx(snr_gap(a, b, 2.5)).epsilon(1e-12));

    CHECK_THROWS_AS(snr_gap(a, b, 100.0), std::invalid_argument);
}

TEST_CASE("distortion closed forms and identity") {
    const SemiUnitaryMatrix w = random_grassmann_point(4, 2, 5);
    CHECK(distortion(w, w) <= 1e-12);

    ComplexMatrix a = ComplexMatrix::Zero(4, 2);
    a(0, 0) = a(1, 1) = cxd(1.0, 0.0);
    ComplexMatrix b = ComplexMatrix::Zero(4, 2);
    b(2, 0) = b(3, 1) = cxd(1.0, 0.0);
    CHECK(distortion(SemiUnitaryMatrix(a), SemiUnitaryMatrix(b)) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(distortion(th::dense_example_4x2(), th::sparse_example_4x2()) <= 1e-12);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const SemiUnitaryMatrix x = random_grassmann_point(5, 2, seed);
        const SemiUnitaryMatrix y = random_grassmann_point(5, 2, 50 + seed);
        const double d = chordal_distance(x, y);
        CHECK(std::abs(distortion(x, y) - d * d / 2.0) <= 1e-12);
    }
}

TEST_CASE("distortion_sweep is zero for square matrices and reproducible") {
    const auto rows = distortion_sweep({{2, 2}, {3, 3}}, 50, 1);
    for (const auto& row : rows) {
        CHECK(row.mean_sigma_e <= 1e-15);
        CHECK(row.trials == 50);
    }
    const auto a = distortion_sweep({{5, 2}}, 100, 3, 1);
    const auto b = distortion_sweep({{5, 2}}, 100, 3, 4);
    CHECK(a[0].mean_sigma_e == b[0].mean_sigma_e);
    CHECK(a[0].std_err == b[0].std_err);
    CHECK(a[0].mean_sigma_e > 0.0);
    CHECK(a[0].mean_sigma_e < 0.3);
}
