// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sparsecode/kernels.hpp"
#include "sparsecode/rng.hpp"
#include "test_helpers.hpp"

#include <Eigen/QR>

using namespace sparsecode;
using sparsecode::test::kJay;
using sparsecode::test::kOne;

namespace {

ComplexMatrix random_semi_unitary(int rows, int cols, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::HouseholderQR<ComplexMatrix> qr(rng.complex_gaussian_matrix(rows, cols));
    return qr.householderQ() * ComplexMatrix::Identity(rows, cols);
}

// Power iteration run to convergence; independent route for eigenpair checks.
std::pair<double, ComplexVector> power_iteration(const ComplexMatrix& m, std::uint64_t seed) {
    Rng rng(seed);
    ComplexVector v = rng.complex_gaussian_matrix(m.rows(), 1);
    v /= v.norm();
    double lambda = 0.0;
    for (int it = 0; it < 100000; ++it) {
        ComplexVector next = m * v;
        const double norm = next.norm();
        if (norm == 0.0) break;
        next /= norm;
        const double next_lambda = (next.adjoint() * m * next)(0).real();
        const double delta = (next - v).norm();
        v = next;
        lambda = next_lambda;
        if (delta < 1e-13) break;
    }
    return {lambda, v};
}

}  // namespace

TEST_CASE("svd of identity and zero matrices") {
    const SvdResult id = svd(ComplexMatrix::Identity(2, 2));
    CHECK(id.singular_values(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(id.singular_values(1) == doctest::Approx(1.0).epsilon(1e-12));

    const SvdResult zero = svd(ComplexMatrix::Zero(3, 2));
    CHECK(zero.singular_values(0) == 0.0);
    CHECK(zero.singular_values(1) == 0.0);
}

TEST_CASE("svd of a semi-unitary matrix has unit singular values") {
    const ComplexMatrix q = random_semi_unitary(4, 2, 17);
    const SvdResult r = svd(q);
    CHECK(std::abs(r.singular_values(0) - 1.0) < 1e-12);
    CHECK(std::abs(r.singular_values(1) - 1.0) < 1e-12);
}

TEST_CASE("svd reconstructs and returns orthonormal factors") {
    Rng rng(3);
    const ComplexMatrix m = rng.complex_gaussian_matrix(5, 3);
    const SvdResult r = svd(m);
    const ComplexMatrix rebuilt = r.u * r.singular_values.asDiagonal().toDenseMatrix().cast<cxd>() * r.vh;
    CHECK((rebuilt - m).norm() <= 1e-10 * m.norm());
    CHECK((r.u.adjoint() * r.u - ComplexMatrix::Identity(3, 3)).norm() < 1e-12);
    CHECK((r.vh * r.vh.adjoint() - ComplexMatrix::Identity(3, 3)).norm() < 1e-12);
    for (int i = 1; i < r.singular_values.size(); ++i) {
        CHECK(r.singular_values(i - 1) >= r.singular_values(i));
    }
}

TEST_CASE("nullspace of the worked-example submatrix spans [1,1]/sqrt(2)") {
    ComplexMatrix m(2, 2);
    m << kOne, -kOne,
         -kJay, kJay;
    m *= 0.5;
    const ComplexMatrix basis = nullspace_basis(m);
    REQUIRE(basis.cols() == 1);
    ComplexVector expected(2);
    expected << kOne, kOne;
    expected /= std::sqrt(2.0);
    CHECK(std::abs(std::abs((expected.adjoint() * basis.col(0))(0)) - 1.0) < 1e-12);
}

TEST_CASE("nullspace edge cases") {
    CHECK(nullspace_basis(ComplexMatrix::Identity(2, 2)).cols() == 0);
    const ComplexMatrix basis = nullspace_basis(ComplexMatrix::Zero(1, 3));
    CHECK(basis.cols() == 3);
    CHECK((basis.adjoint() * basis - ComplexMatrix::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("nullspace columns are annihilated") {
    Rng rng(11);
    for (int rows : {1, 2, 3}) {
        ComplexMatrix m = rng.complex_gaussian_matrix(rows, 4);
        m.row(0).setZero();  // force some rank deficiency patterns
        const ComplexMatrix basis = nullspace_basis(m);
        for (int c = 0; c < basis.cols(); ++c) {
            CHECK((m * basis.col(c)).norm() <= 10 * kRankTolerance * m.norm());
        }
    }
}

TEST_CASE("pseudoinverse basics") {
    CHECK((pseudoinverse(ComplexMatrix::Identity(3, 3)) - ComplexMatrix::Identity(3, 3)).norm() < 1e-12);

    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 2.0;
    const ComplexMatrix dp = pseudoinverse(d);
    CHECK(std::abs(dp(0, 0) - cxd(0.5, 0.0)) < 1e-14);
    CHECK(std::abs(dp(1, 1)) == 0.0);
}

TEST_CASE("pseudoinverse satisfies the four Penrose conditions") {
    Rng rng(5);
    const ComplexMatrix m = rng.complex_gaussian_matrix(2, 4);
    const ComplexMatrix p = pseudoinverse(m);
    const double scale = 1e-10 * std::max(1.0, m.norm());
    CHECK((m * p * m - m).norm() < scale);
    CHECK((p * m * p - p).norm() < scale);
    CHECK(((m * p).adjoint() - m * p).norm() < scale);
    CHECK(((p * m).adjoint() - p * m).norm() < scale);
}

TEST_CASE("pseudoinverse of a semi-unitary matrix is its adjoint") {
    const ComplexMatrix q = random_semi_unitary(6, 3, 23);
    CHECK((pseudoinverse(q) - q.adjoint()).norm() < 1e-10);
}

TEST_CASE("hermitian top eigenpair on closed-form cases") {
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    const EigPair p1 = hermitian_top_eigpair(d);
    CHECK(p1.lambda_max == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(std::abs(p1.eigvec(0)) - 1.0) < 1e-12);

    const ComplexMatrix ones = 0.5 * ComplexMatrix::Ones(2, 2);
    const EigPair p2 = hermitian_top_eigpair(ones);
    CHECK(p2.lambda_max == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(std::abs(p2.eigvec(0)) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(p2.eigvec(0) - p2.eigvec(1)) < 1e-12);
}

TEST_CASE("hermitian top eigenpair matches power iteration") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        const ComplexMatrix w = random_semi_unitary(5, 2, 100 + seed);
        // principal submatrix of the projector, as in the sparsifier hot path
        const ComplexMatrix a = (w * w.adjoint()).topLeftCorner(3, 3);
        const EigPair p = hermitian_top_eigpair(a);
        const auto [lambda, v] = power_iteration(a, seed);
        CHECK(std::abs(p.lambda_max - lambda) < 1e-9);
        CHECK((a * p.eigvec - p.lambda_max * p.eigvec).norm() <= 1e-9);
        CHECK(std::abs(p.eigvec.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("hermitian top eigenpair rejects non-Hermitian input") {
    Rng rng(7);
    ComplexMatrix m = rng.complex_gaussian_matrix(3, 3);
    m(0, 1) += cxd(0.5, 0.5);  // well beyond the symmetrization tolerance
    CHECK_THROWS_AS(hermitian_top_eigpair(m), std::invalid_argument);
    CHECK_THROWS_AS(hermitian_top_eigpair(rng.complex_gaussian_matrix(2, 3)), std::invalid_argument);
}

TEST_CASE("dft closed forms") {
    ComplexVector ones = ComplexVector::Constant(4, kOne);
    const ComplexVector spectrum = dft(ones);
    CHECK(std::abs(spectrum(0) - cxd(2.0, 0.0)) < 1e-12);
    for (int i = 1; i < 4; ++i) CHECK(std::abs(spectrum(i)) < 1e-12);

    ComplexVector delta = ComplexVector::Zero(16);
    delta(0) = kOne;
    const ComplexVector flat = dft(delta);
    for (int i = 0; i < 16; ++i) CHECK(std::abs(flat(i) - cxd(0.25, 0.0)) < 1e-12);
}

TEST_CASE("dft is unitary: Parseval and round-trip") {
    Rng rng(9);
    for (int n : {1, 2, 3, 5, 17, 624, 1024, 4096, 8192}) {
        const ComplexVector x = rng.complex_gaussian_matrix(n, 1);
        const ComplexVector y = dft(x);
        CHECK(std::abs(y.norm() - x.norm()) < 1e-10 * x.norm());
        CHECK((idft(y) - x).norm() <= 1e-10 * x.norm());
    }
}
