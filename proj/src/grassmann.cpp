// SPDX-License-Identifier: Apache-2.0
#include "sparsecode/grassmann.hpp"

#include "sparsecode/rng.hpp"

#include <Eigen/QR>

#include <cmath>
#include <string>

namespace sparsecode {

SemiUnitaryMatrix::SemiUnitaryMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
    if (m_.rows() < 1 || m_.cols() < 1 || m_.cols() > m_.rows()) {
        throw std::invalid_argument("SemiUnitaryMatrix: need nt >= ns >= 1, got " +
                                    std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
    }
    if (!all_finite(m_)) {
        throw std::invalid_argument("SemiUnitaryMatrix: non-finite entries");
    }
    const ComplexMatrix gram = m_.adjoint() * m_;
    const double err = (gram - ComplexMatrix::Identity(m_.cols(), m_.cols())).norm();
    if (err > tol) {
        throw std::invalid_argument("SemiUnitaryMatrix: columns not orthonormal (||W^H W - I||_F = " +
                                    std::to_string(err) + ")");
    }
}

double chordal_distance(const SemiUnitaryMatrix& a, const SemiUnitaryMatrix& b) {
    if (a.nt() != b.nt() || a.ns() != b.ns()) {
        throw std::invalid_argument("chordal_distance: dimension mismatch (" +
                                    std::to_string(a.nt()) + "x" + std::to_string(a.ns()) + " vs " +
                                    std::to_string(b.nt()) + "x" + std::to_string(b.ns()) + ")");
    }
    // ns - ||a^H b||_F^2 rewritten as a projection residual: the direct form
    // cancels catastrophically near zero (it cannot resolve distances below
    // ~sqrt(eps)), while ||(I - a a^H) b||_F^2 stays accurate and is the same
    // quantity for orthonormal columns. Averaging both residuals keeps the
    // result exactly symmetric in the arguments.
    const ComplexMatrix& am = a.matrix();
    const ComplexMatrix& bm = b.matrix();
    const double r_ab = (bm - am * (am.adjoint() * bm)).squaredNorm();
    const double r_ba = (am - bm * (bm.adjoint() * am)).squaredNorm();
    return std::sqrt(std::max(0.5 * (r_ab + r_ba), 0.0));
}

SemiUnitaryMatrix random_grassmann_point(int nt, int ns, std::uint64_t rng_seed) {
    if (ns < 1 || ns > nt) {
        throw std::invalid_argument("random_grassmann_point: need 1 <= ns <= nt");
    }
    Rng rng(derive_seed(rng_seed, "grassmann-point"));
    const ComplexMatrix g = rng.complex_gaussian_matrix(nt, ns);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(nt, ns);
    const ComplexMatrix r = qr.matrixQR().topRows(ns).triangularView<Eigen::Upper>();
    // Fix the QR phase convention (R diagonal real-positive) so the map from
    // Gaussians to points is unique and the output is Haar distributed.
    for (int j = 0; j < ns; ++j) {
        const cxd d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return SemiUnitaryMatrix(std::move(q));
}

ComplexMatrix subspace_projector(const SemiUnitaryMatrix& a) {
    return a.matrix() * a.matrix().adjoint();
}

}  // namespace sparsecode
