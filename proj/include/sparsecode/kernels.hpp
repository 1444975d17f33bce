// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sparsecode/types.hpp"

namespace sparsecode {

struct SvdResult {
    ComplexMatrix u;               // rows x k, orthonormal columns
    RealVector singular_values;    // k nonnegative values, descending
    ComplexMatrix vh;              // k x cols, orthonormal rows
};

/// Thin SVD, m = u * diag(s) * vh.
SvdResult svd(const ComplexMatrix& m);

/// Orthonormal basis of { x : m x = 0 }. Singular values <= tol * sigma_max
/// count as zero; a trivial null space yields a cols x 0 matrix.
ComplexMatrix nullspace_basis(const ComplexMatrix& m, double tol = kRankTolerance);

/// Moore-Penrose pseudoinverse with the same rank cutoff as nullspace_basis.
ComplexMatrix pseudoinverse(const ComplexMatrix& m, double tol = kRankTolerance);

struct EigPair {
    double lambda_max;
    ComplexVector eigvec;  // unit norm
};

/// Largest eigenpair of a Hermitian matrix. The input is symmetrized as
/// (m + m^H)/2 first; deviations beyond 1e-10 * max(1, ||m||_F) are rejected.
EigPair hermitian_top_eigpair(const ComplexMatrix& m);

/// Unitary DFT / inverse DFT (1/sqrt(N) both ways), any length >= 1.
ComplexVector dft(const ComplexVector& x);
ComplexVector idft(const ComplexVector& x);

}  // namespace sparsecode
