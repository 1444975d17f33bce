// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sparsecode/codebook.hpp"
#include "sparsecode/grassmann.hpp"
#include "sparsecode/patterns.hpp"

#include <optional>
#include <vector>

namespace sparsecode {

/// Outcome of one exact-sparsification attempt for a fixed pattern.
/// Infeasibility is a value, not an error.
struct ExactAttemptResult {
    bool feasible = false;
    std::optional<ComplexMatrix> unitary;         // ns x ns, ||U^H U - I||_F <= 1e-9
    std::optional<SemiUnitaryMatrix> sparse;      // support of column j inside block j, exactly
};

/// Projector onto ker(W[J,:]): Q = I_ns - pinv(W[J,:]) W[J,:].
ComplexMatrix nullspace_projector(const SemiUnitaryMatrix& w, const SupportSet& jset);

/// Sequentially builds unitary columns u_j in ker(W[J_j,:]) orthogonal to the
/// previously accepted ones. The probe at step j is the dominant left singular
/// vector of (I - sum u_m u_m^H) Q_j; the step succeeds when that singular
/// value exceeds tol and the candidate actually lies in the kernel (residual
/// ||W[J_j,:] u_j|| <= tol). On success P = W U with off-support entries
/// snapped to exact zero and columns renormalized.
ExactAttemptResult try_exact(const SemiUnitaryMatrix& w, const SparsityPattern& pattern,
                             double tol = kFeasibilityTolerance);

struct SpcaBlockResult {
    double lambda_max;      // in [0, 1]: top eigenvalue of a projector submatrix
    ComplexVector column;   // length nt, unit norm, support inside iset
};

/// Best unit column supported on iset: top eigenpair of A = (W W^H)[iset, iset]
/// embedded back into the full index range.
SpcaBlockResult spca_block(const SemiUnitaryMatrix& w, const SupportSet& iset);

struct SpcaResult {
    SparsityPattern pattern;
    double objective = 0.0;   // sum_j lambda_max(A_j), in [0, ns]
    SemiUnitaryMatrix sparse;
};

/// Exhaustive pattern search maximizing the summed top eigenvalues; ties go to
/// the earliest pattern in canonical order.
SpcaResult spca_sparsify(const SemiUnitaryMatrix& w, const std::vector<SparsityPattern>& patterns);

enum class SparsifyMethod { Exact, Spca };

struct SparsifyReport {
    int index = 0;                       // 1-based feedback index
    SparsifyMethod method = SparsifyMethod::Exact;
    SparsityPattern pattern;
    double chordal_dist = 0.0;
    double distortion = 0.0;             // chordal_dist^2 / ns
};

struct SparsifyOutcome {
    Codebook sparse;
    std::vector<SparsifyReport> reports;
};

/// Per index: first feasible pattern in canonical order wins the exact path;
/// otherwise the SPCA search over all patterns decides. Index order and
/// codebook length are preserved. Entries may be processed concurrently.
SparsifyOutcome build_sparse_codebook(const Codebook& dense, double tol = kFeasibilityTolerance,
                                      int threads = 0);

const char* to_string(SparsifyMethod method);

}  // namespace sparsecode
