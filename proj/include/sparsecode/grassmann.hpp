// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sparsecode/types.hpp"

#include <cstdint>

namespace sparsecode {

/// A point on the Grassmann manifold G(nt, ns), stored as one concrete
/// representative with orthonormal columns. Subspace comparisons must go
/// through chordal_distance or subspace_projector so that the choice of
/// representative never matters.
class SemiUnitaryMatrix {
public:
    /// Validates orthonormal columns: ||m^H m - I||_F <= tol.
    explicit SemiUnitaryMatrix(ComplexMatrix m, double tol = 1e-10);

    int nt() const { return static_cast<int>(m_.rows()); }
    int ns() const { return static_cast<int>(m_.cols()); }
    const ComplexMatrix& matrix() const { return m_; }

private:
    ComplexMatrix m_;
};

/// Chordal distance sqrt(ns - ||a^H b||_F^2), clamped at zero against roundoff.
double chordal_distance(const SemiUnitaryMatrix& a, const SemiUnitaryMatrix& b);

/// Haar-distributed point: QR of an i.i.d. complex Gaussian matrix with the
/// R diagonal made real-positive. Deterministic given the seed.
SemiUnitaryMatrix random_grassmann_point(int nt, int ns, std::uint64_t rng_seed);

/// The nt x nt Hermitian projector a a^H onto the column span.
ComplexMatrix subspace_projector(const SemiUnitaryMatrix& a);

}  // namespace sparsecode
