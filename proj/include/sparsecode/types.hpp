// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace sparsecode {

using cxd = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Thrown when a decomposition or downstream numeric step fails.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Default relative rank cutoff: singular values below tol * sigma_max count as zero.
inline constexpr double kRankTolerance = 1e-8;

/// Default feasibility threshold for the exact sparsification path.
inline constexpr double kFeasibilityTolerance = 1e-8;

inline bool all_finite(const ComplexMatrix& m) {
    return m.allFinite();
}

}  // namespace sparsecode
