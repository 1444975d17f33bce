// SPDX-License-Identifier: Apache-2.0
#include "sparsecode/kernels.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace sparsecode {

namespace {

std::string dims_of(const ComplexMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_finite(const ComplexMatrix& m, const char* op) {
    if (!all_finite(m)) {
        throw std::invalid_argument(std::string(op) + ": non-finite entries in " + dims_of(m) + " matrix");
    }
}

int numeric_rank(const RealVector& s, double tol) {
    if (s.size() == 0) return 0;
    const double cutoff = tol * s(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > cutoff && s(i) > 0.0) ++rank;
    }
    return rank;
}

}  // namespace

SvdResult svd(const ComplexMatrix& m) {
    require_finite(m, "svd");
    Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (solver.info() != Eigen::Success) {
        throw numerical_error("svd: decomposition failed for " + dims_of(m) + " matrix");
    }
    return {solver.matrixU(), solver.singularValues(), solver.matrixV().adjoint()};
}

ComplexMatrix nullspace_basis(const ComplexMatrix& m, double tol) {
    require_finite(m, "nullspace_basis");
    if (tol < 0.0) throw std::invalid_argument("nullspace_basis: tol must be nonnegative");
    Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeFullV);
    if (solver.info() != Eigen::Success) {
        throw numerical_error("nullspace_basis: svd failed for " + dims_of(m) + " matrix");
    }
    const int rank = numeric_rank(solver.singularValues(), tol);
    const Eigen::Index cols = m.cols();
    return solver.matrixV().rightCols(cols - rank);
}

ComplexMatrix pseudoinverse(const ComplexMatrix& m, double tol) {
    require_finite(m, "pseudoinverse");
    if (tol < 0.0) throw std::invalid_argument("pseudoinverse: tol must be nonnegative");
    Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (solver.info() != Eigen::Success) {
        throw numerical_error("pseudoinverse: svd failed for " + dims_of(m) + " matrix");
    }
    const RealVector& s = solver.singularValues();
    const int rank = numeric_rank(s, tol);
    RealVector inv = RealVector::Zero(s.size());
    for (int i = 0; i < rank; ++i) inv(i) = 1.0 / s(i);
    return solver.matrixV() * inv.asDiagonal() * solver.matrixU().adjoint();
}

EigPair hermitian_top_eigpair(const ComplexMatrix& m) {
    require_finite(m, "hermitian_top_eigpair");
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("hermitian_top_eigpair: matrix is " + dims_of(m) + ", expected square");
    }
    const double scale = std::max(1.0, m.norm());
    if ((m - m.adjoint()).norm() > 1e-10 * scale) {
        throw std::invalid_argument("hermitian_top_eigpair: matrix deviates from Hermitian beyond tolerance");
    }
    if (m.rows() == 1) {
        ComplexVector v(1);
        v(0) = cxd(1.0, 0.0);
        return {m(0, 0).real(), v};
    }
    const ComplexMatrix h = 0.5 * (m + m.adjoint());
    if (m.rows() == 2) {
        // closed form; the 2x2 case dominates the pattern search inner loop
        const double a = h(0, 0).real();
        const double c = h(1, 1).real();
        const cxd b = h(0, 1);
        const double half_gap = 0.5 * (a - c);
        const double disc = std::sqrt(half_gap * half_gap + std::norm(b));
        const double lambda = 0.5 * (a + c) + disc;
        ComplexVector v(2);
        if (std::abs(b) > 1e-300) {
            v(0) = b;
            v(1) = cxd(lambda - a, 0.0);
            const double n = v.norm();
            if (n > 0.0) {
                v /= n;
                return {lambda, v};
            }
        }
        v.setZero();
        v(a >= c ? 0 : 1) = cxd(1.0, 0.0);
        return {lambda, v};
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw numerical_error("hermitian_top_eigpair: eigendecomposition failed for " + dims_of(m) + " matrix");
    }
    const Eigen::Index last = m.rows() - 1;  // eigenvalues ascend
    ComplexVector v = solver.eigenvectors().col(last);
    v /= v.norm();
    return {solver.eigenvalues()(last), v};
}

namespace {

// FFTW plans are cached per (length, direction). Planning is serialized; the
// new-array execute API keeps execution thread-safe as long as every caller
// uses fftw_malloc-aligned scratch buffers.
class FftwPlanCache {
public:
    static FftwPlanCache& instance() {
        static FftwPlanCache cache;
        return cache;
    }

    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        const auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        Buffer in(n), out(n);
        fftw_plan plan = fftw_plan_dft_1d(n, in.data, out.data, sign, FFTW_ESTIMATE);
        if (plan == nullptr) {
            throw numerical_error("dft: fftw planning failed for length " + std::to_string(n));
        }
        plans_.emplace(key, plan);
        return plan;
    }

    struct Buffer {
        explicit Buffer(int n)
            : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(n)))) {
            if (data == nullptr) throw std::bad_alloc();
        }
        ~Buffer() { fftw_free(data); }
        Buffer(const Buffer&) = delete;
        Buffer& operator=(const Buffer&) = delete;
        fftw_complex* data;
    };

private:
    FftwPlanCache() = default;
    ~FftwPlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

ComplexVector transform(const ComplexVector& x, int sign) {
    if (x.size() < 1) throw std::invalid_argument("dft: length must be >= 1");
    const int n = static_cast<int>(x.size());
    fftw_plan plan = FftwPlanCache::instance().get(n, sign);

    FftwPlanCache::Buffer in(n), out(n);
    for (int i = 0; i < n; ++i) {
        in.data[i][0] = x(i).real();
        in.data[i][1] = x(i).imag();
    }
    fftw_execute_dft(plan, in.data, out.data);

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    ComplexVector y(n);
    for (int i = 0; i < n; ++i) {
        y(i) = cxd(out.data[i][0] * scale, out.data[i][1] * scale);
    }
    return y;
}

}  // namespace

ComplexVector dft(const ComplexVector& x) { return transform(x, FFTW_FORWARD); }

ComplexVector idft(const ComplexVector& x) { return transform(x, FFTW_BACKWARD); }

}  // namespace sparsecode
