// SPDX-License-Identifier: Apache-2.0
#include "sparsecode/sparsifier.hpp"

#include "sparsecode/kernels.hpp"
#include "sparsecode/parallel.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace sparsecode {

namespace {

ComplexMatrix rows_subset(const ComplexMatrix& m, const SupportSet& set) {
    ComplexMatrix out(set.size(), m.cols());
    for (int r = 0; r < set.size(); ++r) {
        out.row(r) = m.row(set.indices[static_cast<std::size_t>(r)] - 1);
    }
    return out;
}

void check_support(const SupportSet& set, int nt, const char* op) {
    if (set.indices.empty()) {
        throw std::invalid_argument(std::string(op) + ": empty support set");
    }
    int prev = 0;
    for (int idx : set.indices) {
        if (idx <= prev || idx > nt) {
            throw std::invalid_argument(std::string(op) + ": support indices must be strictly increasing in 1.." +
                                        std::to_string(nt));
        }
        prev = idx;
    }
}

/// Phase factor making the column's first entry above the cutoff real-positive.
cxd column_phase_fix(const ComplexVector& col, double cutoff = 1e-14) {
    for (Eigen::Index i = 0; i < col.size(); ++i) {
        const double mag = std::abs(col(i));
        if (mag > cutoff) return std::conj(col(i)) / mag;
    }
    return cxd(1.0, 0.0);
}

}  // namespace

ComplexMatrix nullspace_projector(const SemiUnitaryMatrix& w, const SupportSet& jset) {
    check_support(jset, w.nt(), "nullspace_projector");
    const ComplexMatrix wj = rows_subset(w.matrix(), jset);
    const Eigen::Index ns = w.ns();
    return ComplexMatrix::Identity(ns, ns) - pseudoinverse(wj) * wj;
}

ExactAttemptResult try_exact(const SemiUnitaryMatrix& w, const SparsityPattern& pattern, double tol) {
    const int nt = w.nt();
    const int ns = w.ns();
    if (pattern.nt != nt || pattern.ns() != ns) {
        throw std::invalid_argument("try_exact: pattern dimensions do not match precoder");
    }

    ComplexMatrix unitary(ns, ns);
    ComplexMatrix deflate = ComplexMatrix::Identity(ns, ns);

    for (int j = 0; j < ns; ++j) {
        const SupportSet jset = complement(pattern, j);
        const ComplexMatrix q = jset.indices.empty()
            ? ComplexMatrix(ComplexMatrix::Identity(ns, ns))
            : nullspace_projector(w, jset);

        Eigen::JacobiSVD<ComplexMatrix> probe(deflate * q, Eigen::ComputeThinU);
        if (probe.singularValues()(0) <= tol) {
            return {};  // ker(W[J_j,:]) has no direction left orthogonal to u_1..u_{j-1}
        }
        const ComplexVector u = probe.matrixU().col(0);
        // The candidate must genuinely lie in the kernel; a large singular
        // value alone does not rule out a near-miss intersection.
        if (!jset.indices.empty() && (rows_subset(w.matrix(), jset) * u).norm() > tol) {
            return {};
        }
        unitary.col(j) = u;
        deflate -= u * u.adjoint();
    }

    ComplexMatrix p = w.matrix() * unitary;
    for (int j = 0; j < ns; ++j) {
        const SupportSet jset = complement(pattern, j);
        for (int idx : jset.indices) p(idx - 1, j) = cxd(0.0, 0.0);
        const double norm = p.col(j).norm();
        if (norm <= 0.0) return {};
        p.col(j) /= norm;
        const cxd phase = column_phase_fix(p.col(j));
        p.col(j) *= phase;
        unitary.col(j) *= phase;  // keep P ~= W U up to the snap perturbation
    }

    ExactAttemptResult result;
    result.feasible = true;
    result.unitary = std::move(unitary);
    result.sparse.emplace(std::move(p));
    return result;
}

SpcaBlockResult spca_block(const SemiUnitaryMatrix& w, const SupportSet& iset) {
    check_support(iset, w.nt(), "spca_block");
    const ComplexMatrix wi = rows_subset(w.matrix(), iset);
    const ComplexMatrix a = wi * wi.adjoint();  // (W W^H)[iset, iset]
    EigPair eig = hermitian_top_eigpair(a);

    ComplexVector column = ComplexVector::Zero(w.nt());
    for (int r = 0; r < iset.size(); ++r) {
        column(iset.indices[static_cast<std::size_t>(r)] - 1) = eig.eigvec(r);
    }
    column *= column_phase_fix(column);
    return {eig.lambda_max, std::move(column)};
}

SpcaResult spca_sparsify(const SemiUnitaryMatrix& w, const std::vector<SparsityPattern>& patterns) {
    if (patterns.empty()) {
        throw std::invalid_argument("spca_sparsify: pattern list is empty");
    }

    int best_index = -1;
    double best_objective = -1.0;
    for (int k = 0; k < static_cast<int>(patterns.size()); ++k) {
        const auto& pattern = patterns[static_cast<std::size_t>(k)];
        if (pattern.nt != w.nt() || pattern.ns() != w.ns()) {
            throw std::invalid_argument("spca_sparsify: pattern dimensions do not match precoder");
        }
        double objective = 0.0;
        for (const SupportSet& block : pattern.blocks) {
            const ComplexMatrix wi = rows_subset(w.matrix(), block);
            if (block.size() == 1) {
                objective += wi.row(0).squaredNorm();
            } else {
                objective += hermitian_top_eigpair(wi * wi.adjoint()).lambda_max;
            }
        }
        if (objective > best_objective) {
            best_objective = objective;
            best_index = k;
        }
    }

    const SparsityPattern& winner = patterns[static_cast<std::size_t>(best_index)];
    ComplexMatrix p = ComplexMatrix::Zero(w.nt(), w.ns());
    for (int j = 0; j < winner.ns(); ++j) {
        p.col(j) = spca_block(w, winner.blocks[static_cast<std::size_t>(j)]).column;
    }
    return {winner, best_objective, SemiUnitaryMatrix(std::move(p))};
}

SparsifyOutcome build_sparse_codebook(const Codebook& dense, double tol, int threads) {
    if (dense.entries.empty()) {
        throw std::invalid_argument("build_sparse_codebook: dense codebook is empty");
    }
    const std::vector<SparsityPattern> patterns = enumerate_patterns(dense.nt, dense.ns);

    std::vector<std::optional<SemiUnitaryMatrix>> outputs(static_cast<std::size_t>(dense.size()));
    std::vector<SparsifyReport> reports(static_cast<std::size_t>(dense.size()));

    parallel_for(dense.size(), threads, [&](std::int64_t i) {
        const SemiUnitaryMatrix& w = dense.entries[static_cast<std::size_t>(i)];
        SparsifyReport report;
        report.index = static_cast<int>(i) + 1;

        std::optional<SemiUnitaryMatrix> sparse;
        for (const SparsityPattern& pattern : patterns) {
            ExactAttemptResult attempt = try_exact(w, pattern, tol);
            if (attempt.feasible) {
                sparse = std::move(attempt.sparse);
                report.method = SparsifyMethod::Exact;
                report.pattern = pattern;
                break;
            }
        }
        if (!sparse) {
            SpcaResult spca = spca_sparsify(w, patterns);
            sparse = std::move(spca.sparse);
            report.method = SparsifyMethod::Spca;
            report.pattern = std::move(spca.pattern);
        }

        report.chordal_dist = chordal_distance(w, *sparse);
        report.distortion = report.chordal_dist * report.chordal_dist / dense.ns;
        outputs[static_cast<std::size_t>(i)] = std::move(sparse);
        reports[static_cast<std::size_t>(i)] = std::move(report);
    });

    SparsifyOutcome outcome;
    outcome.sparse.nt = dense.nt;
    outcome.sparse.ns = dense.ns;
    outcome.sparse.label = dense.label.empty() ? "sparse" : dense.label + "-sparse";
    outcome.sparse.entries.reserve(outputs.size());
    for (auto& entry : outputs) outcome.sparse.entries.push_back(std::move(*entry));
    outcome.reports = std::move(reports);
    return outcome;
}

const char* to_string(SparsifyMethod method) {
    return method == SparsifyMethod::Exact ? "exact" : "spca";
}

}  // namespace sparsecode
