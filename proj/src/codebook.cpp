// SPDX-License-Identifier: Apache-2.0
#include "sparsecode/codebook.hpp"

#include "sparsecode/rng.hpp"

#include <nlohmann/json.hpp>

#include <Eigen/QR>

#include <fstream>
#include <limits>

namespace sparsecode {

using nlohmann::json;

namespace {

json matrix_to_json(const ComplexMatrix& m) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json re_row = json::array();
        json im_row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            re_row.push_back(m(r, c).real());
            im_row.push_back(m(r, c).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const json& entry, int nt, int ns, int index) {
    const auto& re = entry.at("re");
    const auto& im = entry.at("im");
    if (static_cast<int>(re.size()) != nt || static_cast<int>(im.size()) != nt) {
        throw std::runtime_error("codebook entry " + std::to_string(index) + ": expected " +
                                 std::to_string(nt) + " rows");
    }
    ComplexMatrix m(nt, ns);
    for (int r = 0; r < nt; ++r) {
        const auto& re_row = re.at(static_cast<std::size_t>(r));
        const auto& im_row = im.at(static_cast<std::size_t>(r));
        if (static_cast<int>(re_row.size()) != ns || static_cast<int>(im_row.size()) != ns) {
            throw std::runtime_error("codebook entry " + std::to_string(index) + ": expected " +
                                     std::to_string(ns) + " columns in row " + std::to_string(r + 1));
        }
        for (int c = 0; c < ns; ++c) {
            m(r, c) = cxd(re_row.at(static_cast<std::size_t>(c)).get<double>(),
                          im_row.at(static_cast<std::size_t>(c)).get<double>());
        }
    }
    return m;
}

}  // namespace

Codebook load_codebook(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open codebook file: " + path);
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("parse error in " + path + ": " + e.what());
    }
    Codebook cb;
    try {
        cb.nt = doc.at("nt").get<int>();
        cb.ns = doc.at("ns").get<int>();
        cb.label = doc.value("label", "");
        const auto& entries = doc.at("entries");
        if (entries.empty()) {
            throw std::runtime_error("codebook has no entries");
        }
        cb.entries.reserve(entries.size());
        int expected_index = 1;
        for (const auto& e : entries) {
            const int index = e.at("index").get<int>();
            if (index != expected_index) {
                throw std::runtime_error("codebook entry indices must run 1..n; saw " +
                                         std::to_string(index) + " at position " +
                                         std::to_string(expected_index));
            }
            ComplexMatrix m = matrix_from_json(e, cb.nt, cb.ns, index);
            try {
                cb.entries.emplace_back(std::move(m), 1e-8);
            } catch (const std::invalid_argument& err) {
                throw std::runtime_error("codebook entry " + std::to_string(index) +
                                         " invalid: " + err.what());
            }
            ++expected_index;
        }
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed codebook " + path + ": " + e.what());
    }
    return cb;
}

void save_codebook(const Codebook& codebook, const std::string& path) {
    json entries = json::array();
    for (int i = 0; i < codebook.size(); ++i) {
        json e = matrix_to_json(codebook.entries[static_cast<std::size_t>(i)].matrix());
        e["index"] = i + 1;
        entries.push_back(std::move(e));
    }
    const json doc{{"nt", codebook.nt},
                   {"ns", codebook.ns},
                   {"label", codebook.label},
                   {"entries", std::move(entries)}};
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write codebook file: " + path);
    }
    out << doc.dump(2) << '\n';
    if (!out) {
        throw std::runtime_error("write failed for codebook file: " + path);
    }
}

Codebook nr_codebook_4x2() {
    // Columns are [1, a, b, ab] and [1, a, -b, -ab] with a in {1, j, -1, -j}
    // and b in {1, j}, scaled so each column has unit norm (the table's own
    // scaling is 1/(2*sqrt(2)) for unit Frobenius norm).
    static const cxd one(1.0, 0.0);
    static const cxd jay(0.0, 1.0);
    static const cxd a_values[4] = {one, jay, -one, -jay};
    static const cxd b_values[2] = {one, jay};

    Codebook cb;
    cb.nt = 4;
    cb.ns = 2;
    cb.label = "nr-ts38.211-6.3.1.5-5-tpmi14-21";
    for (const cxd& a : a_values) {
        for (const cxd& b : b_values) {
            ComplexMatrix m(4, 2);
            m << one, one,
                 a, a,
                 b, -b,
                 a * b, -a * b;
            cb.entries.emplace_back(0.5 * m);
        }
    }
    return cb;
}

double min_pairwise_distance(const Codebook& codebook) {
    if (codebook.size() < 2) {
        throw std::invalid_argument("min_pairwise_distance: need at least 2 entries");
    }
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < codebook.size(); ++i) {
        for (int k = i + 1; k < codebook.size(); ++k) {
            best = std::min(best, chordal_distance(codebook.entries[static_cast<std::size_t>(i)],
                                                   codebook.entries[static_cast<std::size_t>(k)]));
        }
    }
    return best;
}

namespace {

SemiUnitaryMatrix orthonormalize(const ComplexMatrix& m) {
    Eigen::HouseholderQR<ComplexMatrix> qr(m);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(m.rows(), m.cols());
    return SemiUnitaryMatrix(std::move(q));
}

double min_distance_to_others(const std::vector<SemiUnitaryMatrix>& entries,
                              const SemiUnitaryMatrix& candidate, int skip) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(entries.size()); ++i) {
        if (i == skip) continue;
        best = std::min(best, chordal_distance(entries[static_cast<std::size_t>(i)], candidate));
    }
    return best;
}

}  // namespace

Codebook generate_packing(int nt, int ns, int size, int iterations, std::uint64_t rng_seed) {
    if (size < 2) throw std::invalid_argument("generate_packing: size must be >= 2");
    if (ns < 1 || ns > nt) throw std::invalid_argument("generate_packing: need 1 <= ns <= nt");

    Rng rng(derive_seed(rng_seed, "packing"));
    auto random_point = [&] { return orthonormalize(rng.complex_gaussian_matrix(nt, ns)); };

    Codebook cb;
    cb.nt = nt;
    cb.ns = ns;
    cb.label = "packing-nt" + std::to_string(nt) + "-ns" + std::to_string(ns);
    cb.entries.reserve(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) cb.entries.push_back(random_point());

    // Perturb a participant of the current closest pair; accept improvements
    // only, so the reported minimum distance is nondecreasing.
    const double sigma_hi = 0.7;
    const double sigma_lo = 0.005;
    for (int it = 0; it < iterations; ++it) {
        double current_min = std::numeric_limits<double>::infinity();
        int worst = 0;
        for (int i = 0; i < size; ++i) {
            for (int k = i + 1; k < size; ++k) {
                const double d = chordal_distance(cb.entries[static_cast<std::size_t>(i)],
                                                  cb.entries[static_cast<std::size_t>(k)]);
                if (d < current_min) {
                    current_min = d;
                    worst = (rng.uniform() < 0.5) ? i : k;
                }
            }
        }
        const double frac = iterations > 1 ? static_cast<double>(it) / (iterations - 1) : 0.0;
        const double sigma = sigma_hi * std::pow(sigma_lo / sigma_hi, frac);

        SemiUnitaryMatrix candidate = (rng.uniform() < 0.05)
            ? random_point()
            : orthonormalize(cb.entries[static_cast<std::size_t>(worst)].matrix() +
                             sigma * rng.complex_gaussian_matrix(nt, ns));
        if (min_distance_to_others(cb.entries, candidate, worst) > current_min) {
            cb.entries[static_cast<std::size_t>(worst)] = std::move(candidate);
        }
    }
    return cb;
}

}  // namespace sparsecode
