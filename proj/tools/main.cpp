// SPDX-License-Identifier: Apache-2.0
//
// sparsecode: sparsify MIMO precoding codebooks on the Grassmann manifold and
// evaluate achievable rate, PAPR, and sparsification distortion.

#include "manifest.hpp"

#include "sparsecode/evaluation.hpp"
#include "sparsecode/kernels.hpp"
#include "sparsecode/parallel.hpp"
#include "sparsecode/patterns.hpp"
#include "sparsecode/sparsifier.hpp"
#include "sparsecode/version.hpp"
#include "sparsecode/waveform.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace sparsecode;
using sparsecode::cli::RunManifest;

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::ofstream open_csv(const std::string& path, const std::string& subcommand,
                       const std::string& digest, const std::string& columns) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << "# sparsecode " << subcommand << " v" << kVersion << "\n";
    out << "# manifest: " << digest << "\n";
    out << "# columns: " << columns << "\n";
    return out;
}

std::vector<double> parse_snr_grid(const std::string& text) {
    // "start:step:stop" inclusive
    double start = 0.0, step = 0.0, stop = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' || step <= 0.0) {
        throw std::invalid_argument("bad SNR grid '" + text + "', expected start:step:stop");
    }
    std::vector<double> grid;
    for (double v = start; v <= stop + 1e-9; v += step) grid.push_back(v);
    if (grid.empty()) throw std::invalid_argument("empty SNR grid '" + text + "'");
    return grid;
}

std::vector<std::pair<int, int>> parse_dims(const std::string& text) {
    std::vector<std::pair<int, int>> dims;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        int nt = 0, ns = 0;
        char x = 0;
        std::istringstream t(token);
        if (!(t >> nt >> x >> ns) || x != 'x') {
            throw std::invalid_argument("bad dimension '" + token + "', expected NTxNS");
        }
        dims.emplace_back(nt, ns);
    }
    if (dims.empty()) throw std::invalid_argument("no dimensions given");
    return dims;
}

void write_report(const std::string& path, const std::vector<SparsifyReport>& reports, double tol) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& r : reports) {
        entries.push_back({{"index", r.index},
                           {"method", to_string(r.method)},
                           {"pattern", to_string(r.pattern)},
                           {"chordal_distance", r.chordal_dist},
                           {"distortion", r.distortion}});
    }
    nlohmann::json doc{{"tol", tol}, {"entries", std::move(entries)}};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report file: " + path);
    out << doc.dump(2) << '\n';
}

struct GlobalOptions {
    int threads = 0;
};

int run(int argc, char** argv) {
    CLI::App app{"sparsify MIMO precoding codebooks and reproduce rate/PAPR/distortion evaluations"};
    app.set_version_flag("--version", std::string("sparsecode ") + kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--threads", global.threads,
                   "max worker threads (0 = SPARSECODE_THREADS env or hardware)");

    std::vector<std::string> argv_copy(argv, argv + argc);

    // ---- patterns ----------------------------------------------------------
    auto* cmd_patterns = app.add_subcommand("patterns", "count or list sparsity patterns");
    int pat_nt = 4, pat_ns = 2;
    bool pat_list = false;
    cmd_patterns->add_option("--nt", pat_nt, "transmit antennas")->required();
    cmd_patterns->add_option("--ns", pat_ns, "streams")->required();
    cmd_patterns->add_flag("--list", pat_list, "print every pattern");
    cmd_patterns->callback([&] {
        std::cout << count_patterns(pat_nt, pat_ns) << "\n";
        if (pat_list) {
            for (const auto& p : enumerate_patterns(pat_nt, pat_ns)) {
                std::cout << to_string(p) << "\n";
            }
        }
    });

    // ---- sparsify ----------------------------------------------------------
    auto* cmd_sparsify = app.add_subcommand("sparsify", "map a dense codebook to a sparse one");
    std::string sp_input, sp_output, sp_report;
    double sp_tol = kFeasibilityTolerance;
    cmd_sparsify->add_option("--input", sp_input, "dense codebook JSON")->required();
    cmd_sparsify->add_option("--output", sp_output, "sparse codebook JSON")->required();
    cmd_sparsify->add_option("--report", sp_report, "per-index report JSON")->required();
    cmd_sparsify->add_option("--tol", sp_tol, "exact-path feasibility tolerance");
    cmd_sparsify->callback([&] {
        RunManifest manifest("sparsify", argv_copy, 0);
        manifest.add_input(sp_input);
        const Codebook dense = load_codebook(sp_input);
        SparsifyOutcome outcome = build_sparse_codebook(dense, sp_tol, global.threads);
        save_codebook(outcome.sparse, sp_output);
        write_report(sp_report, outcome.reports, sp_tol);
        manifest.add_output(sp_output);
        manifest.add_output(sp_report);
        manifest.write();
        int exact = 0;
        for (const auto& r : outcome.reports) exact += r.method == SparsifyMethod::Exact ? 1 : 0;
        std::cout << "sparsified " << outcome.reports.size() << " entries (" << exact
                  << " exact, " << outcome.reports.size() - exact << " spca)\n";
    });

    // ---- codebook ----------------------------------------------------------
    auto* cmd_codebook = app.add_subcommand("codebook", "codebook utilities");
    cmd_codebook->require_subcommand(1);

    auto* cmd_pack = cmd_codebook->add_subcommand("pack", "random-restart max-min chordal packing");
    int pk_nt = 4, pk_ns = 2, pk_size = 8, pk_iters = 10000;
    std::uint64_t pk_seed = 0;
    std::string pk_output;
    cmd_pack->add_option("--nt", pk_nt)->required();
    cmd_pack->add_option("--ns", pk_ns)->required();
    cmd_pack->add_option("--size", pk_size)->required();
    cmd_pack->add_option("--iters", pk_iters, "search iterations");
    cmd_pack->add_option("--seed", pk_seed, "rng seed");
    cmd_pack->add_option("--output", pk_output, "output codebook JSON")->required();
    cmd_pack->callback([&] {
        RunManifest manifest("codebook pack", argv_copy, pk_seed);
        const Codebook cb = generate_packing(pk_nt, pk_ns, pk_size, pk_iters, pk_seed);
        save_codebook(cb, pk_output);
        manifest.add_output(pk_output);
        manifest.write();
        std::cout << "min pairwise chordal distance: " << fmt_double(min_pairwise_distance(cb))
                  << "\n";
    });

    auto* cmd_nr = cmd_codebook->add_subcommand("nr", "export the built-in NR (4,2) dense codebook");
    std::string nr_output;
    cmd_nr->add_option("--output", nr_output, "output codebook JSON")->required();
    cmd_nr->callback([&] {
        RunManifest manifest("codebook nr", argv_copy, 0);
        save_codebook(nr_codebook_4x2(), nr_output);
        manifest.add_output(nr_output);
        manifest.write();
    });

    // ---- eval --------------------------------------------------------------
    auto* cmd_eval = app.add_subcommand("eval", "Monte Carlo experiments");
    cmd_eval->require_subcommand(1);

    auto* cmd_rate = cmd_eval->add_subcommand("rate", "achievable-rate comparison");
    std::string rt_dense, rt_sparse, rt_snr = "-10:2:30", rt_out;
    int rt_nr = 32, rt_trials = 10000, rt_k = 1;
    std::uint64_t rt_seed = 0;
    cmd_rate->add_option("--dense", rt_dense, "dense codebook JSON")->required();
    cmd_rate->add_option("--sparse", rt_sparse, "sparse codebook JSON")->required();
    cmd_rate->add_option("--nr", rt_nr, "receive antennas");
    cmd_rate->add_option("--snr", rt_snr, "SNR grid start:step:stop in dB");
    cmd_rate->add_option("--trials", rt_trials, "Monte Carlo trials");
    cmd_rate->add_option("--k", rt_k, "subcarriers per trial");
    cmd_rate->add_option("--seed", rt_seed, "rng seed");
    cmd_rate->add_option("--out", rt_out, "output CSV")->required();
    cmd_rate->callback([&] {
        RunManifest manifest("eval rate", argv_copy, rt_seed);
        manifest.add_input(rt_dense);
        manifest.add_input(rt_sparse);
        const Codebook dense = load_codebook(rt_dense);
        const Codebook sparse = load_codebook(rt_sparse);
        RateConfig cfg;
        cfg.nt = dense.nt;
        cfg.ns = dense.ns;
        cfg.nr = rt_nr;
        cfg.snr_grid_db = parse_snr_grid(rt_snr);
        cfg.trials = rt_trials;
        cfg.subcarriers_k = rt_k;
        cfg.seed = rt_seed;
        cfg.threads = global.threads;
        const RateExperimentResult result = rate_experiment(cfg, dense, sparse);
        auto out = open_csv(rt_out, "eval rate", manifest.digest(),
                            "snr_db,rate_dense,se_dense,rate_sparse,se_sparse");
        for (std::size_t i = 0; i < cfg.snr_grid_db.size(); ++i) {
            out << fmt_double(result.dense.snr_db[i]) << ',' << fmt_double(result.dense.mean_rate[i])
                << ',' << fmt_double(result.dense.std_err[i]) << ','
                << fmt_double(result.sparse.mean_rate[i]) << ','
                << fmt_double(result.sparse.std_err[i]) << '\n';
        }
        out.close();
        manifest.add_output(rt_out);
        manifest.write();
    });

    auto* cmd_papr = cmd_eval->add_subcommand("papr", "PAPR CCDF of DFT-s-OFDM");
    std::string pp_codebook, pp_codebook_b, pp_out, pp_mod = "qam4", pp_agg = "mean";
    int pp_prbs = 52, pp_fft = 1024, pp_oversample = 8, pp_symbols = 20000, pp_index = 0;
    std::uint64_t pp_seed = 0;
    cmd_papr->add_option("--codebook", pp_codebook, "codebook JSON")->required();
    cmd_papr->add_option("--codebook-b", pp_codebook_b, "second codebook JSON for comparison");
    cmd_papr->add_option("--prbs", pp_prbs, "physical resource blocks");
    cmd_papr->add_option("--fft", pp_fft, "FFT size");
    cmd_papr->add_option("--oversample", pp_oversample, "oversampling factor");
    cmd_papr->add_option("--mod", pp_mod, "modulation qam4|qam16|qam64");
    cmd_papr->add_option("--symbols", pp_symbols, "DFT-s-OFDM blocks");
    cmd_papr->add_option("--seed", pp_seed, "rng seed");
    cmd_papr->add_option("--index", pp_index, "fix the precoder index (1-based; 0 = uniform)");
    cmd_papr->add_option("--papr-agg", pp_agg, "per-block aggregation: mean|pool");
    cmd_papr->add_option("--out", pp_out, "output CSV")->required();
    cmd_papr->callback([&] {
        RunManifest manifest("eval papr", argv_copy, pp_seed);
        manifest.add_input(pp_codebook);
        const Codebook cb_a = load_codebook(pp_codebook);
        WaveformConfig cfg;
        cfg.n_prb = pp_prbs;
        cfg.fft_size = pp_fft;
        cfg.oversample = pp_oversample;
        cfg.modulation = parse_modulation(pp_mod);
        cfg.nt = cb_a.nt;
        cfg.ns = cb_a.ns;
        PaprOptions options;
        options.n_symbols = pp_symbols;
        options.seed = pp_seed;
        options.threads = global.threads;
        if (pp_index > 0) options.fixed_index = pp_index - 1;
        if (pp_agg == "pool") {
            options.aggregation = PaprAggregation::PoolAntennas;
        } else if (pp_agg != "mean") {
            throw std::invalid_argument("bad --papr-agg '" + pp_agg + "', expected mean|pool");
        }

        const std::vector<double> samples_a = papr_samples(cfg, cb_a, options);
        std::vector<double> samples_b;
        if (!pp_codebook_b.empty()) {
            manifest.add_input(pp_codebook_b);
            const Codebook cb_b = load_codebook(pp_codebook_b);
            samples_b = papr_samples(cfg, cb_b, options);
        }

        double lo = *std::min_element(samples_a.begin(), samples_a.end());
        double hi = *std::max_element(samples_a.begin(), samples_a.end());
        for (double v : samples_b) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const CcdfCurve curve_a = ccdf_from_samples(samples_a, lo, hi);
        const CcdfCurve curve_b =
            samples_b.empty() ? CcdfCurve{} : ccdf_from_samples(samples_b, lo, hi);

        auto out = open_csv(pp_out, "eval papr", manifest.digest(),
                            samples_b.empty() ? "threshold_db,ccdf_a" : "threshold_db,ccdf_a,ccdf_b");
        for (std::size_t i = 0; i < curve_a.threshold_db.size(); ++i) {
            out << fmt_double(curve_a.threshold_db[i]) << ',' << fmt_double(curve_a.ccdf[i]);
            if (!samples_b.empty()) out << ',' << fmt_double(curve_b.ccdf[i]);
            out << '\n';
        }
        out.close();
        manifest.add_output(pp_out);
        manifest.write();
    });

    auto* cmd_dist = cmd_eval->add_subcommand("distortion", "mean SPCA distortion vs matrix size");
    std::string ds_dims = "4x2,5x2,6x2,7x2,8x2,9x2,10x2", ds_out;
    int ds_trials = 2000;
    std::uint64_t ds_seed = 0;
    cmd_dist->add_option("--dims", ds_dims, "comma-separated NTxNS list");
    cmd_dist->add_option("--trials", ds_trials, "random points per dimension");
    cmd_dist->add_option("--seed", ds_seed, "rng seed");
    cmd_dist->add_option("--out", ds_out, "output CSV")->required();
    cmd_dist->callback([&] {
        RunManifest manifest("eval distortion", argv_copy, ds_seed);
        const auto rows = distortion_sweep(parse_dims(ds_dims), ds_trials, ds_seed, global.threads);
        auto out = open_csv(ds_out, "eval distortion", manifest.digest(), "nt,ns,mean_sigma_e,se");
        for (const auto& row : rows) {
            out << row.nt << ',' << row.ns << ',' << fmt_double(row.mean_sigma_e) << ','
                << fmt_double(row.std_err) << '\n';
        }
        out.close();
        manifest.add_output(ds_out);
        manifest.write();
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help / --version
            return app.exit(e);
        }
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const sparsecode::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
