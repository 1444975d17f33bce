// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sparsecode/version.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace sparsecode::cli {

inline std::uint64_t fnv1a_bytes(const char* data, std::size_t n, std::uint64_t h = 1469598103934665603ull) {
    for (std::size_t i = 0; i < n; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t fnv1a_string(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
    return fnv1a_bytes(s.data(), s.size(), h);
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::uint64_t h = 1469598103934665603ull;
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof(buf));
        h = fnv1a_bytes(buf, static_cast<std::size_t>(in.gcount()), h);
    }
    return h;
}

/// Run provenance written next to every output file. The digest covers the
/// deterministic fields only, so re-runs produce byte-identical data outputs
/// and a manifest differing at most in the duration field.
class RunManifest {
public:
    RunManifest(std::string subcommand, std::vector<std::string> argv, std::uint64_t seed)
        : subcommand_(std::move(subcommand)), argv_(std::move(argv)), seed_(seed),
          start_(std::chrono::steady_clock::now()) {}

    void add_input(const std::string& path) { inputs_[path] = hex64(fnv1a_file(path)); }
    void add_output(const std::string& path) { outputs_.push_back(path); }

    std::string digest() const {
        std::uint64_t h = fnv1a_string(subcommand_);
        for (const auto& a : argv_) h = fnv1a_string(a, h);
        h = fnv1a_string(std::to_string(seed_), h);
        h = fnv1a_string(kVersion, h);
        for (const auto& [path, d] : inputs_) {
            h = fnv1a_string(path, h);
            h = fnv1a_string(d, h);
        }
        return hex64(h);
    }

    void write() const {
        nlohmann::json doc{
            {"subcommand", subcommand_},
            {"argv", argv_},
            {"seed", seed_},
            {"version", kVersion},
            {"inputs", inputs_},
            {"outputs", outputs_},
            {"manifest_digest", digest()},
            {"duration_seconds",
             std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count()},
        };
        for (const auto& out : outputs_) {
            std::ofstream file(out + ".manifest.json");
            if (!file) throw std::runtime_error("cannot write manifest for " + out);
            file << doc.dump(2) << '\n';
        }
    }

private:
    std::string subcommand_;
    std::vector<std::string> argv_;
    std::uint64_t seed_;
    std::map<std::string, std::string> inputs_;
    std::vector<std::string> outputs_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace sparsecode::cli
