#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cr/hermite.hpp"

namespace cr {

using json = nlohmann::json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Doubles are printed with %.17g everywhere so identical runs produce
// byte-identical files.
inline std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns) {
        out_.open(path);
        if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
        for (std::size_t i = 0; i < columns.size(); ++i)
            out_ << (i ? "," : "") << columns[i];
        out_ << '\n';
        ncols_ = columns.size();
    }
    void row(const std::vector<std::string>& vals) {
        if (vals.size() != ncols_) throw std::runtime_error("CsvWriter: column count mismatch");
        for (std::size_t i = 0; i < vals.size(); ++i) out_ << (i ? "," : "") << vals[i];
        out_ << '\n';
    }
    void close() { out_.close(); }

private:
    std::ofstream out_;
    std::size_t ncols_ = 0;
};

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    out << text;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for read: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline constexpr const char* kVersion = "0.1.0";

// Run manifest: config echo hash, version, wall clock. Timestamps live in a
// separate key so manifests stay comparable across reruns.
inline json make_manifest(const json& config, double wall_seconds) {
    json m;
    m["version"] = kVersion;
    m["config"] = config;
    m["config_hash"] = fnv1a(config.dump());
    m["wall_seconds"] = wall_seconds;
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    m["timestamp_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(now).count();
    return m;
}

inline std::string resonant_cache_dir() {
    if (const char* env = std::getenv("CR_RESONANT_CACHE")) return env;
    return "";
}

// HermiteState as JSON rows (j, l, m, re, im).
inline json hermite_state_to_json(const HermiteState& s) {
    json rows = json::array();
    for (int j = 0; j < s.d; ++j)
        for (std::size_t b = 0; b < s.B(); ++b) {
            const auto [l, m] = HermiteBasis::lm_of(b);
            const cplx v = s.at(j, b);
            rows.push_back({{"j", j}, {"l", l}, {"m", m}, {"re", v.real()}, {"im", v.imag()}});
        }
    return json{{"d", s.d}, {"lmax", s.lmax}, {"coefficients", rows}};
}

inline HermiteState hermite_state_from_json(const json& j) {
    HermiteState s(j.at("d").get<int>(), j.at("lmax").get<int>());
    HermiteBasis probe(s.lmax);
    for (const auto& row : j.at("coefficients")) {
        const int b = probe.index_of(row.at("l").get<int>(), row.at("m").get<int>());
        if (b < 0) throw std::runtime_error("hermite_state_from_json: bad (l, m)");
        s.at(row.at("j").get<int>(), static_cast<std::size_t>(b)) =
            cplx{row.at("re").get<double>(), row.at("im").get<double>()};
    }
    return s;
}

}  // namespace cr
