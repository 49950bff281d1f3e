#pragma once

#include <string>

#include "cr/io.hpp"

namespace cr {

// The default configuration doubles as the schema: unknown keys are
// rejected and value kinds must match the defaults.
inline json default_config() {
    return json{
        {"theorem1",
         {{"n", 2},
          {"d", 1},
          {"nonlinearity", "coupled"},  // or "vector"
          {"L_sweep", {8, 16, 32}},
          {"c", 0.5},             // eps^2 = c * L^{-gamma_prime}
          {"gamma", 0.5},         // smallness exponent
          {"gamma_prime", 0.5},   // eps rule exponent, >= gamma
          {"l", 4.5},             // comparison norm exponent
          {"kmax_res_per_L", 2.0},
          {"kmax_full_per_L", 1.5},
          {"g0",
           {{"profile", "gaussian"},  // gaussian | gaussian_k | hermite
            {"amplitude", 1.0},
            {"width", 0.70710678118654752},
            {"l", 0},
            {"m", 0}}},
          {"M", 1.0},  // horizon in resonant-time units
          {"dt_full", 0.03125},
          {"dt_tau", 0.03125},
          {"output_taus", {0.25, 0.5, 0.75, 1.0}},
          {"modes", {"resonant", "full"}},
          {"reference",
           {{"backend", "hermite"},  // hermite | lattice2x
            {"lmax", 20},
            {"dt_tau", 0.015625}}},
          {"smallness_threshold", 1.0}}},
        {"scaling",
         {{"n", 2},
          {"l", 9.0},
          {"L_sweep", {4, 8, 16, 32}},
          {"kmax_per_L", 2.0},
          {"mu_samples", {0, 2, 4}}}},
        {"resonances",
         {{"n", 2}, {"L", 4}, {"kmax", 8}, {"l", 9.0}, {"mu_samples", {0, 2}}, {"use_cache", false}}},
        {"vnls",
         {{"n", 2},
          {"d", 1},
          {"nonlinearity", "coupled"},
          {"L", 2},
          {"kmax", 4},
          {"eps", 0.1},
          {"mode", "resonant"},  // resonant | full
          {"dt", 0.001},
          {"steps", 1000},
          {"output_stride", 100},
          {"g0",
           {{"profile", "gaussian"},
            {"amplitude", 1.0},
            {"width", 0.70710678118654752},
            {"l", 0},
            {"m", 0}}}}},
        {"cr",
         {{"backend", "hermite"},  // hermite | lattice
          {"d", 2},
          {"lmax", 3},
          {"L", 8},
          {"kmax", 16},
          {"nonlinearity", "coupled"},
          {"dt", 0.001},
          {"steps", 5000},
          {"output_stride", 250},
          {"amplitude", 1.0}}},
        {"eigen",
         {{"family", 3}, {"d", 1}, {"t_max", 10.0}, {"dt", 0.001}, {"output_stride", 100}}},
        {"validate", {{"quick", true}}}};
}

namespace detail {

inline const char* kind_name(const json& v) {
    if (v.is_object()) return "object";
    if (v.is_array()) return "array";
    if (v.is_string()) return "string";
    if (v.is_boolean()) return "bool";
    if (v.is_number()) return "number";
    return "null";
}

inline void validate_node(const json& schema, const json& cfg, const std::string& path) {
    if (schema.is_object()) {
        if (!cfg.is_object())
            throw ConfigError("config: expected object at '" + path + "', got " +
                              kind_name(cfg));
        for (const auto& [key, val] : cfg.items()) {
            if (!schema.contains(key))
                throw ConfigError("config: unknown key '" + (path.empty() ? key : path + "." + key) +
                                  "'");
            validate_node(schema.at(key), val, path.empty() ? key : path + "." + key);
        }
        return;
    }
    if (schema.is_array()) {
        if (!cfg.is_array())
            throw ConfigError("config: expected array at '" + path + "', got " + kind_name(cfg));
        if (!schema.empty())
            for (std::size_t i = 0; i < cfg.size(); ++i)
                validate_node(schema.front(), cfg.at(i), path + "[" + std::to_string(i) + "]");
        return;
    }
    if (schema.is_number() && cfg.is_number()) return;
    if (schema.is_string() && cfg.is_string()) return;
    if (schema.is_boolean() && cfg.is_boolean()) return;
    throw ConfigError("config: type mismatch at '" + path + "': expected " + kind_name(schema) +
                      ", got " + kind_name(cfg));
}

}  // namespace detail

// Merges user values over the defaults after rejecting unknown keys and
// type mismatches.
inline json resolve_config(const json& user) {
    const json schema = default_config();
    detail::validate_node(schema, user, "");
    json merged = schema;
    merged.merge_patch(user);
    detail::validate_node(schema, merged, "");
    return merged;
}

// Applies one dotted-path override "a.b.c=value". The value text parses as
// JSON when possible, otherwise as a bare string; the result is re-validated
// against the schema so an override can never introduce unknown keys or
// wrong types.
inline void apply_override(json& cfg, const std::string& keyval) {
    const auto eq = keyval.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must look like key.path=value: " + keyval);
    const std::string path = keyval.substr(0, eq);
    const std::string text = keyval.substr(eq + 1);
    json value;
    try {
        value = json::parse(text);
    } catch (...) {
        value = text;  // bare string
    }
    json* node = &cfg;
    std::size_t pos = 0;
    std::string walked;
    while (true) {
        const auto dot = path.find('.', pos);
        const std::string key = path.substr(pos, dot == std::string::npos ? dot : dot - pos);
        walked = walked.empty() ? key : walked + "." + key;
        if (!node->is_object() || !node->contains(key))
            throw ConfigError("override: unknown key '" + walked + "'");
        node = &node->at(key);
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    *node = value;
    detail::validate_node(default_config(), cfg, "");
}

}  // namespace cr
