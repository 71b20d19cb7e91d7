// Copyright 2026 The lhzqaoa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Experiment configuration files.
 *
 *     # comment
 *     n_logical = 4
 *     m = [1, 2, 3]
 *     protocols = [A, B, C]
 *     instances = 200
 *     steps = 1000
 *     out_dir = results/fig2a
 *
 * Keys not given keep their defaults. Parsing reports every bad field at
 * once rather than stopping at the first.
 */

#pragma once

#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ensemble.hpp"
#include "errors.hpp"
#include "text.hpp"

namespace lhzqaoa {

/// Environment variable naming the default output root.
inline constexpr const char *kOutputRootEnv = "LHZQAOA_OUTPUT_ROOT";

struct RunConfig {
    EnsembleConfig ensemble;
    /// Relative paths are resolved against $LHZQAOA_OUTPUT_ROOT if set.
    std::string out_dir = "lhzqaoa-out";
};

/// Config problems, one per offending field.
class ConfigError : public InvalidArgument {
  public:
    explicit ConfigError(std::vector<std::string> problems)
        : InvalidArgument(join(problems)), problems_(std::move(problems)) {}

    [[nodiscard]] const std::vector<std::string> &problems() const noexcept {
        return problems_;
    }

  private:
    static std::string join(const std::vector<std::string> &p) {
        std::string s = "invalid config:";
        for (const auto &x : p) {
            s += "\n  " + x;
        }
        return s;
    }
    std::vector<std::string> problems_;
};

namespace detail {

[[nodiscard]] inline std::vector<std::string_view>
parse_list(std::string_view v) {
    v = trim(v);
    if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
        throw InvalidArgument("expected a list like [a, b]");
    }
    std::vector<std::string_view> out;
    const auto body = v.substr(1, v.size() - 2);
    if (trim(body).empty()) {
        return out;
    }
    std::size_t s = 0;
    while (true) {
        const auto c = body.find(',', s);
        const auto item =
            trim(body.substr(s, c == std::string_view::npos ? c : c - s));
        if (item.empty()) {
            throw InvalidArgument("empty list entry");
        }
        out.push_back(item);
        if (c == std::string_view::npos) {
            break;
        }
        s = c + 1;
    }
    return out;
}

[[nodiscard]] inline bool parse_bool(std::string_view v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw InvalidArgument("expected true or false");
}

} // namespace detail

[[nodiscard]] inline RunConfig parse_run_config(std::istream &is) {
    RunConfig cfg;
    auto &e = cfg.ensemble;
    using Setter = std::function<void(std::string_view)>;
    const std::map<std::string, Setter, std::less<>> setters{
        {"n_logical", [&](auto v) { e.n_logical = parse_size(v); }},
        {"m",
         [&](auto v) {
             e.m_values.clear();
             for (auto x : detail::parse_list(v)) {
                 e.m_values.push_back(parse_size(x));
             }
         }},
        {"protocols",
         [&](auto v) {
             e.protocols.clear();
             for (auto x : detail::parse_list(v)) {
                 e.protocols.push_back(parse_protocol_kind(x));
             }
         }},
        {"instances", [&](auto v) { e.instances = parse_size(v); }},
        {"seed", [&](auto v) { e.seed = parse_u64(v); }},
        {"steps", [&](auto v) { e.mc.steps = parse_size(v); }},
        {"delta_max", [&](auto v) { e.mc.delta_max = parse_real(v); }},
        {"objective", [&](auto v) { e.mc.objective = parse_objective(v); }},
        {"c_update_period",
         [&](auto v) { e.mc.c_update_period = parse_size(v); }},
        {"c_pool", [&](auto v) { e.mc.c_pool = parse_c_update_pool(v); }},
        {"angles_init", [&](auto v) { e.mc.angles_init = parse_real(v); }},
        {"c_init", [&](auto v) { e.mc.c_init = parse_real(v); }},
        {"c_ref", [&](auto v) { e.c_ref = parse_real(v); }},
        {"ancilla_mode",
         [&](auto v) { e.ancilla_mode = parse_ancilla_mode(v); }},
        {"block_mode", [&](auto v) { e.block_mode = parse_block_mode(v); }},
        {"fidelity_mode",
         [&](auto v) { e.fidelity_mode = parse_fidelity_mode(v); }},
        {"extra_diagonal",
         [&](auto v) { e.extra_diagonal = detail::parse_bool(v); }},
        {"threads", [&](auto v) { e.threads = parse_size(v); }},
        {"histogram_bins", [&](auto v) { e.histogram_bins = parse_size(v); }},
        {"out_dir", [&](auto v) { cfg.out_dir = std::string(v); }},
    };

    std::vector<std::string> problems;
    std::map<std::string, std::size_t, std::less<>> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string_view::npos) {
            problems.push_back("line " + std::to_string(lineno) +
                               ": expected 'key = value'");
            continue;
        }
        const auto key = trim(t.substr(0, eq));
        const auto value = trim(t.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) {
            problems.push_back(std::string(key) + ": unknown key (line " +
                               std::to_string(lineno) + ")");
            continue;
        }
        if (auto [pos, fresh] = seen.emplace(std::string(key), lineno);
            !fresh) {
            problems.push_back(std::string(key) + ": repeated (lines " +
                               std::to_string(pos->second) + " and " +
                               std::to_string(lineno) + ")");
            continue;
        }
        try {
            it->second(value);
        } catch (const std::exception &ex) {
            std::string what = ex.what();
            if (const auto p = what.find(": "); what.starts_with("line ") &&
                                                p != std::string::npos) {
                what = what.substr(p + 2);
            }
            problems.push_back(std::string(key) + ": " + what + " (line " +
                               std::to_string(lineno) + ")");
        }
    }
    if (cfg.out_dir.empty()) {
        problems.push_back("out_dir: must not be empty");
    }
    for (auto &p : e.problems()) {
        const auto field = p.substr(0, p.find(':'));
        // A field that failed to parse already has its own message.
        bool dup = false;
        for (const auto &q : problems) {
            dup = dup || q.starts_with(field + ":");
        }
        if (!dup) {
            problems.push_back(std::move(p));
        }
    }
    if (!problems.empty()) {
        throw ConfigError(std::move(problems));
    }
    return cfg;
}

[[nodiscard]] inline RunConfig parse_run_config(const std::string &text) {
    std::istringstream is(text);
    return parse_run_config(is);
}

[[nodiscard]] inline RunConfig load_run_config(const std::string &path) {
    std::ifstream is(path);
    if (!is) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return parse_run_config(is);
}

/// Canonical form of a config; parses back to the same values.
inline void write_run_config(std::ostream &os, const RunConfig &cfg) {
    const auto &e = cfg.ensemble;
    os << "n_logical = " << e.n_logical << '\n';
    os << "m = [";
    for (std::size_t i = 0; i < e.m_values.size(); ++i) {
        os << (i ? ", " : "") << e.m_values[i];
    }
    os << "]\nprotocols = [";
    for (std::size_t i = 0; i < e.protocols.size(); ++i) {
        os << (i ? ", " : "") << to_string(e.protocols[i]);
    }
    os << "]\n";
    os << "instances = " << e.instances << '\n';
    os << "seed = " << e.seed << '\n';
    os << "steps = " << e.mc.steps << '\n';
    os << "delta_max = " << format_real(e.mc.delta_max) << '\n';
    os << "objective = " << to_string(e.mc.objective) << '\n';
    os << "c_update_period = " << e.mc.c_update_period << '\n';
    os << "c_pool = " << to_string(e.mc.c_pool) << '\n';
    os << "angles_init = " << format_real(e.mc.angles_init) << '\n';
    os << "c_init = " << format_real(e.mc.c_init) << '\n';
    os << "c_ref = " << format_real(e.c_ref) << '\n';
    os << "ancilla_mode = " << to_string(e.ancilla_mode) << '\n';
    os << "block_mode = " << to_string(e.block_mode) << '\n';
    os << "fidelity_mode = " << to_string(e.fidelity_mode) << '\n';
    os << "extra_diagonal = " << (e.extra_diagonal ? "true" : "false") << '\n';
    os << "threads = " << e.threads << '\n';
    os << "histogram_bins = " << e.histogram_bins << '\n';
    os << "out_dir = " << cfg.out_dir << '\n';
}

/// out_dir, joined to $LHZQAOA_OUTPUT_ROOT when relative and the variable
/// is set.
[[nodiscard]] inline std::filesystem::path
resolve_output_dir(const RunConfig &cfg) {
    std::filesystem::path p(cfg.out_dir);
    if (p.is_relative()) {
        if (const char *root = std::getenv(kOutputRootEnv);
            root != nullptr && *root != '\0') {
            return std::filesystem::path(root) / p;
        }
    }
    return p;
}

} // namespace lhzqaoa
