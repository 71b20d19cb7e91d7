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
 * All-to-all Ising instances H = sum_{i<j} J_ij s_i s_j, the random
 * instance generator, and the exhaustive ground-state oracle.
 *
 * Spins are indexed 0..N-1. Couplings are stored in row-major pair order
 * (0,1), (0,2), ..., (0,N-1), (1,2), ..., which is also the physical qubit
 * order of the parity layout.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"
#include "text.hpp"

namespace lhzqaoa {

using Spin = std::int8_t;
using SpinConfig = std::vector<Spin>;

[[nodiscard]] constexpr std::size_t pair_count(std::size_t n) noexcept {
    return n * (n - 1) / 2;
}

/// Position of pair (i, j), i < j, in row-major pair order.
[[nodiscard]] constexpr std::size_t pair_index(std::size_t i, std::size_t j,
                                               std::size_t n) noexcept {
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

class LogicalProblem {
  public:
    LogicalProblem(std::size_t n_spins, std::vector<double> couplings)
        : n_(n_spins), couplings_(std::move(couplings)) {
        if (n_ < 2) {
            throw InvalidArgument("LogicalProblem: need at least 2 spins");
        }
        if (couplings_.size() != pair_count(n_)) {
            throw InvalidArgument("LogicalProblem: expected " +
                                  std::to_string(pair_count(n_)) +
                                  " couplings, got " +
                                  std::to_string(couplings_.size()));
        }
        for (double j : couplings_) {
            if (!std::isfinite(j)) {
                throw InvalidArgument("LogicalProblem: non-finite coupling");
            }
        }
    }

    [[nodiscard]] std::size_t n_spins() const noexcept { return n_; }

    /// Couplings in row-major pair order.
    [[nodiscard]] const std::vector<double> &couplings() const noexcept {
        return couplings_;
    }

    /// J_ij for i != j (either order).
    [[nodiscard]] double coupling(std::size_t i, std::size_t j) const {
        if (i == j || i >= n_ || j >= n_) {
            throw InvalidArgument("LogicalProblem::coupling: bad pair");
        }
        if (i > j) {
            std::swap(i, j);
        }
        return couplings_[pair_index(i, j, n_)];
    }

    friend bool operator==(const LogicalProblem &,
                           const LogicalProblem &) = default;

  private:
    std::size_t n_;
    std::vector<double> couplings_;
};

/// Couplings drawn i.i.d. uniform on [-1, 1] from an mt19937_64 stream
/// seeded with `seed`.
[[nodiscard]] inline LogicalProblem generate_instance(std::size_t n_spins,
                                                      std::uint64_t seed) {
    if (n_spins < 2) {
        throw InvalidArgument("generate_instance: n_spins must be >= 2");
    }
    Rng rng(seed);
    std::vector<double> couplings(pair_count(n_spins));
    for (double &j : couplings) {
        j = rng.uniform(-1.0, 1.0);
    }
    return LogicalProblem(n_spins, std::move(couplings));
}

[[nodiscard]] inline double logical_energy(const LogicalProblem &problem,
                                           const SpinConfig &config) {
    const std::size_t n = problem.n_spins();
    if (config.size() != n) {
        throw InvalidArgument("logical_energy: config length " +
                              std::to_string(config.size()) + " != N " +
                              std::to_string(n));
    }
    const auto &jv = problem.couplings();
    double e = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++k) {
            e += jv[k] * config[i] * config[j];
        }
    }
    return e;
}

[[nodiscard]] inline SpinConfig flipped(SpinConfig config) {
    for (auto &s : config) {
        s = static_cast<Spin>(-s);
    }
    return config;
}

struct GroundStates {
    double energy = 0.0;
    /// Every minimizing configuration, closed under global flip, sorted.
    std::vector<SpinConfig> configs;
};

inline constexpr std::size_t kMaxBruteForceSpins = 24;

/// Exhaustive minimum of the logical energy.
///
/// Walks the 2^(N-1) configurations with s_0 = +1 in Gray-code order and
/// re-expands by global flip. Configurations within 1e-12 (relative to the
/// coupling scale) of the minimum are treated as degenerate.
[[nodiscard]] inline GroundStates
brute_force_ground(const LogicalProblem &problem) {
    const std::size_t n = problem.n_spins();
    if (n > kMaxBruteForceSpins) {
        throw ResourceLimit("brute_force_ground: N = " + std::to_string(n) +
                            " exceeds enumeration bound " +
                            std::to_string(kMaxBruteForceSpins));
    }
    double scale = 0.0;
    for (double j : problem.couplings()) {
        scale += std::abs(j);
    }
    const double tol = 1e-12 * std::max(1.0, scale);

    SpinConfig s(n, 1);
    // local[i] = sum_j J_ij s_j
    std::vector<double> local(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                local[i] += problem.coupling(i, j);
            }
        }
    }
    double energy = logical_energy(problem, s);
    double best = energy;
    std::vector<SpinConfig> candidates{s};

    const std::uint64_t steps = std::uint64_t{1} << (n - 1);
    for (std::uint64_t g = 1; g < steps; ++g) {
        // Gray code: flip spin 1 + ctz(g); spin 0 stays fixed.
        const std::size_t k = 1 + static_cast<std::size_t>(std::countr_zero(g));
        energy -= 2.0 * s[k] * local[k];
        for (std::size_t j = 0; j < n; ++j) {
            if (j != k) {
                local[j] -= 2.0 * problem.coupling(j, k) * s[k];
            }
        }
        s[k] = static_cast<Spin>(-s[k]);
        if (energy < best - tol) {
            best = energy;
            candidates.clear();
            candidates.push_back(s);
        } else if (energy <= best + tol) {
            candidates.push_back(s);
        }
    }

    // Incremental sums drift; settle with exact energies.
    GroundStates out;
    out.energy = std::numeric_limits<double>::infinity();
    for (const auto &c : candidates) {
        out.energy = std::min(out.energy, logical_energy(problem, c));
    }
    for (const auto &c : candidates) {
        if (logical_energy(problem, c) <= out.energy + tol) {
            out.configs.push_back(c);
            out.configs.push_back(flipped(c));
        }
    }
    std::sort(out.configs.begin(), out.configs.end());
    return out;
}

// ---------------------------------------------------------------------------
// Instance text format:
//   N <n>
//   i j J_ij        (one line per pair, i < j, 0-based)
// Blank lines and lines starting with '#' are ignored.

inline void write_instance(std::ostream &os, const LogicalProblem &problem) {
    const std::size_t n = problem.n_spins();
    os << "N " << n << '\n';
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++k) {
            os << i << ' ' << j << ' ' << format_real(problem.couplings()[k])
               << '\n';
        }
    }
}

[[nodiscard]] inline LogicalProblem read_instance(std::istream &is) {
    std::string line;
    std::size_t lineno = 0;
    std::size_t n = 0;
    std::vector<double> couplings;
    std::vector<bool> seen;
    while (std::getline(is, line)) {
        ++lineno;
        const auto tok = split_ws(line);
        if (tok.empty() || tok[0].front() == '#') {
            continue;
        }
        if (n == 0) {
            if (tok.size() != 2 || tok[0] != "N") {
                throw ParseError(lineno, "expected header 'N <n>'");
            }
            n = parse_size(tok[1], lineno);
            if (n < 2) {
                throw ParseError(lineno, "N must be >= 2");
            }
            couplings.assign(pair_count(n), 0.0);
            seen.assign(pair_count(n), false);
            continue;
        }
        if (tok.size() != 3) {
            throw ParseError(lineno, "expected 'i j J_ij'");
        }
        const std::size_t i = parse_size(tok[0], lineno);
        const std::size_t j = parse_size(tok[1], lineno);
        if (!(i < j && j < n)) {
            throw ParseError(lineno, "pair indices must satisfy i < j < N");
        }
        const std::size_t idx = pair_index(i, j, n);
        if (seen[idx]) {
            throw ParseError(lineno, "duplicate pair");
        }
        seen[idx] = true;
        couplings[idx] = parse_real(tok[2], lineno);
    }
    if (n == 0) {
        throw ParseError(0, "missing 'N <n>' header");
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw ParseError(0, "instance is missing coupling lines");
    }
    return LogicalProblem(n, std::move(couplings));
}

inline void save_instance(const std::string &path,
                          const LogicalProblem &problem) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    write_instance(os, problem);
    if (!os) {
        throw std::runtime_error("write failed: " + path);
    }
}

[[nodiscard]] inline LogicalProblem load_instance(const std::string &path) {
    std::ifstream is(path);
    if (!is) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return read_instance(is);
}

} // namespace lhzqaoa
