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

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "layout.hpp"
#include "rng.hpp"
#include "statevector.hpp"

namespace lhzqaoa {

/// First offending layer and qubit of a disjointness check.
struct LayerIssue {
    std::size_t layer = 0;
    std::size_t qubit = 0;
};

[[nodiscard]] inline std::vector<LayerIssue> layer_issues(const Circuit &c) {
    std::vector<LayerIssue> out;
    for (std::size_t l = 0; l < c.depth(); ++l) {
        std::vector<bool> used(c.qubit_count(), false);
        for (const auto &g : c.layers()[l].gates) {
            bool clash = false;
            for (auto q : g.qubits) {
                if (used[q]) {
                    out.push_back({l, q});
                    clash = true;
                    break;
                }
                used[q] = true;
            }
            if (clash) {
                break;
            }
        }
    }
    return out;
}

struct BlockCheck {
    std::vector<LayerIssue> layer_issues;
    bool qubit_count_ok = true;
    /// False when the unitary comparison was skipped.
    bool unitary_checked = false;
    /// "exhaustive" (every basis state) or "sampled" (random states).
    std::string method;
    std::size_t inputs = 0;
    std::size_t mismatches = 0;
    std::uint64_t first_mismatch = 0;
    double max_deviation = 0.0;

    [[nodiscard]] bool ok() const noexcept {
        return qubit_count_ok && layer_issues.empty() &&
               (!unitary_checked || mismatches == 0);
    }
};

namespace detail {

[[nodiscard]] inline bool permutes_basis(const Circuit &c) {
    for (const auto &l : c.layers()) {
        for (const auto &g : l.gates) {
            if (g.kind == GateKind::rx) {
                return false;
            }
        }
    }
    return true;
}

[[nodiscard]] inline double parity_sign(std::uint64_t x, std::uint64_t mask) {
    return (std::popcount(x & mask) & 1) ? -1.0 : 1.0;
}

} // namespace detail

/// Compares `circuit` with prod_l exp(-i alpha Z..Z) over the constraints of
/// `layout`. Circuits made of CNOT, RZ and ZPHASE map basis states to
/// phased basis states, so every basis state is tracked classically;
/// circuits containing RX are compared on `samples` random states instead.
[[nodiscard]] inline BlockCheck
check_constraint_block(const Circuit &circuit, const LhzLayout &layout,
                       double alpha, double tol = 1e-9,
                       std::size_t samples = 8) {
    BlockCheck r;
    r.layer_issues = layer_issues(circuit);
    if (circuit.qubit_count() != layout.qubit_count()) {
        r.qubit_count_ok = false;
        return r;
    }
    const auto masks = constraint_masks(layout);
    const std::size_t nq = layout.qubit_count();
    r.unitary_checked = true;
    auto expected_phase = [&](std::uint64_t b) {
        double s = 0.0;
        for (auto m : masks) {
            s += detail::parity_sign(b, m);
        }
        return -alpha * s;
    };

    if (detail::permutes_basis(circuit)) {
        r.method = "exhaustive";
        r.inputs = std::size_t{1} << nq;
        for (std::uint64_t b = 0; b < r.inputs; ++b) {
            std::uint64_t x = b;
            double phase = 0.0;
            for (const auto &l : circuit.layers()) {
                for (const auto &g : l.gates) {
                    switch (g.kind) {
                    case GateKind::rz:
                        phase -= 0.5 * g.angle *
                                 detail::parity_sign(x, std::uint64_t{1} << g.qubits[0]);
                        break;
                    case GateKind::cnot:
                        if ((x >> g.qubits[0]) & 1U) {
                            x ^= std::uint64_t{1} << g.qubits[1];
                        }
                        break;
                    case GateKind::zphase: {
                        std::uint64_t m = 0;
                        for (auto q : g.qubits) {
                            m |= std::uint64_t{1} << q;
                        }
                        phase -= g.angle * detail::parity_sign(x, m);
                        break;
                    }
                    case GateKind::rx:
                        break;
                    }
                }
            }
            const double dev =
                x != b ? 2.0
                       : std::abs(std::polar(1.0, phase) -
                                  std::polar(1.0, expected_phase(b)));
            if (dev > tol) {
                if (r.mismatches == 0) {
                    r.first_mismatch = b;
                }
                ++r.mismatches;
            }
            r.max_deviation = std::max(r.max_deviation, dev);
        }
        return r;
    }

    r.method = "sampled";
    r.inputs = samples;
    Rng rng(derive_seed(0x5eed, nq));
    for (std::size_t s = 0; s < samples; ++s) {
        StateVector psi(nq);
        for (auto &a : psi.amplitudes()) {
            a = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        }
        const double n = psi.norm();
        for (auto &a : psi.amplitudes()) {
            a /= n;
        }
        StateVector ref = psi;
        for (std::uint64_t b = 0; b < ref.dimension(); ++b) {
            ref[b] *= std::polar(1.0, expected_phase(b));
        }
        psi.apply(circuit);
        double dev = 0.0;
        for (std::uint64_t b = 0; b < ref.dimension(); ++b) {
            dev = std::max(dev, std::abs(psi[b] - ref[b]));
        }
        if (dev > tol) {
            if (r.mismatches == 0) {
                r.first_mismatch = s;
            }
            ++r.mismatches;
        }
        r.max_deviation = std::max(r.max_deviation, dev);
    }
    return r;
}

} // namespace lhzqaoa
