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

#include "lhzqaoa/circuit.hpp"

#include <random>

#include <gtest/gtest.h>

#include "lhzqaoa/statevector.hpp"
#include "oracles.hpp"

using namespace lhzqaoa;

TEST(DecomposePlaquette, GateStructure) {
    const auto g = decompose_plaquette({3, 1, 4, 0}, 0.25);
    ASSERT_EQ(g.size(), 7u);
    EXPECT_EQ(g[0], Gate::cnot(3, 1));
    EXPECT_EQ(g[1], Gate::cnot(1, 4));
    EXPECT_EQ(g[2], Gate::cnot(4, 0));
    EXPECT_EQ(g[3], Gate::rz(0, 0.5));
    EXPECT_EQ(g[4], Gate::cnot(4, 0));
    EXPECT_EQ(g[5], Gate::cnot(1, 4));
    EXPECT_EQ(g[6], Gate::cnot(3, 1));
    EXPECT_EQ(decompose_plaquette({0, 1, 2}, 1.0).size(), 5u);
}

TEST(DecomposePlaquette, ZeroAngleIsIdentity) {
    const auto u = oracle::sequence_unitary(decompose_plaquette({0, 1, 2, 3}, 0.0), 4);
    EXPECT_EQ(oracle::max_abs_diff(u, oracle::Matrix::identity(16)), 0.0);
}

TEST(DecomposePlaquette, AllZeroStatePicksUpGlobalPhase) {
    const double alpha = 0.8;
    auto psi = basis_state(4, 0);
    for (const auto &g : decompose_plaquette({0, 1, 2, 3}, alpha)) {
        apply_gate(psi, g);
    }
    EXPECT_NEAR(std::abs(psi[0] - std::polar(1.0, -alpha)), 0.0, 1e-15);
}

TEST(DecomposePlaquette, MatchesDiagonalForAllArities) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> angle(-4.0, 4.0);
    for (int t = 0; t < 30; ++t) {
        for (std::size_t arity : {3u, 4u}) {
            std::vector<std::size_t> path{0, 1, 2, 3};
            std::shuffle(path.begin(), path.end(), rng);
            path.resize(arity);
            const double a = angle(rng);
            const auto u = oracle::sequence_unitary(decompose_plaquette(path, a), 4);
            EXPECT_LE(oracle::max_abs_diff(u, oracle::zzzz_unitary(path, a, 4)),
                      1e-12);
        }
    }
}

TEST(DecomposePlaquette, RejectsBadPaths) {
    EXPECT_THROW((void)decompose_plaquette({0, 1, 1, 2}, 0.1), InvalidArgument);
    EXPECT_THROW((void)decompose_plaquette({0, 1}, 0.1), InvalidArgument);
    EXPECT_THROW((void)decompose_plaquette({0, 1, 2, 3, 4}, 0.1),
                 InvalidArgument);
}

TEST(Gate, Invariants) {
    EXPECT_THROW((void)Gate::cnot(2, 2), InvalidArgument);
    EXPECT_THROW((void)Gate::zphase({}, 0.1), InvalidArgument);
    EXPECT_THROW((void)Gate::zphase({1, 2, 3, 4, 5}, 0.1), InvalidArgument);
    EXPECT_THROW((void)Gate::zphase({1, 1}, 0.1), InvalidArgument);
    Circuit c(3);
    EXPECT_THROW(c.add_layer({{Gate::rx(3, 0.1)}}), InvalidArgument);
}

TEST(VerifyLayers, EmptyCircuit) { EXPECT_TRUE(verify_layers(Circuit(4))); }

TEST(VerifyLayers, SharedQubitFails) {
    Circuit c(3);
    c.add_layer({{Gate::cnot(0, 1), Gate::cnot(1, 2)}});
    EXPECT_FALSE(verify_layers(c));
}

TEST(VerifyLayers, DisjointPasses) {
    Circuit c(4);
    c.add_layer({{Gate::cnot(0, 1), Gate::cnot(3, 2)}});
    c.add_layer({{Gate::zphase({0, 1, 2}, 0.3), Gate::rx(3, 1.0)}});
    EXPECT_TRUE(verify_layers(c));
}

TEST(ConstraintBlock, LengthMismatch) {
    EXPECT_THROW((void)build_constraint_block(build_layout(4), {0.1, 0.2}),
                 InvalidArgument);
}

TEST(ConstraintBlock, FourSpinStructure) {
    const auto layout = build_layout(4);
    const std::vector<double> alpha{0.11, 0.22, 0.33};
    const auto c = build_constraint_block(layout, alpha);
    EXPECT_LE(c.depth(), 28u);
    EXPECT_TRUE(verify_layers(c));
    std::vector<int> hits(alpha.size(), 0);
    std::size_t cnots = 0;
    for (const auto &layer : c.layers()) {
        for (const auto &g : layer.gates) {
            if (g.kind == GateKind::cnot) {
                ++cnots;
                continue;
            }
            ASSERT_EQ(g.kind, GateKind::rz);
            for (std::size_t l = 0; l < alpha.size(); ++l) {
                hits[l] += g.angle == 2.0 * alpha[l];
            }
        }
    }
    EXPECT_EQ(hits, std::vector<int>(alpha.size(), 1));
    EXPECT_EQ(cnots, 6 * alpha.size());
}

TEST(ConstraintBlock, DepthBoundIndependentOfSize) {
    for (std::size_t n = 4; n <= 14; ++n) {
        const auto layout = build_layout(n);
        const auto c = build_constraint_block(
            layout, std::vector<double>(layout.constraint_count(), 0.5));
        EXPECT_LE(c.depth(), 28u) << "N=" << n;
        EXPECT_TRUE(verify_layers(c)) << "N=" << n;
        EXPECT_EQ(c.gate_count(), 7 * layout.constraint_count());
    }
    // From N = 6 every pass is populated.
    EXPECT_EQ(build_constraint_block(build_layout(6),
                                     std::vector<double>(10, 0.1))
                  .depth(),
              28u);
}

TEST(ConstraintBlock, ZeroAnglesGiveIdentity) {
    const auto layout = build_layout(4);
    const auto c = build_constraint_block(layout, {0.0, 0.0, 0.0});
    std::vector<Gate> gates;
    for (const auto &l : c.layers()) {
        gates.insert(gates.end(), l.gates.begin(), l.gates.end());
    }
    const auto u = oracle::sequence_unitary(gates, layout.qubit_count());
    EXPECT_EQ(oracle::max_abs_diff(u, oracle::Matrix::identity(u.n)), 0.0);
}

TEST(ConstraintBlock, MatchesDiagonalOnRandomStates) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    for (std::size_t n : {4u, 5u, 6u}) {
        for (auto mode : {AncillaMode::augmented, AncillaMode::bare}) {
            const auto layout = build_layout(n, mode);
            std::vector<double> alpha(layout.constraint_count());
            for (auto &a : alpha) {
                a = angle(rng);
            }
            const auto c = build_constraint_block(layout, alpha);
            EXPECT_TRUE(verify_layers(c));
            const std::size_t dim = std::size_t{1} << layout.qubit_count();
            for (int t = 0; t < 5; ++t) {
                const auto v = oracle::random_state(dim, rng);
                StateVector psi(layout.qubit_count(), v);
                apply_circuit(psi, c);
                const auto ref = oracle::apply_constraint_diagonal(v, layout, alpha);
                EXPECT_LE(oracle::vec_distance(psi.amplitudes(), ref), 1e-10)
                    << "N=" << n << " mode " << to_string(mode);
            }
        }
    }
}

TEST(ConstraintBlock, PlaquetteOrderDoesNotMatter) {
    // Reversing the constraint list changes which gates share a pass but
    // not the product.
    std::mt19937_64 rng(8);
    const auto layout = build_layout(5);
    auto constraints = layout.constraints();
    std::vector<double> alpha(constraints.size());
    for (auto &a : alpha) {
        a = std::uniform_real_distribution<double>(-2, 2)(rng);
    }
    std::reverse(constraints.begin(), constraints.end());
    auto alpha_rev = alpha;
    std::reverse(alpha_rev.begin(), alpha_rev.end());
    const LhzLayout reversed(5, layout.mode(), layout.qubits(), constraints);
    const auto v = oracle::random_state(std::size_t{1} << layout.qubit_count(), rng);
    StateVector a(layout.qubit_count(), v), b(layout.qubit_count(), v);
    apply_circuit(a, build_constraint_block(layout, alpha));
    apply_circuit(b, build_constraint_block(reversed, alpha_rev));
    EXPECT_LE(oracle::vec_distance(a.amplitudes(), b.amplitudes()), 1e-12);
}

TEST(CircuitText, EmptyCircuitIsHeaderOnly) {
    EXPECT_EQ(emit_text(Circuit(5)), "QUBITS 5\n");
}

TEST(CircuitText, RoundTrip) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (int t = 0; t < 20; ++t) {
        Circuit c(6, "random");
        c.add_param("alpha", angle(rng));
        for (int l = 0; l < 3; ++l) {
            std::vector<std::size_t> q{0, 1, 2, 3, 4, 5};
            std::shuffle(q.begin(), q.end(), rng);
            c.add_layer({{Gate::rx(q[0], angle(rng)), Gate::cnot(q[1], q[2]),
                          Gate::zphase({q[3], q[4]}, angle(rng)),
                          Gate::rz(q[5], angle(rng))}});
        }
        EXPECT_EQ(parse_text(emit_text(c)), c);
    }
}

TEST(CircuitText, Format) {
    Circuit c(4, "demo");
    c.add_layer({{Gate::cnot(0, 1), Gate::rx(2, 0.5)}});
    c.add_layer({{Gate::zphase({0, 1, 2, 3}, -0.25)}});
    EXPECT_EQ(emit_text(c), "QUBITS 4\n# name demo\nLAYER\nCNOT 0 1\nRX 2 0.5\n"
                            "LAYER\nZPHASE 0 1 2 3 -0.25\n");
}

TEST(CircuitText, ParseErrorsNameTheLine) {
    auto line_of = [](const std::string &text) -> std::size_t {
        try {
            (void)parse_text(text);
        } catch (const ParseError &e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("QUBITS 3\nLAYER\nRX 0 0.1\nFOO 1 2\n"), 4u);
    EXPECT_EQ(line_of("QUBITS 3\nLAYER\nCNOT 1\n"), 3u);
    EXPECT_EQ(line_of("QUBITS 3\nLAYER\nCNOT 1 1\n"), 3u);
    EXPECT_EQ(line_of("QUBITS 3\nLAYER\nRZ 7 0.1\n"), 3u);
    EXPECT_EQ(line_of("QUBITS 3\nRX 0 0.1\n"), 2u);
    EXPECT_EQ(line_of("QUBITS 3\nLAYER\nRX 0 abc\n"), 3u);
    EXPECT_EQ(line_of("LAYER\n"), 1u);
    EXPECT_THROW((void)parse_text(""), ParseError);
}
