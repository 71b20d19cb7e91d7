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

#include "lhzqaoa/verify.hpp"

#include <gtest/gtest.h>

using namespace lhzqaoa;

namespace {

Circuit block(std::size_t n, double alpha, AncillaMode mode = AncillaMode::augmented) {
    const auto layout = build_layout(n, mode);
    return build_constraint_block(
        layout, std::vector<double>(layout.constraint_count(), alpha));
}

} // namespace

TEST(CheckConstraintBlock, ScheduleMatchesOracle) {
    for (std::size_t n : {4u, 5u, 6u}) {
        for (auto mode : {AncillaMode::augmented, AncillaMode::bare}) {
            const auto layout = build_layout(n, mode);
            const auto r = check_constraint_block(block(n, 0.37, mode), layout, 0.37);
            EXPECT_TRUE(r.ok()) << n;
            EXPECT_EQ(r.method, "exhaustive");
            EXPECT_EQ(r.inputs, std::size_t{1} << layout.qubit_count());
            EXPECT_LT(r.max_deviation, 1e-12);
        }
    }
}

TEST(CheckConstraintBlock, WrongAngleIsReported) {
    const auto layout = build_layout(4);
    const auto r = check_constraint_block(block(4, 0.3), layout, 0.31);
    EXPECT_FALSE(r.ok());
    EXPECT_TRUE(r.layer_issues.empty());
    EXPECT_GT(r.mismatches, 0u);
}

TEST(CheckConstraintBlock, AlphaZeroIsIdentity) {
    const auto layout = build_layout(5);
    EXPECT_TRUE(check_constraint_block(block(5, 0.0), layout, 0.0).ok());
}

TEST(CheckConstraintBlock, DroppedGateIsReported) {
    const auto layout = build_layout(4);
    const auto good = block(4, 0.4);
    Circuit bad(good.qubit_count());
    for (std::size_t l = 0; l < good.depth(); ++l) {
        Layer layer = good.layers()[l];
        if (l == 1) {
            layer.gates.pop_back();
        }
        bad.add_layer(std::move(layer));
    }
    const auto r = check_constraint_block(bad, layout, 0.4);
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.max_deviation, 2.0);
}

TEST(CheckConstraintBlock, OverlappingLayerIsReported) {
    const auto layout = build_layout(4);
    auto c = block(4, 0.4);
    c.add_layer({{Gate::rz(0, 0.0), Gate::cnot(1, 0)}});
    const auto r = check_constraint_block(c, layout, 0.4);
    ASSERT_EQ(r.layer_issues.size(), 1u);
    EXPECT_EQ(r.layer_issues[0].layer, c.depth() - 1);
    EXPECT_EQ(r.layer_issues[0].qubit, 0u);
    EXPECT_FALSE(r.ok());
}

TEST(CheckConstraintBlock, QubitCountMismatch) {
    const auto r = check_constraint_block(block(4, 0.4), build_layout(5), 0.4);
    EXPECT_FALSE(r.qubit_count_ok);
    EXPECT_FALSE(r.unitary_checked);
    EXPECT_FALSE(r.ok());
}

TEST(CheckConstraintBlock, CircuitsWithRxAreSampled) {
    const auto layout = build_layout(4);
    auto c = block(4, 0.2);
    c.add_layer({{Gate::rx(0, 0.0)}});
    auto r = check_constraint_block(c, layout, 0.2);
    EXPECT_EQ(r.method, "sampled");
    EXPECT_TRUE(r.ok());
    c.add_layer({{Gate::rx(2, 0.5)}});
    r = check_constraint_block(c, layout, 0.2);
    EXPECT_FALSE(r.ok());
}

TEST(CheckConstraintBlock, DirectZphaseCircuitPasses) {
    const auto layout = build_layout(5);
    Circuit c(layout.qubit_count());
    for (const auto &con : layout.constraints()) {
        c.add_layer({{Gate::zphase(con.qubits(), -0.8)}});
    }
    EXPECT_TRUE(check_constraint_block(c, layout, -0.8).ok());
}
