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

#include "lhzqaoa/optimizer.hpp"

#include <gtest/gtest.h>

using namespace lhzqaoa;

namespace {

ProtocolSpec spec_of(ProtocolKind k, std::size_t m) {
    ProtocolSpec s;
    s.kind = k;
    s.cycles = m;
    return s;
}

} // namespace

TEST(McOptimize, ZeroStepsReturnsInitialEvaluation) {
    const auto problem = generate_instance(4, 3);
    const auto layout = build_layout(4, AncillaMode::bare);
    McConfig cfg;
    cfg.steps = 0;
    const auto trace = mc_optimize(problem, layout, spec_of(ProtocolKind::C, 2), cfg);
    EXPECT_TRUE(trace.accepted_objective.empty());
    EXPECT_EQ(trace.accept_count, 0u);
    EXPECT_EQ(trace.best_params, trace.initial_params);
    EXPECT_EQ(trace.final.energy, trace.initial.energy);
    EXPECT_EQ(trace.final.fidelity, trace.initial.fidelity);
    EXPECT_EQ(trace.initial_params.c, std::vector<double>(3, 2.0));
    EXPECT_EQ(trace.initial_params.gammas, std::vector<double>(2, 1.0));
}

TEST(McOptimize, TracesAreMonotone) {
    const auto layout = build_layout(4, AncillaMode::bare);
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const auto problem = generate_instance(4, 100 + seed);
        McConfig cfg;
        cfg.steps = 150;
        cfg.seed = seed;
        cfg.objective = seed % 2 ? Objective::maximize_fidelity
                                 : Objective::minimize_energy;
        const auto kind = static_cast<ProtocolKind>(seed % 3);
        const auto trace = mc_optimize(problem, layout, spec_of(kind, 1 + seed % 3), cfg);
        ASSERT_EQ(trace.accepted_objective.size(), cfg.steps);
        double prev = cfg.objective == Objective::minimize_energy
                          ? trace.initial.energy
                          : trace.initial.fidelity;
        for (double x : trace.accepted_objective) {
            if (cfg.objective == Objective::minimize_energy) {
                EXPECT_LE(x, prev);
            } else {
                EXPECT_GE(x, prev);
            }
            prev = x;
        }
        EXPECT_EQ(prev, cfg.objective == Objective::minimize_energy
                            ? trace.final.energy
                            : trace.final.fidelity);
    }
}

TEST(McOptimize, FinalEvaluationMatchesBestParams) {
    const auto problem = generate_instance(4, 8);
    const auto layout = build_layout(4, AncillaMode::bare);
    const auto spec = spec_of(ProtocolKind::C, 2);
    McConfig cfg;
    cfg.steps = 200;
    cfg.seed = 5;
    const auto trace = mc_optimize(problem, layout, spec, cfg);
    const auto again = ProtocolRunner(problem, layout, spec).run(trace.best_params);
    EXPECT_EQ(again.energy, trace.final.energy);
    EXPECT_EQ(again.fidelity, trace.final.fidelity);
    for (double c : trace.best_params.c) {
        EXPECT_GE(c, 0.0);
    }
}

TEST(McOptimize, DeterministicForFixedSeed) {
    const auto problem = generate_instance(4, 2);
    const auto layout = build_layout(4, AncillaMode::bare);
    McConfig cfg;
    cfg.steps = 120;
    cfg.seed = 77;
    const auto a = mc_optimize(problem, layout, spec_of(ProtocolKind::B, 2), cfg);
    const auto b = mc_optimize(problem, layout, spec_of(ProtocolKind::B, 2), cfg);
    EXPECT_EQ(a.accepted_objective, b.accepted_objective);
    EXPECT_EQ(a.best_params, b.best_params);
    cfg.seed = 78;
    const auto c = mc_optimize(problem, layout, spec_of(ProtocolKind::B, 2), cfg);
    EXPECT_NE(a.best_params, c.best_params);
}

TEST(McOptimize, ExclusivePoolTouchesStrengthsOnlyOnPeriodSteps) {
    const auto problem = generate_instance(4, 4);
    const auto layout = build_layout(4, AncillaMode::bare);
    McConfig cfg;
    cfg.steps = 9;
    cfg.c_update_period = 10;
    cfg.seed = 3;
    cfg.objective = Objective::maximize_fidelity;
    const auto t9 = mc_optimize(problem, layout, spec_of(ProtocolKind::C, 1), cfg);
    EXPECT_EQ(t9.best_params.c, t9.initial_params.c);

    // With period 1 only strengths move.
    cfg.c_update_period = 1;
    cfg.steps = 50;
    const auto t1 = mc_optimize(problem, layout, spec_of(ProtocolKind::C, 1), cfg);
    EXPECT_EQ(t1.best_params.gammas, t1.initial_params.gammas);
    EXPECT_EQ(t1.best_params.betas, t1.initial_params.betas);
    EXPECT_EQ(t1.best_params.omegas, t1.initial_params.omegas);
}

TEST(McOptimize, MixedPoolMayTouchAngles) {
    const auto problem = generate_instance(4, 4);
    const auto layout = build_layout(4, AncillaMode::bare);
    McConfig cfg;
    cfg.c_update_period = 1;
    cfg.c_pool = CUpdatePool::mixed;
    cfg.steps = 60;
    cfg.seed = 3;
    const auto t = mc_optimize(problem, layout, spec_of(ProtocolKind::C, 1), cfg);
    EXPECT_GT(t.accept_count, 0u);
    EXPECT_TRUE(t.best_params.gammas != t.initial_params.gammas ||
                t.best_params.betas != t.initial_params.betas ||
                t.best_params.omegas != t.initial_params.omegas);
}

TEST(McOptimize, EnergyDropsOnMostInstances) {
    const auto layout = build_layout(4, AncillaMode::bare);
    const auto spec = spec_of(ProtocolKind::A, 1);
    int improved = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        McConfig cfg;
        cfg.steps = 500;
        cfg.seed = derive_seed(2024, i);
        const auto t = mc_optimize(generate_instance(4, 1000 + i), layout, spec, cfg);
        improved += t.final.energy < t.initial.energy;
    }
    EXPECT_GE(improved, 95);
}

TEST(McOptimize, RejectsBadConfig) {
    const auto problem = generate_instance(4, 1);
    const auto layout = build_layout(4);
    const auto spec = spec_of(ProtocolKind::A, 1);
    McConfig cfg;
    cfg.delta_max = 0.0;
    EXPECT_THROW((void)mc_optimize(problem, layout, spec, cfg), InvalidArgument);
    cfg = {};
    cfg.c_update_period = 0;
    EXPECT_THROW((void)mc_optimize(problem, layout, spec, cfg), InvalidArgument);
    cfg = {};
    cfg.c_init = -1.0;
    EXPECT_THROW((void)mc_optimize(problem, layout, spec, cfg), InvalidArgument);
}

TEST(McOptimize, EnumNames) {
    EXPECT_STREQ(to_string(Objective::minimize_energy), "minimize_E");
    EXPECT_EQ(parse_objective("maximize_F"), Objective::maximize_fidelity);
    EXPECT_THROW((void)parse_objective("max"), InvalidArgument);
    EXPECT_EQ(parse_c_update_pool("mixed"), CUpdatePool::mixed);
    EXPECT_THROW((void)parse_c_update_pool("both"), InvalidArgument);
}
