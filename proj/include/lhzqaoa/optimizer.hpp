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
 * Greedy Monte Carlo search over protocol parameters.
 *
 * Each step perturbs one randomly chosen parameter by a uniform draw from
 * [-delta_max, delta_max) and keeps the change only if the objective
 * strictly improves. For protocol C the constraint strengths are proposed
 * on every `c_update_period`-th step (steps are numbered from 1).
 */

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "protocol.hpp"
#include "rng.hpp"

namespace lhzqaoa {

enum class Objective : std::uint8_t { minimize_energy, maximize_fidelity };

[[nodiscard]] inline const char *to_string(Objective o) noexcept {
    return o == Objective::minimize_energy ? "minimize_E" : "maximize_F";
}

[[nodiscard]] inline Objective parse_objective(std::string_view s) {
    if (s == "minimize_E") return Objective::minimize_energy;
    if (s == "maximize_F") return Objective::maximize_fidelity;
    throw InvalidArgument("unknown objective '" + std::string(s) + "'");
}

/// What is proposed on a constraint-update step.
enum class CUpdatePool : std::uint8_t {
    /// Only constraint strengths.
    exclusive,
    /// Angles and strengths together.
    mixed,
};

[[nodiscard]] inline const char *to_string(CUpdatePool p) noexcept {
    return p == CUpdatePool::exclusive ? "exclusive" : "mixed";
}

[[nodiscard]] inline CUpdatePool parse_c_update_pool(std::string_view s) {
    if (s == "exclusive") return CUpdatePool::exclusive;
    if (s == "mixed") return CUpdatePool::mixed;
    throw InvalidArgument("unknown c update pool '" + std::string(s) + "'");
}

struct McConfig {
    std::size_t steps = 4000;
    double delta_max = 1.0;
    Objective objective = Objective::minimize_energy;
    std::size_t c_update_period = 10;
    CUpdatePool c_pool = CUpdatePool::exclusive;
    std::uint64_t seed = 0;
    double angles_init = 1.0;
    double c_init = 2.0;

    void validate() const {
        if (!(delta_max > 0.0) || !std::isfinite(delta_max)) {
            throw InvalidArgument("McConfig: delta_max must be > 0");
        }
        if (c_update_period < 1) {
            throw InvalidArgument("McConfig: c_update_period must be >= 1");
        }
        if (!std::isfinite(angles_init)) {
            throw InvalidArgument("McConfig: angles_init must be finite");
        }
        if (!(c_init >= 0.0) || !std::isfinite(c_init)) {
            throw InvalidArgument("McConfig: c_init must be >= 0");
        }
    }
};

struct RunTrace {
    /// Objective of the current parameters after each step.
    std::vector<double> accepted_objective;
    ParamSet initial_params;
    ParamSet best_params;
    Evaluation initial;
    Evaluation final;
    std::size_t accept_count = 0;
};

namespace detail {

[[nodiscard]] inline double objective_value(Objective o, const Evaluation &e) {
    return o == Objective::minimize_energy ? e.energy : e.fidelity;
}

[[nodiscard]] inline bool improves(Objective o, double proposed,
                                   double current) {
    return o == Objective::minimize_energy ? proposed < current
                                           : proposed > current;
}

} // namespace detail

[[nodiscard]] inline RunTrace mc_optimize(const ProtocolRunner &runner,
                                          const McConfig &config) {
    config.validate();
    const auto &spec = runner.spec();
    RunTrace trace;
    trace.initial_params = initial_params(spec, runner.layout(),
                                          config.angles_init, config.c_init);
    ParamSet current = trace.initial_params;
    trace.initial = runner.run(current);
    Evaluation current_eval = trace.initial;
    double current_obj = detail::objective_value(config.objective, current_eval);

    std::vector<double *> angles;
    for (auto *v : {&current.gammas, &current.betas, &current.omegas}) {
        for (auto &x : *v) {
            angles.push_back(&x);
        }
    }
    std::vector<double *> strengths;
    for (auto &x : current.c) {
        strengths.push_back(&x);
    }

    Rng rng(config.seed);
    trace.accepted_objective.reserve(config.steps);
    for (std::size_t step = 1; step <= config.steps; ++step) {
        const bool c_step =
            !strengths.empty() && step % config.c_update_period == 0;
        double *target = nullptr;
        bool is_strength = false;
        if (c_step && config.c_pool == CUpdatePool::exclusive) {
            target = strengths[rng.index(strengths.size())];
            is_strength = true;
        } else if (c_step) {
            const auto i = rng.index(angles.size() + strengths.size());
            is_strength = i >= angles.size();
            target = is_strength ? strengths[i - angles.size()] : angles[i];
        } else {
            target = angles[rng.index(angles.size())];
        }
        const double old = *target;
        *target += rng.uniform(-config.delta_max, config.delta_max);
        if (is_strength && *target < 0.0) {
            *target = 0.0;
        }
        const Evaluation proposed = runner.run(current);
        const double obj = detail::objective_value(config.objective, proposed);
        if (detail::improves(config.objective, obj, current_obj)) {
            current_obj = obj;
            current_eval = proposed;
            ++trace.accept_count;
        } else {
            *target = old;
        }
        trace.accepted_objective.push_back(current_obj);
    }
    trace.best_params = current;
    trace.final = current_eval;
    return trace;
}

[[nodiscard]] inline RunTrace mc_optimize(const LogicalProblem &problem,
                                          const LhzLayout &layout,
                                          const ProtocolSpec &spec,
                                          const McConfig &config) {
    return mc_optimize(ProtocolRunner(problem, layout, spec), config);
}

} // namespace lhzqaoa
