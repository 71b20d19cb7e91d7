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
 * The three quench protocols on the parity layout and their evaluation.
 *
 * Every diagonal propagator is exp(-i angle H_term) for a term of the
 * evaluation Hamiltonian
 *
 *     H(b) = sum_i J_i z_i(b) - sum_l C_l prod_{q in l} z_q(b),
 *
 * so the constraint phase on plaquette l at angle w is ZPHASE(l, -w C_l).
 * One cycle, in application order:
 *
 *   A:  exp(-i gamma H) with C_l = C_ref, then the mixer
 *   B:  U_z(gamma), U_c(omega) with C_l = C_ref, then the mixer
 *   C:  as B, with C_l taken from the variational strengths
 *
 * where U_z(gamma) = prod_i exp(-i gamma J_i Z_i) and the mixer is
 * prod_i exp(-i beta X_i) over labeled qubits. Ancillas start in |0> and
 * are only touched by the constraint phases.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "circuit.hpp"
#include "errors.hpp"
#include "layout.hpp"
#include "problem.hpp"
#include "statevector.hpp"
#include "text.hpp"

namespace lhzqaoa {

enum class ProtocolKind : std::uint8_t { A, B, C };
enum class BlockMode : std::uint8_t { decomposed, direct };
enum class FidelityMode : std::uint8_t { probability, amplitude };

[[nodiscard]] inline const char *to_string(ProtocolKind k) noexcept {
    switch (k) {
    case ProtocolKind::A: return "A";
    case ProtocolKind::B: return "B";
    case ProtocolKind::C: return "C";
    }
    return "?";
}
[[nodiscard]] inline const char *to_string(BlockMode m) noexcept {
    return m == BlockMode::decomposed ? "decomposed" : "direct";
}
[[nodiscard]] inline const char *to_string(FidelityMode m) noexcept {
    return m == FidelityMode::probability ? "probability" : "amplitude";
}

[[nodiscard]] inline ProtocolKind parse_protocol_kind(std::string_view s) {
    if (s == "A" || s == "a") return ProtocolKind::A;
    if (s == "B" || s == "b") return ProtocolKind::B;
    if (s == "C" || s == "c") return ProtocolKind::C;
    throw InvalidArgument("unknown protocol '" + std::string(s) + "'");
}
[[nodiscard]] inline BlockMode parse_block_mode(std::string_view s) {
    if (s == "decomposed") return BlockMode::decomposed;
    if (s == "direct") return BlockMode::direct;
    throw InvalidArgument("unknown block mode '" + std::string(s) + "'");
}
[[nodiscard]] inline FidelityMode parse_fidelity_mode(std::string_view s) {
    if (s == "probability") return FidelityMode::probability;
    if (s == "amplitude") return FidelityMode::amplitude;
    throw InvalidArgument("unknown fidelity mode '" + std::string(s) + "'");
}

struct ProtocolSpec {
    ProtocolKind kind = ProtocolKind::A;
    std::size_t cycles = 1;
    BlockMode block_mode = BlockMode::direct;
    FidelityMode fidelity_mode = FidelityMode::probability;
    /// Constraint strength of the evaluation Hamiltonian (and of A and B).
    double c_ref = 2.0;
    /// Adds one more diagonal step (gamma, omega at index `cycles`) after
    /// the last mixer. It cannot change E or F; kept for sensitivity runs.
    bool extra_diagonal = false;

    void validate() const {
        if (cycles < 1) {
            throw InvalidArgument("ProtocolSpec: cycles must be >= 1");
        }
        if (!(c_ref > 0.0) || !std::isfinite(c_ref)) {
            throw InvalidArgument("ProtocolSpec: c_ref must be > 0");
        }
    }

    [[nodiscard]] std::size_t diagonal_steps() const noexcept {
        return cycles + (extra_diagonal ? 1 : 0);
    }
};

struct ParamSet {
    std::vector<double> gammas;
    std::vector<double> betas;
    std::vector<double> omegas;
    /// Per-constraint strengths; kind C only.
    std::vector<double> c;

    friend bool operator==(const ParamSet &, const ParamSet &) = default;
};

/// All angles set to `angle`, strengths (kind C) to `strength`.
[[nodiscard]] inline ParamSet initial_params(const ProtocolSpec &spec,
                                             const LhzLayout &layout,
                                             double angle = 1.0,
                                             double strength = 2.0) {
    spec.validate();
    ParamSet p;
    p.gammas.assign(spec.diagonal_steps(), angle);
    p.betas.assign(spec.cycles, angle);
    if (spec.kind != ProtocolKind::A) {
        p.omegas.assign(spec.diagonal_steps(), angle);
    }
    if (spec.kind == ProtocolKind::C) {
        p.c.assign(layout.constraint_count(), strength);
    }
    return p;
}

inline void validate_params(const ProtocolSpec &spec, const LhzLayout &layout,
                            const ParamSet &p) {
    spec.validate();
    const std::size_t d = spec.diagonal_steps();
    auto fail = [](const std::string &what) {
        throw InvalidArgument("ParamSet: " + what);
    };
    if (p.gammas.size() != d) {
        fail("expected " + std::to_string(d) + " gammas");
    }
    if (p.betas.size() != spec.cycles) {
        fail("expected " + std::to_string(spec.cycles) + " betas");
    }
    const std::size_t n_omega = spec.kind == ProtocolKind::A ? 0 : d;
    if (p.omegas.size() != n_omega) {
        fail("expected " + std::to_string(n_omega) + " omegas");
    }
    const std::size_t n_c =
        spec.kind == ProtocolKind::C ? layout.constraint_count() : 0;
    if (p.c.size() != n_c) {
        fail("expected " + std::to_string(n_c) + " constraint strengths");
    }
    for (const auto *v : {&p.gammas, &p.betas, &p.omegas, &p.c}) {
        for (double x : *v) {
            if (!std::isfinite(x)) {
                fail("non-finite entry");
            }
        }
    }
    for (double x : p.c) {
        if (x < 0.0) {
            fail("constraint strengths must be >= 0");
        }
    }
}

// ParamSet text: `gamma=[a, b] beta=[..] omega=[..] c=[..]`.

[[nodiscard]] inline std::string format_params(const ParamSet &p) {
    std::ostringstream os;
    auto arr = [&](const char *name, const std::vector<double> &v) {
        os << name << "=[";
        for (std::size_t i = 0; i < v.size(); ++i) {
            os << (i ? ", " : "") << format_real(v[i]);
        }
        os << ']';
    };
    arr("gamma", p.gammas);
    os << ' ';
    arr("beta", p.betas);
    os << ' ';
    arr("omega", p.omegas);
    os << ' ';
    arr("c", p.c);
    return os.str();
}

/// Parses `name=[v, ...]` arrays; missing arrays are left empty.
[[nodiscard]] inline ParamSet parse_params(std::string_view text) {
    ParamSet p;
    std::map<std::string, std::vector<double> *> slots{
        {"gamma", &p.gammas}, {"beta", &p.betas}, {"omega", &p.omegas},
        {"c", &p.c}};
    std::size_t pos = 0;
    std::map<std::string, bool> seen;
    while (true) {
        const auto eq = text.find('=', pos);
        if (eq == std::string_view::npos) {
            if (!trim(text.substr(pos)).empty()) {
                throw ParseError(0, "trailing text in parameter set");
            }
            break;
        }
        const std::string name(trim(text.substr(pos, eq - pos)));
        const auto it = slots.find(name);
        if (it == slots.end()) {
            throw ParseError(0, "unknown parameter array '" + name + "'");
        }
        if (seen[name]) {
            throw ParseError(0, "parameter array '" + name + "' repeated");
        }
        seen[name] = true;
        const auto open = text.find_first_not_of(" \t", eq + 1);
        if (open == std::string_view::npos || text[open] != '[') {
            throw ParseError(0, "expected '[' after '" + name + "='");
        }
        const auto close = text.find(']', open);
        if (close == std::string_view::npos) {
            throw ParseError(0, "unterminated array '" + name + "'");
        }
        const auto body = text.substr(open + 1, close - open - 1);
        std::size_t s = 0;
        while (s <= body.size()) {
            auto comma = body.find(',', s);
            if (comma == std::string_view::npos) {
                comma = body.size();
            }
            const auto item = trim(body.substr(s, comma - s));
            if (!item.empty()) {
                it->second->push_back(parse_real(item));
            } else if (comma != body.size()) {
                throw ParseError(0, "empty entry in '" + name + "'");
            }
            s = comma + 1;
        }
        pos = close + 1;
    }
    return p;
}

struct Evaluation {
    double energy = 0.0;
    double fidelity = 0.0;
};

/// Gate-level circuit of one protocol instance (decomposed constraint
/// blocks). Per diagonal step: one RZ layer, the constraint block, then an
/// RX layer for the mixer.
[[nodiscard]] inline Circuit
protocol_circuit(const LogicalProblem &problem, const LhzLayout &layout,
                 const ProtocolSpec &spec, const ParamSet &params) {
    validate_params(spec, layout, params);
    const auto fields = local_fields(problem, layout);
    Circuit circuit(layout.qubit_count(),
                    std::string("protocol_") + to_string(spec.kind));
    std::vector<double> alpha(layout.constraint_count());
    for (std::size_t k = 0; k < spec.diagonal_steps(); ++k) {
        const double gamma = params.gammas[k];
        Layer z;
        for (const auto &q : layout.qubits()) {
            if (!q.ancilla) {
                z.gates.push_back(Gate::rz(q.id, 2.0 * gamma * fields[q.id]));
            }
        }
        circuit.add_layer(std::move(z));
        for (std::size_t l = 0; l < alpha.size(); ++l) {
            switch (spec.kind) {
            case ProtocolKind::A: alpha[l] = -gamma * spec.c_ref; break;
            case ProtocolKind::B: alpha[l] = -params.omegas[k] * spec.c_ref; break;
            case ProtocolKind::C: alpha[l] = -params.omegas[k] * params.c[l]; break;
            }
        }
        if (!alpha.empty()) {
            circuit.append(build_constraint_block(layout, alpha));
        }
        if (k < spec.cycles) {
            Layer x;
            for (const auto &q : layout.qubits()) {
                if (!q.ancilla) {
                    x.gates.push_back(Gate::rx(q.id, 2.0 * params.betas[k]));
                }
            }
            circuit.add_layer(std::move(x));
        }
    }
    return circuit;
}

/// Precomputed state for repeated prepare/evaluate calls on one instance.
class ProtocolRunner {
  public:
    ProtocolRunner(const LogicalProblem &problem, const LhzLayout &layout,
                   ProtocolSpec spec)
        : problem_(problem), layout_(layout), spec_(spec) {
        spec_.validate();
        if (layout_.qubit_count() > kMaxQubits) {
            throw ResourceLimit("ProtocolRunner: layout has " +
                                std::to_string(layout_.qubit_count()) +
                                " qubits, limit is " +
                                std::to_string(kMaxQubits));
        }
        fields_ = local_fields(problem_, layout_);
        masks_ = constraint_masks(layout_);
        labeled_ = layout_.labeled_mask();
        const std::size_t dim = std::size_t{1} << layout_.qubit_count();
        field_energy_.resize(dim);
        for (std::size_t b = 0; b < dim; ++b) {
            double e = 0.0;
            for (std::size_t q = 0; q < fields_.size(); ++q) {
                e += ((b >> q) & 1U) ? -fields_[q] : fields_[q];
            }
            field_energy_[b] = e;
        }
        ref_constraint_energy_ =
            constraint_energy(std::vector<double>(masks_.size(), spec_.c_ref));
        eval_.energies.resize(dim);
        for (std::size_t b = 0; b < dim; ++b) {
            eval_.energies[b] = field_energy_[b] + ref_constraint_energy_[b];
        }
        const auto ground = brute_force_ground(problem_);
        for (const auto &c : ground.configs) {
            targets_.push_back(basis_index(encode(c, layout_)));
        }
        std::sort(targets_.begin(), targets_.end());
        targets_.erase(std::unique(targets_.begin(), targets_.end()),
                       targets_.end());
    }

    [[nodiscard]] const ProtocolSpec &spec() const noexcept { return spec_; }
    [[nodiscard]] const LhzLayout &layout() const noexcept { return layout_; }
    [[nodiscard]] const LogicalProblem &problem() const noexcept {
        return problem_;
    }
    /// Fixed evaluation Hamiltonian (strengths C_ref).
    [[nodiscard]] const DiagonalHamiltonian &evaluation_diagonal() const noexcept {
        return eval_;
    }
    /// Basis indices of the encoded logical ground states.
    [[nodiscard]] const std::vector<std::uint64_t> &targets() const noexcept {
        return targets_;
    }

    /// Uniform over labeled qubits, ancillas in |0>.
    [[nodiscard]] StateVector initial_state() const {
        return init_uniform(layout_.qubit_count(), labeled_);
    }

    [[nodiscard]] StateVector prepare(const ParamSet &params) const {
        validate_params(spec_, layout_, params);
        StateVector psi = initial_state();
        if (spec_.block_mode == BlockMode::decomposed) {
            psi.apply(protocol_circuit(problem_, layout_, spec_, params));
            return psi;
        }
        std::vector<double> c_energy;
        if (spec_.kind == ProtocolKind::C) {
            c_energy = constraint_energy(params.c);
        }
        const auto &h_c =
            spec_.kind == ProtocolKind::C ? c_energy : ref_constraint_energy_;
        auto amps = psi.amplitudes();
        for (std::size_t k = 0; k < spec_.diagonal_steps(); ++k) {
            const double gamma = params.gammas[k];
            const double omega =
                spec_.kind == ProtocolKind::A ? gamma : params.omegas[k];
            for (std::size_t b = 0; b < amps.size(); ++b) {
                amps[b] *= std::polar(1.0, -(gamma * field_energy_[b] +
                                             omega * h_c[b]));
            }
            if (k < spec_.cycles) {
                for (const auto &q : layout_.qubits()) {
                    if (!q.ancilla) {
                        psi.apply_rx(q.id, 2.0 * params.betas[k]);
                    }
                }
            }
        }
        return psi;
    }

    [[nodiscard]] Evaluation evaluate(const StateVector &psi) const {
        if (psi.qubit_count() != layout_.qubit_count()) {
            throw InvalidArgument("evaluate: state does not match layout");
        }
        Evaluation out;
        out.energy = term_expectation(psi);
        const double p = overlap_probability(psi, targets_);
        out.fidelity =
            spec_.fidelity_mode == FidelityMode::probability ? p : std::sqrt(p);
        return out;
    }

    [[nodiscard]] Evaluation run(const ParamSet &params) const {
        return evaluate(prepare(params));
    }

  private:
    /// <H_eval> as sum_i J_i <z_i> - C_ref sum_l <prod z>. Each <.> adds
    /// the +1 and -1 weights separately, so a state whose weights pair up
    /// exactly (such as the uniform start) gives exactly zero.
    [[nodiscard]] double term_expectation(const StateVector &psi) const {
        const auto amps = psi.amplitudes();
        std::vector<double> prob(amps.size());
        for (std::size_t b = 0; b < amps.size(); ++b) {
            prob[b] = std::norm(amps[b]);
        }
        auto mean_sign = [&](std::uint64_t mask) {
            double plus = 0.0, minus = 0.0;
            for (std::size_t b = 0; b < prob.size(); ++b) {
                ((std::popcount(b & mask) & 1) ? minus : plus) += prob[b];
            }
            return plus - minus;
        };
        double e = 0.0;
        for (std::size_t q = 0; q < fields_.size(); ++q) {
            if (fields_[q] != 0.0) {
                e += fields_[q] * mean_sign(std::uint64_t{1} << q);
            }
        }
        for (auto m : masks_) {
            e -= spec_.c_ref * mean_sign(m);
        }
        return e;
    }

    /// -sum_l C_l prod z per basis state.
    [[nodiscard]] std::vector<double>
    constraint_energy(const std::vector<double> &strengths) const {
        std::vector<double> e(field_energy_.size(), 0.0);
        for (std::size_t b = 0; b < e.size(); ++b) {
            double s = 0.0;
            for (std::size_t l = 0; l < masks_.size(); ++l) {
                s += (std::popcount(b & masks_[l]) & 1) ? strengths[l]
                                                        : -strengths[l];
            }
            e[b] = s;
        }
        return e;
    }

    LogicalProblem problem_;
    LhzLayout layout_;
    ProtocolSpec spec_;
    std::vector<double> fields_;
    std::vector<std::uint64_t> masks_;
    std::uint64_t labeled_ = 0;
    std::vector<double> field_energy_;
    std::vector<double> ref_constraint_energy_;
    DiagonalHamiltonian eval_;
    std::vector<std::uint64_t> targets_;
};

[[nodiscard]] inline StateVector prepare_state(const LogicalProblem &problem,
                                               const LhzLayout &layout,
                                               const ProtocolSpec &spec,
                                               const ParamSet &params) {
    return ProtocolRunner(problem, layout, spec).prepare(params);
}

[[nodiscard]] inline Evaluation evaluate(const StateVector &psi,
                                         const LogicalProblem &problem,
                                         const LhzLayout &layout,
                                         const ProtocolSpec &spec) {
    return ProtocolRunner(problem, layout, spec).evaluate(psi);
}

} // namespace lhzqaoa
