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
 * Gate-level circuits made of parallel layers.
 *
 * Conventions: RX(t) = exp(-i t X / 2), RZ(p) = exp(-i p Z / 2), CNOT is the
 * usual controlled-X, and ZPHASE(q1..qk, a) = exp(-i a Z_q1 ... Z_qk), so a
 * basis state picks up exp(-i a * prod_q (-1)^{b_q}).
 */

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <optional>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "layout.hpp"
#include "text.hpp"

namespace lhzqaoa {

enum class GateKind : std::uint8_t { rx, rz, cnot, zphase };

struct Gate {
    GateKind kind = GateKind::rz;
    /// rx/rz: {q}; cnot: {control, target}; zphase: 1-4 distinct qubits.
    std::vector<std::size_t> qubits;
    double angle = 0.0;

    static Gate rx(std::size_t q, double theta) {
        return {GateKind::rx, {q}, theta};
    }
    static Gate rz(std::size_t q, double phi) {
        return {GateKind::rz, {q}, phi};
    }
    static Gate cnot(std::size_t control, std::size_t target) {
        if (control == target) {
            throw InvalidArgument("CNOT control and target must differ");
        }
        return {GateKind::cnot, {control, target}, 0.0};
    }
    static Gate zphase(std::vector<std::size_t> qubits, double alpha) {
        if (qubits.empty() || qubits.size() > 4) {
            throw InvalidArgument("ZPHASE takes 1 to 4 qubits");
        }
        std::set<std::size_t> distinct(qubits.begin(), qubits.end());
        if (distinct.size() != qubits.size()) {
            throw InvalidArgument("ZPHASE qubits must be distinct");
        }
        return {GateKind::zphase, std::move(qubits), alpha};
    }

    friend bool operator==(const Gate &, const Gate &) = default;
};

struct Layer {
    std::vector<Gate> gates;

    friend bool operator==(const Layer &, const Layer &) = default;
};

class Circuit {
  public:
    explicit Circuit(std::size_t qubit_count, std::string name = {})
        : qubit_count_(qubit_count), name_(std::move(name)) {}

    [[nodiscard]] std::size_t qubit_count() const noexcept {
        return qubit_count_;
    }
    [[nodiscard]] const std::vector<Layer> &layers() const noexcept {
        return layers_;
    }
    [[nodiscard]] std::size_t depth() const noexcept { return layers_.size(); }
    [[nodiscard]] std::size_t gate_count() const noexcept {
        std::size_t n = 0;
        for (const auto &l : layers_) {
            n += l.gates.size();
        }
        return n;
    }

    [[nodiscard]] const std::string &name() const noexcept { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    /// Named numeric parameters the circuit was built from.
    [[nodiscard]] const std::vector<std::pair<std::string, double>> &
    params() const noexcept {
        return params_;
    }
    void add_param(std::string key, double value) {
        params_.emplace_back(std::move(key), value);
    }

    /// Appends a layer; qubit indices are range-checked, disjointness is not
    /// (see verify_layers).
    void add_layer(Layer layer) {
        for (const auto &g : layer.gates) {
            for (auto q : g.qubits) {
                if (q >= qubit_count_) {
                    throw InvalidArgument("gate qubit " + std::to_string(q) +
                                          " >= qubit count " +
                                          std::to_string(qubit_count_));
                }
            }
        }
        layers_.push_back(std::move(layer));
    }

    void append(const Circuit &other) {
        if (other.qubit_count_ != qubit_count_) {
            throw InvalidArgument("Circuit::append: qubit count mismatch");
        }
        layers_.insert(layers_.end(), other.layers_.begin(),
                       other.layers_.end());
    }

    friend bool operator==(const Circuit &, const Circuit &) = default;

  private:
    std::size_t qubit_count_;
    std::vector<Layer> layers_;
    std::string name_;
    std::vector<std::pair<std::string, double>> params_;
};

/// True iff within every layer no qubit is touched by two gates.
[[nodiscard]] inline bool verify_layers(const Circuit &circuit) {
    for (const auto &layer : circuit.layers()) {
        std::set<std::size_t> used;
        for (const auto &g : layer.gates) {
            for (auto q : g.qubits) {
                if (!used.insert(q).second) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// CNOT ladder along `path`, RZ(2 alpha) on the last qubit, ladder back.
/// The product equals ZPHASE(path, alpha) exactly.
[[nodiscard]] inline std::vector<Gate>
decompose_plaquette(const std::vector<std::size_t> &path, double alpha) {
    if (path.size() < 3 || path.size() > 4) {
        throw InvalidArgument("decompose_plaquette: path needs 3 or 4 qubits");
    }
    std::set<std::size_t> distinct(path.begin(), path.end());
    if (distinct.size() != path.size()) {
        throw InvalidArgument("decompose_plaquette: repeated qubit in path");
    }
    std::vector<Gate> gates;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        gates.push_back(Gate::cnot(path[k], path[k + 1]));
    }
    gates.push_back(Gate::rz(path.back(), 2.0 * alpha));
    for (std::size_t k = path.size() - 1; k-- > 0;) {
        gates.push_back(Gate::cnot(path[k], path[k + 1]));
    }
    return gates;
}

/// Number of layers in one pass of the constraint schedule.
inline constexpr std::size_t kPassLayers = 7;
/// Four passes: base, shifted one row, one column, one row and column.
inline constexpr std::array<std::pair<int, int>, 4> kPassShifts{
    {{0, 0}, {1, 0}, {0, 1}, {1, 1}}};

/// All plaquette phases prod_l ZPHASE(constraint_l, alpha_l) as CNOT/RZ
/// layers.
///
/// Constraints whose west corner has (row mod 2, col mod 2) equal to a pass
/// shift share no qubits, so each pass runs their decompositions side by
/// side: three CNOT layers, one RZ layer, three CNOT layers. Four passes
/// cover every constraint in at most 28 layers for any N. 3-body
/// constraints leave the third and fifth slot of their pass idle; layers
/// that end up empty are dropped.
[[nodiscard]] inline Circuit
build_constraint_block(const LhzLayout &layout,
                       const std::vector<double> &alpha_per_plaquette) {
    if (alpha_per_plaquette.size() != layout.constraint_count()) {
        throw InvalidArgument(
            "build_constraint_block: expected " +
            std::to_string(layout.constraint_count()) + " angles, got " +
            std::to_string(alpha_per_plaquette.size()));
    }
    Circuit circuit(layout.qubit_count(), "constraint_block");
    for (const auto &[dr, dc] : kPassShifts) {
        std::array<Layer, kPassLayers> slots;
        for (std::size_t l = 0; l < layout.constraint_count(); ++l) {
            const auto &c = layout.constraints()[l];
            if ((c.row & 1) != dr || (c.col & 1) != dc) {
                continue;
            }
            const auto path = c.qubits();
            const auto gates = decompose_plaquette(path, alpha_per_plaquette[l]);
            const std::size_t ladder = path.size() - 1;
            // CNOT k goes to slot k on the way up and slot 6-k on the way down.
            for (std::size_t k = 0; k < ladder; ++k) {
                slots[k].gates.push_back(gates[k]);
                slots[6 - k].gates.push_back(gates[gates.size() - 1 - k]);
            }
            slots[3].gates.push_back(gates[ladder]);
        }
        for (auto &s : slots) {
            if (!s.gates.empty()) {
                circuit.add_layer(std::move(s));
            }
        }
    }
    return circuit;
}

// ---------------------------------------------------------------------------
// Circuit text format:
//   QUBITS <n>
//   # name <name>             (optional metadata)
//   # param <key> <value>     (optional metadata, repeatable)
//   LAYER
//   RX q theta | RZ q phi | CNOT c t | ZPHASE q1 [q2 q3 q4] alpha
// Other '#' lines and blank lines are ignored.

inline void write_circuit(std::ostream &os, const Circuit &circuit) {
    os << "QUBITS " << circuit.qubit_count() << '\n';
    if (!circuit.name().empty()) {
        os << "# name " << circuit.name() << '\n';
    }
    for (const auto &[k, v] : circuit.params()) {
        os << "# param " << k << ' ' << format_real(v) << '\n';
    }
    for (const auto &layer : circuit.layers()) {
        os << "LAYER\n";
        for (const auto &g : layer.gates) {
            switch (g.kind) {
            case GateKind::rx:
                os << "RX " << g.qubits[0] << ' ' << format_real(g.angle);
                break;
            case GateKind::rz:
                os << "RZ " << g.qubits[0] << ' ' << format_real(g.angle);
                break;
            case GateKind::cnot:
                os << "CNOT " << g.qubits[0] << ' ' << g.qubits[1];
                break;
            case GateKind::zphase:
                os << "ZPHASE";
                for (auto q : g.qubits) {
                    os << ' ' << q;
                }
                os << ' ' << format_real(g.angle);
                break;
            }
            os << '\n';
        }
    }
}

[[nodiscard]] inline std::string emit_text(const Circuit &circuit) {
    std::ostringstream os;
    write_circuit(os, circuit);
    return os.str();
}

[[nodiscard]] inline Circuit read_circuit(std::istream &is) {
    std::string line;
    std::size_t lineno = 0;
    std::optional<Circuit> circuit;
    std::optional<Layer> layer;
    auto flush = [&] {
        if (layer) {
            circuit->add_layer(std::move(*layer));
            layer.reset();
        }
    };
    while (std::getline(is, line)) {
        ++lineno;
        const auto tok = split_ws(line);
        if (tok.empty()) {
            continue;
        }
        if (tok[0].front() == '#') {
            if (circuit && tok.size() >= 3 && tok[0] == "#" &&
                tok[1] == "name") {
                circuit->set_name(std::string(tok[2]));
            } else if (circuit && tok.size() == 4 && tok[0] == "#" &&
                       tok[1] == "param") {
                circuit->add_param(std::string(tok[2]),
                                   parse_real(tok[3], lineno));
            }
            continue;
        }
        if (!circuit) {
            if (tok.size() != 2 || tok[0] != "QUBITS") {
                throw ParseError(lineno, "expected 'QUBITS <n>' header");
            }
            circuit.emplace(parse_size(tok[1], lineno));
            continue;
        }
        if (tok[0] == "LAYER") {
            if (tok.size() != 1) {
                throw ParseError(lineno, "LAYER takes no arguments");
            }
            flush();
            layer.emplace();
            continue;
        }
        if (!layer) {
            throw ParseError(lineno, "gate line before first LAYER");
        }
        auto qubit = [&](std::string_view t) {
            const auto q = parse_size(t, lineno);
            if (q >= circuit->qubit_count()) {
                throw ParseError(lineno, "qubit " + std::to_string(q) +
                                             " out of range");
            }
            return q;
        };
        try {
            if (tok[0] == "RX" || tok[0] == "RZ") {
                if (tok.size() != 3) {
                    throw ParseError(lineno, std::string(tok[0]) +
                                                 " expects 'q angle'");
                }
                const auto q = qubit(tok[1]);
                const double a = parse_real(tok[2], lineno);
                layer->gates.push_back(tok[0] == "RX" ? Gate::rx(q, a)
                                                      : Gate::rz(q, a));
            } else if (tok[0] == "CNOT") {
                if (tok.size() != 3) {
                    throw ParseError(lineno, "CNOT expects 'control target'");
                }
                layer->gates.push_back(Gate::cnot(qubit(tok[1]), qubit(tok[2])));
            } else if (tok[0] == "ZPHASE") {
                if (tok.size() < 3 || tok.size() > 6) {
                    throw ParseError(lineno,
                                     "ZPHASE expects 1-4 qubits and an angle");
                }
                std::vector<std::size_t> qs;
                for (std::size_t t = 1; t + 1 < tok.size(); ++t) {
                    qs.push_back(qubit(tok[t]));
                }
                layer->gates.push_back(
                    Gate::zphase(std::move(qs), parse_real(tok.back(), lineno)));
            } else {
                throw ParseError(lineno, "unknown gate '" +
                                             std::string(tok[0]) + "'");
            }
        } catch (const InvalidArgument &e) {
            throw ParseError(lineno, e.what());
        }
    }
    if (!circuit) {
        throw ParseError(0, "missing 'QUBITS <n>' header");
    }
    flush();
    return std::move(*circuit);
}

[[nodiscard]] inline Circuit parse_text(const std::string &text) {
    std::istringstream is(text);
    return read_circuit(is);
}

inline void save_circuit(const std::string &path, const Circuit &circuit) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    write_circuit(os, circuit);
    if (!os) {
        throw std::runtime_error("write failed: " + path);
    }
}

[[nodiscard]] inline Circuit load_circuit(const std::string &path) {
    std::ifstream is(path);
    if (!is) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return read_circuit(is);
}

} // namespace lhzqaoa
