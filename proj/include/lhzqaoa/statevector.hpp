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
 * Dense statevector simulation.
 *
 * Qubit q is bit q of the basis index, and bit value 0 is the +1
 * eigenvector of sigma_z. Gates follow the conventions in circuit.hpp.
 */

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "errors.hpp"
#include "layout.hpp"

namespace lhzqaoa {

inline constexpr std::size_t kMaxQubits = 26;

template <std::floating_point Real> class BasicStateVector {
  public:
    using value_type = std::complex<Real>;

    /// |0...0>.
    explicit BasicStateVector(std::size_t qubit_count)
        : qubits_(checked(qubit_count)),
          amps_(std::size_t{1} << qubit_count, value_type{0}) {
        amps_[0] = 1;
    }

    BasicStateVector(std::size_t qubit_count, std::vector<value_type> amps)
        : qubits_(checked(qubit_count)), amps_(std::move(amps)) {
        if (amps_.size() != (std::size_t{1} << qubits_)) {
            throw InvalidArgument("StateVector: amplitude count must be 2^K");
        }
    }

    [[nodiscard]] std::size_t qubit_count() const noexcept { return qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return amps_.size();
    }
    [[nodiscard]] std::span<const value_type> amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] std::span<value_type> amplitudes() noexcept { return amps_; }
    [[nodiscard]] const value_type &operator[](std::size_t i) const {
        return amps_[i];
    }
    [[nodiscard]] value_type &operator[](std::size_t i) { return amps_[i]; }

    [[nodiscard]] Real norm() const noexcept {
        Real s = 0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }

    void apply_rx(std::size_t q, Real theta) {
        check_qubit(q);
        const Real c = std::cos(theta / 2);
        const Real s = std::sin(theta / 2);
        const std::size_t bit = std::size_t{1} << q;
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if (i & bit) {
                continue;
            }
            const value_type a0 = amps_[i];
            const value_type a1 = amps_[i | bit];
            // [[c, -is], [-is, c]]
            amps_[i] = {c * a0.real() + s * a1.imag(),
                        c * a0.imag() - s * a1.real()};
            amps_[i | bit] = {s * a0.imag() + c * a1.real(),
                              -s * a0.real() + c * a1.imag()};
        }
    }

    void apply_rz(std::size_t q, Real phi) {
        check_qubit(q);
        const value_type p0 = std::polar(Real{1}, -phi / 2);
        const value_type p1 = std::conj(p0);
        const std::size_t bit = std::size_t{1} << q;
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            amps_[i] *= (i & bit) ? p1 : p0;
        }
    }

    void apply_cnot(std::size_t control, std::size_t target) {
        check_qubit(control);
        check_qubit(target);
        if (control == target) {
            throw InvalidArgument("CNOT control and target must differ");
        }
        const std::size_t cb = std::size_t{1} << control;
        const std::size_t tb = std::size_t{1} << target;
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if ((i & cb) && !(i & tb)) {
                std::swap(amps_[i], amps_[i | tb]);
            }
        }
    }

    /// exp(-i alpha prod_{q in mask} Z_q).
    void apply_zphase_mask(std::uint64_t mask, Real alpha) {
        if (mask >> qubits_) {
            throw InvalidArgument("ZPHASE qubit out of range");
        }
        const value_type even = std::polar(Real{1}, -alpha);
        const value_type odd = std::conj(even);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            amps_[i] *= (std::popcount(i & mask) & 1) ? odd : even;
        }
    }

    /// psi_b <- exp(-i t E_b) psi_b.
    void apply_diagonal_evolution(std::span<const double> energies, double t) {
        if (energies.size() != amps_.size()) {
            throw InvalidArgument("diagonal length != state dimension");
        }
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            amps_[i] *= std::polar(Real{1}, static_cast<Real>(-t * energies[i]));
        }
    }

    void apply(const Gate &g) {
        for (auto q : g.qubits) {
            check_qubit(q);
        }
        switch (g.kind) {
        case GateKind::rx:
            apply_rx(g.qubits[0], static_cast<Real>(g.angle));
            break;
        case GateKind::rz:
            apply_rz(g.qubits[0], static_cast<Real>(g.angle));
            break;
        case GateKind::cnot:
            apply_cnot(g.qubits[0], g.qubits[1]);
            break;
        case GateKind::zphase: {
            std::uint64_t mask = 0;
            for (auto q : g.qubits) {
                mask |= std::uint64_t{1} << q;
            }
            apply_zphase_mask(mask, static_cast<Real>(g.angle));
            break;
        }
        }
    }

    void apply(const Circuit &circuit) {
        if (circuit.qubit_count() > qubits_) {
            throw InvalidArgument("circuit is wider than the state");
        }
        for (const auto &layer : circuit.layers()) {
            for (const auto &g : layer.gates) {
                apply(g);
            }
        }
    }

    friend bool operator==(const BasicStateVector &,
                           const BasicStateVector &) = default;

  private:
    static std::size_t checked(std::size_t k) {
        if (k < 1 || k > kMaxQubits) {
            throw ResourceLimit("StateVector: qubit count " +
                                std::to_string(k) + " outside 1.." +
                                std::to_string(kMaxQubits));
        }
        return k;
    }
    void check_qubit(std::size_t q) const {
        if (q >= qubits_) {
            throw InvalidArgument("qubit " + std::to_string(q) +
                                  " out of range for " +
                                  std::to_string(qubits_) + "-qubit state");
        }
    }

    std::size_t qubits_;
    std::vector<value_type> amps_;
};

using StateVector = BasicStateVector<double>;

/// Equal superposition over all 2^K basis states.
template <std::floating_point Real = double>
[[nodiscard]] BasicStateVector<Real> init_uniform(std::size_t qubit_count) {
    BasicStateVector<Real> psi(qubit_count);
    const Real a = std::pow(Real{2}, -static_cast<Real>(qubit_count) / 2);
    for (auto &x : psi.amplitudes()) {
        x = a;
    }
    return psi;
}

/// Equal superposition over the qubits in `active`; the rest stay in |0>.
template <std::floating_point Real = double>
[[nodiscard]] BasicStateVector<Real> init_uniform(std::size_t qubit_count,
                                                  std::uint64_t active) {
    BasicStateVector<Real> psi(qubit_count);
    if (active >> qubit_count) {
        throw InvalidArgument("init_uniform: mask exceeds qubit count");
    }
    const Real a = std::pow(Real{2}, -static_cast<Real>(std::popcount(active)) / 2);
    for (std::size_t i = 0; i < psi.dimension(); ++i) {
        psi[i] = (i & ~active) ? Real{0} : a;
    }
    return psi;
}

template <std::floating_point Real = double>
[[nodiscard]] BasicStateVector<Real> basis_state(std::size_t qubit_count,
                                                 std::uint64_t index) {
    BasicStateVector<Real> psi(qubit_count);
    if (index >= psi.dimension()) {
        throw InvalidArgument("basis_state: index out of range");
    }
    psi[0] = 0;
    psi[index] = 1;
    return psi;
}

template <std::floating_point Real>
void apply_gate(BasicStateVector<Real> &psi, const Gate &g) {
    psi.apply(g);
}

template <std::floating_point Real>
void apply_circuit(BasicStateVector<Real> &psi, const Circuit &c) {
    psi.apply(c);
}

/// Energy of every computational basis state.
struct DiagonalHamiltonian {
    std::vector<double> energies;

    [[nodiscard]] std::size_t size() const noexcept { return energies.size(); }
};

/// Bit mask of each constraint's members.
[[nodiscard]] inline std::vector<std::uint64_t>
constraint_masks(const LhzLayout &layout) {
    if (layout.qubit_count() > 63) {
        throw ResourceLimit("constraint_masks: more than 63 qubits");
    }
    std::vector<std::uint64_t> masks;
    for (const auto &c : layout.constraints()) {
        std::uint64_t m = 0;
        for (const auto &mem : c.members) {
            m |= std::uint64_t{1} << mem.qubit;
        }
        masks.push_back(m);
    }
    return masks;
}

/// E(b) = sum_i J_i z_i(b) - sum_l C_l prod_{q in l} z_q(b).
///
/// With C_l > 0 the even-parity (constraint-satisfying) states are lowered.
[[nodiscard]] inline DiagonalHamiltonian
build_diagonal(const LhzLayout &layout, std::span<const double> fields,
               std::span<const double> constraint_strengths) {
    const std::size_t k = layout.qubit_count();
    if (fields.size() != k) {
        throw InvalidArgument("build_diagonal: fields length != qubit count");
    }
    if (constraint_strengths.size() != layout.constraint_count()) {
        throw InvalidArgument(
            "build_diagonal: strengths length != constraint count");
    }
    if (k > kMaxQubits) {
        throw ResourceLimit("build_diagonal: too many qubits");
    }
    const auto masks = constraint_masks(layout);
    DiagonalHamiltonian h;
    h.energies.resize(std::size_t{1} << k);
    for (std::size_t b = 0; b < h.energies.size(); ++b) {
        double e = 0.0;
        for (std::size_t q = 0; q < k; ++q) {
            e += ((b >> q) & 1U) ? -fields[q] : fields[q];
        }
        for (std::size_t l = 0; l < masks.size(); ++l) {
            const bool odd = std::popcount(b & masks[l]) & 1;
            e -= odd ? -constraint_strengths[l] : constraint_strengths[l];
        }
        h.energies[b] = e;
    }
    return h;
}

template <std::floating_point Real>
[[nodiscard]] double expectation(const BasicStateVector<Real> &psi,
                                 const DiagonalHamiltonian &h) {
    if (h.size() != psi.dimension()) {
        throw InvalidArgument("expectation: dimension mismatch");
    }
    double e = 0.0;
    for (std::size_t b = 0; b < h.size(); ++b) {
        e += static_cast<double>(std::norm(psi[b])) * h.energies[b];
    }
    return e;
}

template <std::floating_point Real>
[[nodiscard]] double
overlap_probability(const BasicStateVector<Real> &psi,
                    std::span<const std::uint64_t> basis_indices) {
    double p = 0.0;
    for (auto b : basis_indices) {
        if (b >= psi.dimension()) {
            throw InvalidArgument("overlap_probability: index out of range");
        }
        p += static_cast<double>(std::norm(psi[b]));
    }
    return p;
}

// ---------------------------------------------------------------------------
// Binary dump: 8-byte magic, uint64 K, then 2^K (re, im) double pairs, all
// little-endian.

inline constexpr char kStateMagic[8] = {'L', 'H', 'Z', 'S', 'V', '0', '0', '1'};

namespace detail {
inline void put_u64(std::ostream &os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) {
        b[i] = static_cast<unsigned char>(v >> (8 * i));
    }
    os.write(reinterpret_cast<const char *>(b), 8);
}
inline std::uint64_t get_u64(std::istream &is) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char *>(b), 8)) {
        throw ParseError(0, "state dump truncated");
    }
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v |= std::uint64_t{b[i]} << (8 * i);
    }
    return v;
}
} // namespace detail

inline void write_state(std::ostream &os, const StateVector &psi) {
    os.write(kStateMagic, sizeof kStateMagic);
    detail::put_u64(os, psi.qubit_count());
    for (const auto &a : psi.amplitudes()) {
        detail::put_u64(os, std::bit_cast<std::uint64_t>(a.real()));
        detail::put_u64(os, std::bit_cast<std::uint64_t>(a.imag()));
    }
}

[[nodiscard]] inline StateVector read_state(std::istream &is) {
    char magic[8];
    if (!is.read(magic, 8) || std::memcmp(magic, kStateMagic, 8) != 0) {
        throw ParseError(0, "not a state dump (bad magic)");
    }
    const auto k = detail::get_u64(is);
    if (k < 1 || k > kMaxQubits) {
        throw ParseError(0, "state dump qubit count out of range");
    }
    std::vector<std::complex<double>> amps(std::size_t{1} << k);
    for (auto &a : amps) {
        const double re = std::bit_cast<double>(detail::get_u64(is));
        const double im = std::bit_cast<double>(detail::get_u64(is));
        a = {re, im};
    }
    return StateVector(k, std::move(amps));
}

} // namespace lhzqaoa
