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
 * Parity (LHZ) layout of an all-to-all problem.
 *
 * Physical qubit (i, j), i < j, carries the relative orientation s_i s_j and
 * sits at grid point (row = i, col = j). The upper triangle of the coupling
 * matrix is then a patch of the square lattice, and every parity constraint
 * is one unit square with corners
 *
 *     west  = (i, j)       north = (i, j+1)
 *     south = (i+1, j)     east  = (i+1, j+1)
 *
 * for 0 <= i <= N-3 and i+1 <= j <= N-2. Labels along each square pair up
 * the logical indices i, i+1, j, j+1 exactly twice. When j = i+1 the south
 * corner lies on the diagonal and has no pair label: in augmented mode an
 * ancilla pinned to +1 fills it, in bare mode the constraint is 3-body.
 *
 * Members of a constraint are stored in path order west -> north -> east ->
 * south, which walks three sides of the square using lattice edges only.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "problem.hpp"

namespace lhzqaoa {

enum class AncillaMode { augmented, bare };

[[nodiscard]] inline const char *to_string(AncillaMode m) noexcept {
    return m == AncillaMode::augmented ? "augmented" : "bare";
}

[[nodiscard]] inline AncillaMode parse_ancilla_mode(std::string_view s) {
    if (s == "augmented") {
        return AncillaMode::augmented;
    }
    if (s == "bare") {
        return AncillaMode::bare;
    }
    throw InvalidArgument("unknown ancilla mode '" + std::string(s) + "'");
}

enum class Role : std::uint8_t { west, north, east, south };

[[nodiscard]] inline char role_char(Role r) noexcept {
    switch (r) {
    case Role::west: return 'w';
    case Role::north: return 'n';
    case Role::east: return 'e';
    case Role::south: return 's';
    }
    return '?';
}

struct PhysicalQubit {
    std::size_t id = 0;
    int row = 0;
    int col = 0;
    bool ancilla = false;
    /// Logical pair (i, j), i < j; meaningless for ancillas.
    std::size_t i = 0;
    std::size_t j = 0;

    friend bool operator==(const PhysicalQubit &,
                           const PhysicalQubit &) = default;
};

struct ConstraintMember {
    std::size_t qubit = 0;
    Role role = Role::west;

    friend bool operator==(const ConstraintMember &,
                           const ConstraintMember &) = default;
};

struct Constraint {
    /// Grid coordinates of the west corner.
    int row = 0;
    int col = 0;
    /// Path order (w, n, e, s); 3 entries when the south corner is absent.
    std::vector<ConstraintMember> members;

    [[nodiscard]] std::vector<std::size_t> qubits() const {
        std::vector<std::size_t> q;
        q.reserve(members.size());
        for (const auto &m : members) {
            q.push_back(m.qubit);
        }
        return q;
    }

    friend bool operator==(const Constraint &, const Constraint &) = default;
};

class LhzLayout {
  public:
    /// Checks every structural invariant; throws InvalidArgument otherwise.
    LhzLayout(std::size_t n_logical, AncillaMode mode,
              std::vector<PhysicalQubit> qubits,
              std::vector<Constraint> constraints)
        : n_(n_logical), mode_(mode), qubits_(std::move(qubits)),
          constraints_(std::move(constraints)) {
        validate();
    }

    [[nodiscard]] std::size_t n_logical() const noexcept { return n_; }
    [[nodiscard]] AncillaMode mode() const noexcept { return mode_; }
    [[nodiscard]] const std::vector<PhysicalQubit> &qubits() const noexcept {
        return qubits_;
    }
    [[nodiscard]] const std::vector<Constraint> &constraints() const noexcept {
        return constraints_;
    }
    [[nodiscard]] std::size_t qubit_count() const noexcept {
        return qubits_.size();
    }
    /// K = N(N-1)/2 labeled qubits.
    [[nodiscard]] std::size_t labeled_count() const noexcept {
        return pair_count(n_);
    }
    [[nodiscard]] std::size_t n_ancillas() const noexcept {
        return qubits_.size() - labeled_count();
    }
    [[nodiscard]] std::size_t constraint_count() const noexcept {
        return constraints_.size();
    }

    /// Id of the qubit labeled (i, j) in either order.
    [[nodiscard]] std::size_t qubit_for_pair(std::size_t i,
                                             std::size_t j) const {
        if (i > j) {
            std::swap(i, j);
        }
        const auto it = by_pair_.find({i, j});
        if (i == j || it == by_pair_.end()) {
            throw InvalidArgument("qubit_for_pair: no such pair");
        }
        return it->second;
    }

    /// Bit mask over basis-index bits of all labeled (non-ancilla) qubits.
    [[nodiscard]] std::uint64_t labeled_mask() const {
        if (qubits_.size() > 63) {
            throw ResourceLimit("labeled_mask: more than 63 qubits");
        }
        std::uint64_t m = 0;
        for (const auto &q : qubits_) {
            if (!q.ancilla) {
                m |= std::uint64_t{1} << q.id;
            }
        }
        return m;
    }

  private:
    void validate() {
        const std::size_t k = pair_count(n_);
        if (n_ < 2) {
            throw InvalidArgument("LhzLayout: n_logical must be >= 2");
        }
        std::set<std::pair<int, int>> positions;
        std::vector<bool> id_seen(qubits_.size(), false);
        std::size_t labeled = 0;
        for (const auto &q : qubits_) {
            if (q.id >= qubits_.size() || id_seen[q.id]) {
                throw InvalidArgument("LhzLayout: qubit ids must be 0..n-1");
            }
            id_seen[q.id] = true;
            if (!positions.insert({q.row, q.col}).second) {
                throw InvalidArgument("LhzLayout: duplicate position");
            }
            if (!q.ancilla) {
                if (!(q.i < q.j && q.j < n_) ||
                    !by_pair_.emplace(std::pair{q.i, q.j}, q.id).second) {
                    throw InvalidArgument("LhzLayout: bad or repeated label");
                }
                ++labeled;
            }
        }
        if (labeled != k) {
            throw InvalidArgument("LhzLayout: expected " + std::to_string(k) +
                                  " labeled qubits");
        }
        if (constraints_.size() != k - n_ + 1) {
            throw InvalidArgument("LhzLayout: expected K-N+1 = " +
                                  std::to_string(k - n_ + 1) + " constraints");
        }
        std::vector<const PhysicalQubit *> by_id(qubits_.size());
        for (const auto &q : qubits_) {
            by_id[q.id] = &q;
        }
        std::vector<int> membership(qubits_.size(), 0);
        for (const auto &c : constraints_) {
            if (c.members.size() < 3 || c.members.size() > 4) {
                throw InvalidArgument("LhzLayout: constraint needs 3-4 qubits");
            }
            std::vector<int> parity(n_, 0);
            std::set<std::size_t> distinct;
            for (const auto &m : c.members) {
                if (m.qubit >= qubits_.size() ||
                    !distinct.insert(m.qubit).second) {
                    throw InvalidArgument("LhzLayout: bad constraint member");
                }
                ++membership[m.qubit];
                const auto *q = by_id[m.qubit];
                if (!q->ancilla) {
                    ++parity[q->i];
                    ++parity[q->j];
                }
            }
            for (int p : parity) {
                if (p % 2 != 0) {
                    throw InvalidArgument(
                        "LhzLayout: constraint labels not parity-closed");
                }
            }
        }
        for (int cnt : membership) {
            if (cnt > 4) {
                throw InvalidArgument("LhzLayout: qubit in more than 4 "
                                      "constraints");
            }
        }
    }

    std::size_t n_;
    AncillaMode mode_;
    std::vector<PhysicalQubit> qubits_;
    std::vector<Constraint> constraints_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> by_pair_;
};

/// Square-lattice parity layout for N logical spins.
///
/// Labeled qubits take ids 0..K-1 in row-major pair order; in augmented mode
/// the N-2 ancillas at diagonal points (r, r), r = 1..N-2, follow as ids
/// K..K+N-3. Constraints are ordered row by row from the top.
[[nodiscard]] inline LhzLayout
build_layout(std::size_t n_logical,
             AncillaMode mode = AncillaMode::augmented) {
    if (n_logical < 2) {
        throw InvalidArgument("build_layout: n_logical must be >= 2");
    }
    const std::size_t n = n_logical;
    const std::size_t k = pair_count(n);
    std::vector<PhysicalQubit> qubits;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            qubits.push_back({pair_index(i, j, n), static_cast<int>(i),
                              static_cast<int>(j), false, i, j});
        }
    }
    if (mode == AncillaMode::augmented) {
        for (std::size_t r = 1; r + 1 < n; ++r) {
            qubits.push_back({k + r - 1, static_cast<int>(r),
                              static_cast<int>(r), true, 0, 0});
        }
    }

    std::vector<Constraint> constraints;
    for (std::size_t i = 0; i + 2 < n; ++i) {
        for (std::size_t j = i + 1; j + 1 < n; ++j) {
            Constraint c;
            c.row = static_cast<int>(i);
            c.col = static_cast<int>(j);
            c.members.push_back({pair_index(i, j, n), Role::west});
            c.members.push_back({pair_index(i, j + 1, n), Role::north});
            c.members.push_back({pair_index(i + 1, j + 1, n), Role::east});
            if (i + 1 < j) {
                c.members.push_back({pair_index(i + 1, j, n), Role::south});
            } else if (mode == AncillaMode::augmented) {
                c.members.push_back({k + i, Role::south});
            }
            constraints.push_back(std::move(c));
        }
    }
    return LhzLayout(n, mode, std::move(qubits), std::move(constraints));
}

/// sigma_z eigenvalues per physical qubit (+1 <-> basis bit 0).
using PhysicalBits = std::vector<Spin>;

/// J_i per physical qubit: the coupling of its pair label, 0 for ancillas.
[[nodiscard]] inline std::vector<double>
local_fields(const LogicalProblem &problem, const LhzLayout &layout) {
    if (problem.n_spins() != layout.n_logical()) {
        throw InvalidArgument("local_fields: problem has N = " +
                              std::to_string(problem.n_spins()) +
                              ", layout has N = " +
                              std::to_string(layout.n_logical()));
    }
    std::vector<double> fields(layout.qubit_count(), 0.0);
    for (const auto &q : layout.qubits()) {
        if (!q.ancilla) {
            fields[q.id] = problem.coupling(q.i, q.j);
        }
    }
    return fields;
}

[[nodiscard]] inline PhysicalBits encode(const SpinConfig &config,
                                         const LhzLayout &layout) {
    if (config.size() != layout.n_logical()) {
        throw InvalidArgument("encode: config length != N");
    }
    PhysicalBits bits(layout.qubit_count(), 1);
    for (const auto &q : layout.qubits()) {
        if (!q.ancilla) {
            bits[q.id] = static_cast<Spin>(config[q.i] * config[q.j]);
        }
    }
    return bits;
}

[[nodiscard]] inline std::vector<Spin>
constraint_parities(const PhysicalBits &bits, const LhzLayout &layout) {
    if (bits.size() != layout.qubit_count()) {
        throw InvalidArgument("constraint_parities: bits length mismatch");
    }
    std::vector<Spin> out;
    out.reserve(layout.constraint_count());
    for (const auto &c : layout.constraints()) {
        int p = 1;
        for (const auto &m : c.members) {
            p *= bits[m.qubit];
        }
        out.push_back(static_cast<Spin>(p));
    }
    return out;
}

struct Decoded {
    SpinConfig config;
    std::size_t n_violated = 0;
};

/// Reads s_0 = +1, s_j = bit of qubit (0, j); reports unsatisfied
/// constraints instead of failing on them.
[[nodiscard]] inline Decoded decode(const PhysicalBits &bits,
                                    const LhzLayout &layout) {
    if (bits.size() != layout.qubit_count()) {
        throw InvalidArgument("decode: bits length mismatch");
    }
    Decoded out;
    out.config.assign(layout.n_logical(), 1);
    for (std::size_t j = 1; j < layout.n_logical(); ++j) {
        out.config[j] = bits[layout.qubit_for_pair(0, j)];
    }
    for (Spin p : constraint_parities(bits, layout)) {
        out.n_violated += (p != 1);
    }
    return out;
}

/// Computational-basis index of a bit string (qubit q <-> bit q).
[[nodiscard]] inline std::uint64_t basis_index(const PhysicalBits &bits) {
    std::uint64_t idx = 0;
    for (std::size_t q = 0; q < bits.size(); ++q) {
        if (bits[q] == -1) {
            idx |= std::uint64_t{1} << q;
        }
    }
    return idx;
}

[[nodiscard]] inline PhysicalBits bits_from_index(std::uint64_t index,
                                                  std::size_t qubit_count) {
    PhysicalBits bits(qubit_count, 1);
    for (std::size_t q = 0; q < qubit_count; ++q) {
        if ((index >> q) & 1U) {
            bits[q] = -1;
        }
    }
    return bits;
}

/// Layout dump: header lines, then `id row col label` per qubit (label
/// `i,j` or `anc`), then `l: id id id [id]` per constraint in path order.
inline void write_layout(std::ostream &os, const LhzLayout &layout) {
    os << "# N " << layout.n_logical() << " mode " << to_string(layout.mode())
       << " qubits " << layout.qubit_count() << " constraints "
       << layout.constraint_count() << '\n';
    for (const auto &q : layout.qubits()) {
        os << q.id << ' ' << q.row << ' ' << q.col << ' ';
        if (q.ancilla) {
            os << "anc";
        } else {
            os << q.i << ',' << q.j;
        }
        os << '\n';
    }
    for (std::size_t l = 0; l < layout.constraint_count(); ++l) {
        os << l << ':';
        for (const auto &m : layout.constraints()[l].members) {
            os << ' ' << m.qubit;
        }
        os << '\n';
    }
}

} // namespace lhzqaoa
