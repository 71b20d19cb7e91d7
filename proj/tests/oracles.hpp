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

// Test-only reference implementations. Nothing here calls into the
// statevector kernels; gates are expanded into explicit dense matrices.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <algorithm>
#include <vector>

#include "lhzqaoa/circuit.hpp"
#include "lhzqaoa/layout.hpp"
#include "lhzqaoa/problem.hpp"
#include "lhzqaoa/statevector.hpp"

namespace oracle {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};

/// Row-major dense square matrix.
struct Matrix {
    std::size_t n = 0;
    std::vector<cplx> a;

    explicit Matrix(std::size_t dim) : n(dim), a(dim * dim, 0.0) {}
    static Matrix identity(std::size_t dim) {
        Matrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }
    cplx &operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const {
        return a[r * n + c];
    }
};

inline Matrix operator*(const Matrix &x, const Matrix &y) {
    Matrix z(x.n);
    for (std::size_t i = 0; i < x.n; ++i) {
        for (std::size_t k = 0; k < x.n; ++k) {
            const cplx v = x(i, k);
            if (v == cplx{}) {
                continue;
            }
            for (std::size_t j = 0; j < x.n; ++j) {
                z(i, j) += v * y(k, j);
            }
        }
    }
    return z;
}

inline double max_abs_diff(const Matrix &x, const Matrix &y) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.a.size(); ++i) {
        d = std::max(d, std::abs(x.a[i] - y.a[i]));
    }
    return d;
}

/// Embeds a 2x2 single-qubit matrix acting on qubit q of an n-qubit space.
inline Matrix embed1(const cplx u[2][2], std::size_t q, std::size_t nq) {
    const std::size_t dim = std::size_t{1} << nq;
    Matrix m(dim);
    for (std::size_t col = 0; col < dim; ++col) {
        const std::size_t b = (col >> q) & 1U;
        for (std::size_t out = 0; out < 2; ++out) {
            const std::size_t row = (col & ~(std::size_t{1} << q)) | (out << q);
            m(row, col) += u[out][b];
        }
    }
    return m;
}

inline Matrix gate_matrix(const lhzqaoa::Gate &g, std::size_t nq) {
    using lhzqaoa::GateKind;
    const std::size_t dim = std::size_t{1} << nq;
    switch (g.kind) {
    case GateKind::rx: {
        const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
        const cplx u[2][2] = {{c, -I * s}, {-I * s, c}};
        return embed1(u, g.qubits[0], nq);
    }
    case GateKind::rz: {
        const cplx u[2][2] = {{std::exp(-I * (g.angle / 2)), 0.0},
                              {0.0, std::exp(I * (g.angle / 2))}};
        return embed1(u, g.qubits[0], nq);
    }
    case GateKind::cnot: {
        Matrix m(dim);
        for (std::size_t col = 0; col < dim; ++col) {
            std::size_t row = col;
            if ((col >> g.qubits[0]) & 1U) {
                row ^= std::size_t{1} << g.qubits[1];
            }
            m(row, col) = 1.0;
        }
        return m;
    }
    case GateKind::zphase: {
        Matrix m(dim);
        for (std::size_t b = 0; b < dim; ++b) {
            int p = 1;
            for (auto q : g.qubits) {
                p *= ((b >> q) & 1U) ? -1 : 1;
            }
            m(b, b) = std::exp(-I * (g.angle * p));
        }
        return m;
    }
    }
    return Matrix::identity(dim);
}

/// Product unitary of a gate list applied first-to-last.
inline Matrix sequence_unitary(const std::vector<lhzqaoa::Gate> &gates,
                               std::size_t nq) {
    Matrix u = Matrix::identity(std::size_t{1} << nq);
    for (const auto &g : gates) {
        u = gate_matrix(g, nq) * u;
    }
    return u;
}

/// exp(-i alpha Z...Z) on the given qubits, built from the parity rule.
inline Matrix zzzz_unitary(const std::vector<std::size_t> &qubits,
                           double alpha, std::size_t nq) {
    const std::size_t dim = std::size_t{1} << nq;
    Matrix m(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        int ones = 0;
        for (auto q : qubits) {
            ones += static_cast<int>((b >> q) & 1U);
        }
        m(b, b) = std::exp(-I * alpha * ((ones % 2) ? -1.0 : 1.0));
    }
    return m;
}

inline std::vector<cplx> random_state(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<cplx> v(dim);
    double norm = 0.0;
    for (auto &x : v) {
        x = {g(rng), g(rng)};
        norm += std::norm(x);
    }
    for (auto &x : v) {
        x /= std::sqrt(norm);
    }
    return v;
}

/// Applies prod_l exp(-i alpha_l P_l) with P_l read off constraint_parities.
inline std::vector<cplx>
apply_constraint_diagonal(std::vector<cplx> psi,
                          const lhzqaoa::LhzLayout &layout,
                          const std::vector<double> &alpha) {
    for (std::size_t b = 0; b < psi.size(); ++b) {
        const auto bits = lhzqaoa::bits_from_index(b, layout.qubit_count());
        const auto par = lhzqaoa::constraint_parities(bits, layout);
        double phase = 0.0;
        for (std::size_t l = 0; l < par.size(); ++l) {
            phase += alpha[l] * par[l];
        }
        psi[b] *= std::exp(-I * phase);
    }
    return psi;
}

inline double vec_distance(std::span<const cplx> a, std::span<const cplx> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::norm(a[i] - b[i]);
    }
    return std::sqrt(s);
}

/// Naive enumeration: minimum energy and every minimizer (tolerance 1e-12).
struct Enumerated {
    double energy;
    std::vector<lhzqaoa::SpinConfig> configs;
};

inline double naive_energy(const lhzqaoa::LogicalProblem &p,
                           const lhzqaoa::SpinConfig &s) {
    double e = 0.0;
    for (std::size_t i = 0; i < p.n_spins(); ++i) {
        for (std::size_t j = i + 1; j < p.n_spins(); ++j) {
            e += p.coupling(i, j) * s[i] * s[j];
        }
    }
    return e;
}

inline Enumerated enumerate_ground(const lhzqaoa::LogicalProblem &p) {
    const std::size_t n = p.n_spins();
    Enumerated out{INFINITY, {}};
    std::vector<std::pair<double, lhzqaoa::SpinConfig>> all;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        lhzqaoa::SpinConfig s(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = ((x >> i) & 1U) ? -1 : 1;
        }
        const double e = naive_energy(p, s);
        out.energy = std::min(out.energy, e);
        all.emplace_back(e, s);
    }
    for (auto &[e, s] : all) {
        if (e <= out.energy + 1e-12) {
            out.configs.push_back(s);
        }
    }
    std::sort(out.configs.begin(), out.configs.end());
    return out;
}

} // namespace oracle
