// Copyright 2026 The DEA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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
#include <span>
#include <stdexcept>
#include <vector>

#include "dea/pauli.hpp"

namespace dea {

using Complex = std::complex<double>;

/// Dense complex amplitude vector over the computational basis. Basis index
/// i encodes the bitstring b with bit q of i equal to b_q.
class StateVector {
  public:
    static constexpr int kMaxQubits = 20;

    explicit StateVector(int qubits)
        : qubits_(check_qubits(qubits)), amps_(std::size_t(1) << qubits, Complex(0, 0)) {}

    static StateVector computational_basis(int qubits, std::uint64_t bits) {
        StateVector s(qubits);
        if (bits >= s.dimension()) throw std::invalid_argument("StateVector: basis index out of range");
        s.amps_[bits] = Complex(1, 0);
        return s;
    }

    int qubits() const { return qubits_; }
    std::size_t dimension() const { return amps_.size(); }

    Complex& operator[](std::size_t i) { return amps_[i]; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }
    std::span<const Complex> amplitudes() const { return amps_; }
    std::span<Complex> amplitudes() { return amps_; }

    double norm() const {
        double s = 0;
        for (const Complex& a : amps_) s += std::norm(a);
        return std::sqrt(s);
    }

    StateVector& operator*=(Complex c) {
        for (Complex& a : amps_) a *= c;
        return *this;
    }
    StateVector& operator+=(const StateVector& o) {
        for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += o.amps_[i];
        return *this;
    }

  private:
    static int check_qubits(int q) {
        if (q < 1 || q > kMaxQubits) throw std::invalid_argument("StateVector: qubit count out of range");
        return q;
    }

    int qubits_;
    std::vector<Complex> amps_;
};

/// Inner product, conjugate-linear in the first argument.
inline Complex inner(const StateVector& a, const StateVector& b) {
    if (a.dimension() != b.dimension()) throw std::invalid_argument("inner: dimension mismatch");
    Complex s(0, 0);
    for (std::size_t i = 0; i < a.dimension(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

/// Chordal distance between unit vectors, sqrt(2 - 2 Re<a,b>).
inline double chordal_distance(const StateVector& a, const StateVector& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.dimension(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// In-place gate kernels.
// ---------------------------------------------------------------------------

inline void apply_hadamard(StateVector& s, int q) {
    const std::size_t bit = std::size_t(1) << q;
    const double inv = 1.0 / std::numbers::sqrt2;
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        if (i & bit) continue;
        Complex a = s[i], b = s[i | bit];
        s[i] = (a + b) * inv;
        s[i | bit] = (a - b) * inv;
    }
}

inline void apply_cnot(StateVector& s, int control, int target) {
    const std::size_t cbit = std::size_t(1) << control, tbit = std::size_t(1) << target;
    for (std::size_t i = 0; i < s.dimension(); ++i)
        if ((i & cbit) && !(i & tbit)) std::swap(s[i], s[i | tbit]);
}

inline void apply_cz(StateVector& s, int control, int target) {
    const std::size_t cbit = std::size_t(1) << control, tbit = std::size_t(1) << target;
    for (std::size_t i = 0; i < s.dimension(); ++i)
        if ((i & cbit) && (i & tbit)) s[i] = -s[i];
}

/// Applies a full Pauli word: |b> -> i^{#Y} (-1)^{popcount(b & z_mask)} |b ^ x_mask>.
inline void apply_pauli_word(StateVector& s, const PauliString& p) {
    if (p.qubits() != s.qubits()) throw std::invalid_argument("apply_pauli_word: size mismatch");
    const std::uint64_t xm = p.x_mask(), zm = p.z_mask();
    const int ny = std::popcount(xm & zm);
    static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex global = kIPow[ny % 4];
    auto sign = [&](std::uint64_t b) { return (std::popcount(b & zm) & 1) ? -1.0 : 1.0; };
    if (xm == 0) {
        for (std::size_t i = 0; i < s.dimension(); ++i) s[i] *= global * sign(i);
        return;
    }
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        std::size_t j = i ^ xm;
        if (j < i) continue;
        Complex a = s[i], b = s[j];
        s[j] = global * sign(i) * a;
        s[i] = global * sign(j) * b;
    }
}

/// Applies a Pauli word controlled on `control` being |1>. The word must
/// carry I at the control position.
inline void apply_controlled_pauli_word(StateVector& s, int control, const PauliString& p) {
    if (p.qubits() != s.qubits()) throw std::invalid_argument("apply_controlled_pauli_word: size mismatch");
    if (p.letter(control) != Pauli::I)
        throw std::invalid_argument("apply_controlled_pauli_word: word must be I at the control");
    const std::size_t cbit = std::size_t(1) << control;
    const std::uint64_t xm = p.x_mask(), zm = p.z_mask();
    const int ny = std::popcount(xm & zm);
    static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex global = kIPow[ny % 4];
    auto sign = [&](std::uint64_t b) { return (std::popcount(b & zm) & 1) ? -1.0 : 1.0; };
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        if (!(i & cbit)) continue;
        std::size_t j = i ^ xm;
        if (xm == 0) {
            s[i] *= global * sign(i);
        } else if (j > i) {
            Complex a = s[i], b = s[j];
            s[j] = global * sign(i) * a;
            s[i] = global * sign(j) * b;
        }
    }
}

/// psi <- G psi for a Pauli-sum generator. Not unitary for multi-term G.
inline StateVector apply_generator(const StateVector& s, const Generator& g) {
    if (g.qubits() != s.qubits()) throw std::invalid_argument("apply_generator: size mismatch");
    StateVector out(s.qubits());
    for (const PauliString& t : g.terms()) {
        StateVector tmp = s;
        apply_pauli_word(tmp, t);
        out += tmp;
    }
    return out;
}

}  // namespace dea
