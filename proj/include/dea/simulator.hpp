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

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <variant>

#include "dea/circuit.hpp"
#include "dea/state.hpp"

namespace dea {

enum class ExponentialMethod { Auto, CommutingProduct, Taylor };

namespace detail {

/// One product factor of a commuting exponential:
/// psi <- cos(angle/2) psi - i sin(angle/2) P psi.
inline void apply_term_rotation(StateVector& s, const PauliString& p, double angle) {
    const double c = std::cos(angle / 2), sn = std::sin(angle / 2);
    StateVector flipped = s;
    apply_pauli_word(flipped, p);
    for (std::size_t i = 0; i < s.dimension(); ++i)
        s[i] = c * s[i] - Complex(0, sn) * flipped[i];
}

/// Truncated Taylor evaluation of exp(-i*angle*G/2) psi. The angle is split
/// into substeps so that ||G * angle_sub / 2|| <= 1, which keeps the series
/// free of cancellation; each substep is summed until the a priori remainder
/// bound x^{n+1}/(n+1)! drops below 1e-16.
inline void apply_taylor_exponential(StateVector& s, const Generator& g, double angle) {
    const double x_total = g.term_count() * std::abs(angle) / 2.0;
    const int substeps = std::max(1, static_cast<int>(std::ceil(x_total)));
    const double sub_angle = angle / substeps;
    const double x = g.term_count() * std::abs(sub_angle) / 2.0;
    for (int step = 0; step < substeps; ++step) {
        StateVector acc = s;          // n = 0 term
        StateVector power = s;        // (-i*sub_angle/2)^n G^n psi / n!
        double bound = 1.0;
        for (int n = 1; n <= 64; ++n) {
            power = apply_generator(power, g);
            power *= Complex(0, -sub_angle / 2.0) * (1.0 / n);
            acc += power;
            bound *= x / n;
            if (bound < 1e-16) break;
        }
        s = acc;
    }
}

}  // namespace detail

/// Returns exp(-i*angle*G/2) s. Commuting generators factor into per-term
/// rotations; otherwise a truncated Taylor series with an a priori remainder
/// bound below 1e-13 is used.
inline StateVector apply_pauli_sum_exponential(const StateVector& s, const Generator& g, double angle,
                                               ExponentialMethod method = ExponentialMethod::Auto) {
    if (g.qubits() != s.qubits())
        throw std::invalid_argument("apply_pauli_sum_exponential: size mismatch");
    StateVector out = s;
    bool product = method == ExponentialMethod::CommutingProduct ||
                   (method == ExponentialMethod::Auto && g.pairwise_commuting());
    if (method == ExponentialMethod::CommutingProduct && !g.pairwise_commuting())
        throw std::invalid_argument("CommutingProduct requires pairwise commuting terms");
    if (product) {
        for (const PauliString& t : g.terms()) detail::apply_term_rotation(out, t, angle);
    } else {
        detail::apply_taylor_exponential(out, g, angle);
    }
    return out;
}

namespace detail {

inline void check_assignment(const ParametricCircuit& c, const ParameterAssignment& theta) {
    if (static_cast<int>(theta.size()) != c.parameter_count())
        throw std::invalid_argument("parameter assignment does not match the roster");
    for (double v : theta)
        if (!std::isfinite(v)) throw std::invalid_argument("parameter value must be finite");
}

inline void apply_gate(StateVector& s, const GateSpec& gate, const ParametricCircuit& c,
                       const ParameterAssignment& theta) {
    if (const auto* p = std::get_if<PrimitiveGate>(&gate)) {
        switch (p->kind) {
            case PrimitiveGate::Kind::H: apply_hadamard(s, p->qubit); break;
            case PrimitiveGate::Kind::X: apply_pauli_word(s, PauliString::single(s.qubits(), Pauli::X, p->qubit)); break;
            case PrimitiveGate::Kind::Y: apply_pauli_word(s, PauliString::single(s.qubits(), Pauli::Y, p->qubit)); break;
            case PrimitiveGate::Kind::Z: apply_pauli_word(s, PauliString::single(s.qubits(), Pauli::Z, p->qubit)); break;
        }
    } else if (const auto* cg = std::get_if<ControlledGate>(&gate)) {
        if (cg->kind == ControlledGate::Kind::CNOT)
            apply_cnot(s, cg->control, cg->target);
        else
            apply_cz(s, cg->control, cg->target);
    } else if (const auto* cp = std::get_if<ControlledPauliGate>(&gate)) {
        apply_controlled_pauli_word(s, cp->control, cp->word);
    } else if (const auto* r = std::get_if<RotationGate>(&gate)) {
        const auto& roster = c.parameters();
        std::size_t k = 0;
        while (roster[k] != r->parameter) ++k;
        s = apply_pauli_sum_exponential(s, r->generator, theta[k]);
    } else if (const auto* f = std::get_if<FrozenRotationGate>(&gate)) {
        s = apply_pauli_sum_exponential(s, f->generator, f->angle);
    }
}

}  // namespace detail

/// Evolves the initial state through the gate list. Output has unit norm.
inline StateVector evolve(const ParametricCircuit& c, const ParameterAssignment& theta) {
    detail::check_assignment(c, theta);
    StateVector s = StateVector::computational_basis(c.qubits(), c.init_bits());
    for (const GateSpec& gate : c.gates()) detail::apply_gate(s, gate, c, theta);
    return s;
}

/// The derivative state d/d theta_k C(theta): the circuit is evolved with the
/// Hermitian generator G_k applied (as an operator sum) immediately after its
/// rotation gate, then scaled by -i/2.
inline StateVector derivative_state(const ParametricCircuit& c, const ParameterAssignment& theta, int k) {
    detail::check_assignment(c, theta);
    if (k < 0 || k >= c.parameter_count())
        throw std::invalid_argument("derivative_state: parameter index out of range");
    const int insert_after = c.gate_index_of_parameter(k);
    StateVector s = StateVector::computational_basis(c.qubits(), c.init_bits());
    const auto& gates = c.gates();
    for (int g = 0; g < static_cast<int>(gates.size()); ++g) {
        detail::apply_gate(s, gates[g], c, theta);
        if (g == insert_after) s = apply_generator(s, c.generator_of_parameter(k));
    }
    s *= Complex(0, -0.5);
    return s;
}

}  // namespace dea
