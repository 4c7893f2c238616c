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

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "dea/analysis.hpp"
#include "dea/circuit.hpp"
#include "dea/rng.hpp"
#include "dea/simulator.hpp"

namespace dea {

/// A shot-sampled estimate of Re<init|gamma_m^* gamma_n|init>.
struct OverlapEstimate {
    double value = 0;      // 2*p0_hat - 1, in [-1, 1]
    std::uint64_t shots = 0;
    double p0_hat = 0;     // observed ancilla-zero frequency
    std::uint64_t seed = 0;
};

/// Builds the one-ancilla interference circuit for entry (m, n): a Hadamard
/// on the ancilla, one pass through the gate list with an ancilla-controlled
/// G_n inserted after R_{G_n} and an X-bracketed ancilla-controlled G_m
/// inserted after R_{G_m}, then X and H on the ancilla. The exact
/// ancilla-zero probability equals (1 + Re<init|gamma_m^* gamma_n|init>)/2.
///
/// Only single-string generators are supported; the controlled insertions
/// then need nothing beyond controlled Pauli gates (CNOT/CZ for X/Z words).
inline ParametricCircuit hadamard_test_circuit(const ParametricCircuit& c, int m, int n) {
    const int nparams = c.parameter_count();
    if (m < 0 || m >= nparams || n < 0 || n >= nparams)
        throw std::invalid_argument("hadamard_test_circuit: parameter index out of range");
    for (int k : {m, n})
        if (c.generator_of_parameter(k).term_count() != 1)
            throw std::invalid_argument(
                "hadamard_test_circuit: multi-term generators are not supported");

    const int q = c.qubits();
    const int ancilla = q;
    auto extended_word = [&](const PauliString& w) {
        return PauliString(q + 1, w.x_mask(), w.z_mask());  // I at the ancilla
    };
    const int gate_m = c.gate_index_of_parameter(m);
    const int gate_n = c.gate_index_of_parameter(n);

    auto extended_generator = [&](const Generator& gen) {
        std::vector<PauliString> terms;
        for (const PauliString& t : gen.terms()) terms.push_back(extended_word(t));
        return Generator(std::move(terms));
    };

    std::vector<GateSpec> gates;
    gates.push_back(PrimitiveGate{PrimitiveGate::Kind::H, ancilla});
    for (int g = 0; g < static_cast<int>(c.gates().size()); ++g) {
        const GateSpec& gate = c.gates()[g];
        if (const auto* r = std::get_if<RotationGate>(&gate)) {
            gates.push_back(RotationGate{extended_generator(r->generator), r->parameter});
        } else if (const auto* f = std::get_if<FrozenRotationGate>(&gate)) {
            gates.push_back(FrozenRotationGate{extended_generator(f->generator), f->angle});
        } else if (const auto* cp = std::get_if<ControlledPauliGate>(&gate)) {
            gates.push_back(ControlledPauliGate{cp->control, extended_word(cp->word)});
        } else {
            gates.push_back(gate);
        }
        if (g == gate_n)
            gates.push_back(ControlledPauliGate{
                ancilla, extended_word(c.generator_of_parameter(n).terms()[0])});
        if (g == gate_m) {
            gates.push_back(PrimitiveGate{PrimitiveGate::Kind::X, ancilla});
            gates.push_back(ControlledPauliGate{
                ancilla, extended_word(c.generator_of_parameter(m).terms()[0])});
            gates.push_back(PrimitiveGate{PrimitiveGate::Kind::X, ancilla});
        }
    }
    gates.push_back(PrimitiveGate{PrimitiveGate::Kind::X, ancilla});
    gates.push_back(PrimitiveGate{PrimitiveGate::Kind::H, ancilla});
    return ParametricCircuit(q + 1, c.init_bits(), std::move(gates), c.symmetry_params());
}

/// Exact probability of measuring the highest qubit (the ancilla) in |0>.
inline double ancilla_zero_probability(const ParametricCircuit& htest,
                                       const ParameterAssignment& theta) {
    StateVector s = evolve(htest, theta);
    const std::size_t abit = std::size_t(1) << (htest.qubits() - 1);
    double p0 = 0;
    for (std::size_t i = 0; i < s.dimension(); ++i)
        if (!(i & abit)) p0 += std::norm(s[i]);
    return p0;
}

/// Samples the (m, n) overlap with `shots` measurement shots: the exact
/// ancilla-zero probability feeds one binomial draw, which is statistically
/// identical to per-shot sampling.
inline OverlapEstimate estimate_overlap(const ParametricCircuit& c, const ParameterAssignment& theta,
                                        int m, int n, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw std::invalid_argument("estimate_overlap: shots must be >= 1");
    double p0 = ancilla_zero_probability(hadamard_test_circuit(c, m, n), theta);
    p0 = std::min(1.0, std::max(0.0, p0));
    std::mt19937_64 eng(derive_seed(seed, {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n)}));
    std::binomial_distribution<std::uint64_t> binom(shots, p0);
    std::uint64_t z = binom(eng);
    OverlapEstimate est;
    est.shots = shots;
    est.seed = seed;
    est.p0_hat = static_cast<double>(z) / static_cast<double>(shots);
    est.value = 2.0 * est.p0_hat - 1.0;
    return est;
}

/// Shot-estimated S matrix plus bootstrap eigenvalue spreads.
struct NoisySMatrix {
    SMatrix mean;                  // symmetric; diagonal pinned to exact 1/4
    Eigen::MatrixXd p0_hat;        // observed ancilla-zero frequencies (1 on the diagonal)
    Eigen::VectorXd eigenvalue_std;  // ascending-order spread, one per eigenvalue
    int resamples = 0;
    std::optional<std::uint64_t> shots;  // empty = exact
    std::uint64_t seed = 0;
};

namespace detail {

/// Bootstrap spread of the ascending eigenvalues: every off-diagonal entry is
/// resampled from Binomial(shots, p0_hat) per replica and the eigenvalues
/// recomputed. Replica draws derive from (seed, m, n), so the result does not
/// depend on evaluation order.
inline Eigen::VectorXd bootstrap_eigenvalue_std(const Eigen::MatrixXd& p0_hat, std::uint64_t shots,
                                                std::uint64_t seed, int resamples) {
    const int k = static_cast<int>(p0_hat.rows());
    std::vector<std::vector<double>> entry_values;  // (m,n) upper pairs x replicas
    entry_values.reserve(k * (k - 1) / 2);
    for (int m = 0; m < k; ++m)
        for (int n = m + 1; n < k; ++n) {
            std::mt19937_64 eng(derive_seed(
                seed, {0x626f6f74ULL, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n)}));
            std::binomial_distribution<std::uint64_t> binom(shots, p0_hat(m, n));
            std::vector<double> vals(resamples);
            for (int r = 0; r < resamples; ++r)
                vals[r] = (2.0 * static_cast<double>(binom(eng)) / shots - 1.0) / 4.0;
            entry_values.push_back(std::move(vals));
        }
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(k), sumsq = Eigen::VectorXd::Zero(k);
    SMatrix replica(k, k);
    for (int r = 0; r < resamples; ++r) {
        int pair = 0;
        for (int m = 0; m < k; ++m) {
            replica(m, m) = 0.25;
            for (int n = m + 1; n < k; ++n, ++pair) {
                replica(m, n) = entry_values[pair][r];
                replica(n, m) = entry_values[pair][r];
            }
        }
        Eigen::SelfAdjointEigenSolver<SMatrix> es(replica, Eigen::EigenvaluesOnly);
        sum += es.eigenvalues();
        sumsq += es.eigenvalues().cwiseProduct(es.eigenvalues());
    }
    Eigen::VectorXd var =
        (sumsq - sum.cwiseProduct(sum) / resamples) / std::max(1, resamples - 1);
    return var.cwiseMax(0.0).cwiseSqrt();
}

}  // namespace detail

/// Estimates the S matrix over the first k roster parameters. Off-diagonal
/// entries come from the ancilla protocol (one estimate each, mirrored);
/// diagonal entries are exactly 1/4 for Pauli rotations and are not
/// measured. `shots` empty means exact simulation.
inline NoisySMatrix estimate_s_matrix(const ParametricCircuit& c, const ParameterAssignment& theta,
                                      int k, std::optional<std::uint64_t> shots, std::uint64_t seed,
                                      int resamples = 1000) {
    if (k < 1 || k > c.parameter_count())
        throw std::invalid_argument("estimate_s_matrix: bad leading parameter count");
    NoisySMatrix out;
    out.resamples = resamples;
    out.shots = shots;
    out.seed = seed;
    out.mean = SMatrix::Zero(k, k);
    out.p0_hat = Eigen::MatrixXd::Ones(k, k);
    if (!shots.has_value()) {
        std::vector<int> subset(k);
        for (int i = 0; i < k; ++i) subset[i] = i;
        out.mean = s_matrix(c, theta, subset);
        out.p0_hat = ((out.mean * 4.0).array() + 1.0) / 2.0;
        out.eigenvalue_std = Eigen::VectorXd::Zero(k);
        return out;
    }
    for (int m = 0; m < k; ++m) {
        out.mean(m, m) = 0.25;
        for (int n = m + 1; n < k; ++n) {
            OverlapEstimate est = estimate_overlap(c, theta, m, n, *shots, seed);
            out.mean(m, n) = est.value / 4.0;
            out.mean(n, m) = est.value / 4.0;
            out.p0_hat(m, n) = est.p0_hat;
            out.p0_hat(n, m) = est.p0_hat;
        }
    }
    out.eigenvalue_std = detail::bootstrap_eigenvalue_std(out.p0_hat, *shots, seed, resamples);
    return out;
}

/// Inductive classification under shot noise: an S matrix counts as
/// invertible when its smallest eigenvalue exceeds both the tolerance floor
/// and z_threshold bootstrap standard deviations. With `shots` empty this
/// reduces exactly to classify_parameters.
inline ClassificationReport classify_with_noise(const ParametricCircuit& c,
                                                const ParameterAssignment& theta,
                                                std::optional<std::uint64_t> shots,
                                                std::uint64_t seed, double z_threshold = 3.0,
                                                int resamples = 1000,
                                                const TolerancePolicy& tol = {},
                                                std::optional<int> cap = std::nullopt) {
    detail::check_assignment(c, theta);
    const int n = c.parameter_count();
    for (int kk = 0; kk < n; ++kk)
        if (shots.has_value() && c.generator_of_parameter(kk).term_count() != 1)
            throw std::invalid_argument("classify_with_noise: multi-term generators not supported");

    // Every pairwise entry is measured once; inductive steps reuse them.
    NoisySMatrix full = estimate_s_matrix(c, theta, n, shots, seed, resamples);

    ClassificationReport report;
    report.cap = cap;
    report.tolerance = tol;
    report.theta = theta;
    report.seed = seed;
    report.shots = shots;

    std::vector<int> independent;
    for (int k = 0; k < n; ++k) {
        ParameterVerdict v;
        v.name = c.parameters()[k];
        if (cap.has_value() && static_cast<int>(independent.size()) >= *cap) {
            report.parameters.push_back(v);
            continue;
        }
        std::vector<int> subset = independent;
        subset.push_back(k);
        const int sz = static_cast<int>(subset.size());
        SMatrix sub(sz, sz);
        Eigen::MatrixXd sub_p0(sz, sz);
        for (int a = 0; a < sz; ++a)
            for (int b = 0; b < sz; ++b) {
                sub(a, b) = full.mean(subset[a], subset[b]);
                sub_p0(a, b) = full.p0_hat(subset[a], subset[b]);
            }
        Eigen::SelfAdjointEigenSolver<SMatrix> es(sub, Eigen::EigenvaluesOnly);
        const auto& ev = es.eigenvalues();
        v.matrix_size = sz;
        v.lambda_min = ev(0);
        v.lambda_second = sz > 1 ? ev(1) : std::numeric_limits<double>::quiet_NaN();
        double limit = tol.threshold(ev(ev.size() - 1));
        if (shots.has_value() && sz > 1) {
            Eigen::VectorXd stds = detail::bootstrap_eigenvalue_std(sub_p0, *shots, seed, resamples);
            v.lambda_min_std = stds(0);
            v.lambda_second_std = sz > 1 ? stds(1) : 0.0;
            limit = std::max(limit, z_threshold * stds(0));
        }
        v.independent = v.lambda_min > limit;
        if (v.independent) independent.push_back(k);
        report.parameters.push_back(v);
    }
    return report;
}

}  // namespace dea
