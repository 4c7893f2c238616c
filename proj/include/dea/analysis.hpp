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

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dea/circuit.hpp"
#include "dea/rng.hpp"
#include "dea/simulator.hpp"

namespace dea {

/// The k x k Gram matrix of derivative states, S[m][n] = Re <d_m C, d_n C>.
/// Invertibility of S_k is equivalent to linear independence of the first k
/// derivative columns of the real Jacobian, which is never materialized.
using SMatrix = Eigen::MatrixXd;

/// An eigenvalue is treated as zero when it does not exceed
/// max(abs_tol, rel_tol * lambda_max).
struct TolerancePolicy {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    double threshold(double lambda_max) const { return std::max(abs_tol, rel_tol * lambda_max); }
};

/// All derivative states of the circuit at theta, in roster order.
inline std::vector<StateVector> derivative_states(const ParametricCircuit& c,
                                                  const ParameterAssignment& theta) {
    std::vector<StateVector> out;
    out.reserve(c.parameter_count());
    for (int k = 0; k < c.parameter_count(); ++k) out.push_back(derivative_state(c, theta, k));
    return out;
}

inline SMatrix s_matrix_from_states(const std::vector<StateVector>& states,
                                    std::span<const int> subset) {
    const int k = static_cast<int>(subset.size());
    SMatrix s(k, k);
    for (int m = 0; m < k; ++m)
        for (int n = m; n < k; ++n) {
            double v = inner(states[subset[m]], states[subset[n]]).real();
            s(m, n) = v;
            s(n, m) = v;
        }
    return s;
}

/// S matrix over the given ordered subset of roster parameter indices.
inline SMatrix s_matrix(const ParametricCircuit& c, const ParameterAssignment& theta,
                        std::span<const int> subset) {
    std::vector<int> seen;
    for (int idx : subset) {
        if (idx < 0 || idx >= c.parameter_count())
            throw std::invalid_argument("s_matrix: parameter index out of range");
        for (int other : seen)
            if (other == idx) throw std::invalid_argument("s_matrix: duplicate parameter index");
        seen.push_back(idx);
    }
    std::vector<StateVector> cache;
    cache.reserve(subset.size());
    for (int idx : subset) cache.push_back(derivative_state(c, theta, idx));
    const int k = static_cast<int>(subset.size());
    SMatrix s(k, k);
    for (int m = 0; m < k; ++m)
        for (int n = m; n < k; ++n) {
            double v = inner(cache[m], cache[n]).real();
            s(m, n) = v;
            s(n, m) = v;
        }
    return s;
}

inline SMatrix full_s_matrix(const ParametricCircuit& c, const ParameterAssignment& theta) {
    std::vector<int> all(c.parameter_count());
    for (int i = 0; i < c.parameter_count(); ++i) all[i] = i;
    std::vector<StateVector> states = derivative_states(c, theta);
    return s_matrix_from_states(states, all);
}

/// Ascending (lambda_min, lambda_second) of a symmetric matrix; the second
/// value is NaN for 1 x 1 input.
inline std::pair<double, double> smallest_two_eigenvalues(const SMatrix& s) {
    if (s.rows() == 0) throw std::invalid_argument("smallest_two_eigenvalues: empty matrix");
    Eigen::SelfAdjointEigenSolver<SMatrix> es(s, Eigen::EigenvaluesOnly);
    double second = s.rows() > 1 ? es.eigenvalues()(1) : std::numeric_limits<double>::quiet_NaN();
    return {es.eigenvalues()(0), second};
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

struct ParameterVerdict {
    std::string name;
    bool independent = false;
    /// Size of the S matrix that decided this parameter (0 when skipped by
    /// the dimension cap).
    int matrix_size = 0;
    double lambda_min = std::numeric_limits<double>::quiet_NaN();
    double lambda_second = std::numeric_limits<double>::quiet_NaN();
    /// Bootstrap standard deviations; zero in exact mode.
    double lambda_min_std = 0;
    double lambda_second_std = 0;
};

struct ClassificationReport {
    std::vector<ParameterVerdict> parameters;
    std::optional<int> cap;
    TolerancePolicy tolerance;
    std::vector<double> theta;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> shots;  // empty = exact simulation

    std::vector<int> independent_indices() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < parameters.size(); ++i)
            if (parameters[i].independent) out.push_back(static_cast<int>(i));
        return out;
    }

    std::vector<bool> verdicts() const {
        std::vector<bool> out;
        for (const auto& p : parameters) out.push_back(p.independent);
        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json params = nlohmann::json::array();
        auto num_or_null = [](double v) {
            return std::isnan(v) ? nlohmann::json() : nlohmann::json(v);
        };
        for (const auto& p : parameters) {
            nlohmann::json j{{"name", p.name},
                             {"verdict", p.independent ? "independent" : "redundant"},
                             {"lambda_min", num_or_null(p.lambda_min)},
                             {"lambda_second", num_or_null(p.lambda_second)}};
            if (shots.has_value()) {
                j["lambda_min_std"] = num_or_null(p.lambda_min_std);
                j["lambda_second_std"] = num_or_null(p.lambda_second_std);
            }
            params.push_back(j);
        }
        nlohmann::json out{{"parameters", params},
                           {"cap", cap.has_value() ? nlohmann::json(*cap) : nlohmann::json()},
                           {"tolerance", {{"abs", tolerance.abs_tol}, {"rel", tolerance.rel_tol}}},
                           {"theta", theta},
                           {"seed", seed.has_value() ? nlohmann::json(*seed) : nlohmann::json()}};
        if (shots.has_value()) out["shots"] = *shots;
        return out;
    }

    /// One row per classification step: k, eigenvalues, bootstrap spreads.
    /// The lambda_second columns are empty for k = 1; shots is 0 in exact
    /// mode.
    std::string to_csv() const {
        std::string out = "k,lambda_min,lambda_min_std,lambda_second,lambda_second_std,shots,seed\n";
        char buf[512];
        for (const auto& p : parameters) {
            if (p.matrix_size == 0) continue;  // skipped by cap
            std::string second, second_std;
            if (!std::isnan(p.lambda_second)) {
                std::snprintf(buf, sizeof buf, "%.17g", p.lambda_second);
                second = buf;
                std::snprintf(buf, sizeof buf, "%.17g", p.lambda_second_std);
                second_std = buf;
            }
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%s,%s,%llu,%llu\n", p.matrix_size,
                          p.lambda_min, p.lambda_min_std, second.c_str(), second_std.c_str(),
                          static_cast<unsigned long long>(shots.value_or(0)),
                          static_cast<unsigned long long>(seed.value_or(0)));
            out += buf;
        }
        return out;
    }
};

/// Inductive classification: parameters are taken in roster order; parameter
/// k is independent when the S matrix over (current independent set + k) has
/// smallest eigenvalue above tolerance. Once the independent count reaches
/// `cap` (the dimension of the relevant state space), every remaining
/// parameter is redundant without further checks.
inline ClassificationReport classify_parameters(const ParametricCircuit& c,
                                                const ParameterAssignment& theta,
                                                const TolerancePolicy& tol = {},
                                                std::optional<int> cap = std::nullopt) {
    detail::check_assignment(c, theta);
    const int n = c.parameter_count();
    std::vector<StateVector> states = derivative_states(c, theta);
    ClassificationReport report;
    report.cap = cap;
    report.tolerance = tol;
    report.theta = theta;

    std::vector<int> independent;
    for (int k = 0; k < n; ++k) {
        ParameterVerdict v;
        v.name = c.parameters()[k];
        if (cap.has_value() && static_cast<int>(independent.size()) >= *cap) {
            v.independent = false;  // cap reached: necessarily redundant
            report.parameters.push_back(v);
            continue;
        }
        std::vector<int> subset = independent;
        subset.push_back(k);
        SMatrix s = s_matrix_from_states(states, subset);
        Eigen::SelfAdjointEigenSolver<SMatrix> es(s, Eigen::EigenvaluesOnly);
        const auto& ev = es.eigenvalues();
        v.matrix_size = static_cast<int>(subset.size());
        v.lambda_min = ev(0);
        v.lambda_second = subset.size() > 1 ? ev(1) : std::numeric_limits<double>::quiet_NaN();
        v.independent = ev(0) > tol.threshold(ev(ev.size() - 1));
        if (v.independent) independent.push_back(k);
        report.parameters.push_back(v);
    }
    return report;
}

/// Pivot columns of the reduced row echelon form of S (0-based). Agrees with
/// the inductive classifier at the same theta.
inline std::vector<int> rref_classification(SMatrix s, const TolerancePolicy& tol = {}) {
    const int n = static_cast<int>(s.rows());
    if (n == 0) return {};
    const double pivot_tol = tol.threshold(s.cwiseAbs().maxCoeff());
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int best = row;
        for (int r = row + 1; r < n; ++r)
            if (std::abs(s(r, col)) > std::abs(s(best, col))) best = r;
        if (std::abs(s(best, col)) <= pivot_tol) continue;
        s.row(best).swap(s.row(row));
        s.row(row) /= s(row, col);
        for (int r = 0; r < n; ++r)
            if (r != row && s(r, col) != 0.0) s.row(r) -= s(r, col) * s.row(row);
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

/// Checks the SMatrix contract: symmetric and positive semidefinite.
inline void validate_s_matrix(const SMatrix& s, double sym_tol = 1e-12, double psd_tol = -1e-10) {
    if ((s - s.transpose()).cwiseAbs().maxCoeff() > sym_tol)
        throw NumericError("S matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<SMatrix> es(s, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < psd_tol) throw NumericError("S matrix is not positive semidefinite");
}

// ---------------------------------------------------------------------------
// Symmetry removal
// ---------------------------------------------------------------------------

struct RemoveSymmetryOptions {
    /// Values of the non-symmetry parameters used for classification; drawn
    /// from `seed` when empty.
    std::vector<double> theta;
    std::uint64_t seed = 0;
    /// Freeze redundant parameters at 0 (removing their gates) instead of at
    /// their classification values.
    bool freeze_to_zero = false;
    TolerancePolicy tolerance;
};

struct RemoveSymmetryResult {
    ParametricCircuit reduced;
    ClassificationReport report;
};

namespace detail {

inline bool rotation_is_identity(const Generator& g, double angle) {
    if (g.term_count() == 1) {
        double m = std::fmod(std::abs(angle), 4 * std::numbers::pi);
        return m < 1e-12 || 4 * std::numbers::pi - m < 1e-12;
    }
    return std::abs(angle) < 1e-12;
}

}  // namespace detail

/// Removes the unwanted symmetry generated by the declared phi parameters:
/// classifies with phi first in the roster (the roster already guarantees
/// this order), freezes every redundant theta parameter, and freezes phi at
/// phi0. Frozen rotations whose angle is an exact identity are dropped.
inline RemoveSymmetryResult remove_symmetry(const ParametricCircuit& c,
                                            const std::vector<double>& phi0,
                                            const RemoveSymmetryOptions& options = {}) {
    const auto& sym = c.symmetry_params();
    if (sym.empty())
        throw std::invalid_argument("remove_symmetry: circuit declares no symmetry parameters");
    if (phi0.size() != sym.size())
        throw std::invalid_argument("remove_symmetry: phi0 length must match symmetry parameters");

    ParameterAssignment theta;
    if (!options.theta.empty()) {
        if (static_cast<int>(options.theta.size()) != c.parameter_count())
            throw std::invalid_argument("remove_symmetry: theta length must match the roster");
        theta = options.theta;
    } else {
        theta = random_theta(c.parameter_count(), options.seed);
    }
    // Classification happens at the point where the extension reproduces the
    // base circuit: phi = phi0.
    for (std::size_t i = 0; i < sym.size(); ++i) theta[i] = phi0[i];

    ClassificationReport report = classify_parameters(c, theta, options.tolerance);

    std::vector<GateSpec> gates;
    for (std::size_t g = 0; g < c.gates().size(); ++g) {
        const GateSpec& gate = c.gates()[g];
        const auto* rot = std::get_if<RotationGate>(&gate);
        if (rot == nullptr) {
            gates.push_back(gate);
            continue;
        }
        int k = 0;
        while (c.parameters()[k] != rot->parameter) ++k;
        bool is_symmetry = k < static_cast<int>(sym.size());
        if (!is_symmetry && report.parameters[k].independent) {
            gates.push_back(gate);
            continue;
        }
        double frozen = is_symmetry ? phi0[k] : (options.freeze_to_zero ? 0.0 : theta[k]);
        if (!detail::rotation_is_identity(rot->generator, frozen))
            gates.push_back(FrozenRotationGate{rot->generator, frozen});
    }
    ParametricCircuit reduced(c.qubits(), c.init_bits(), std::move(gates));
    return {std::move(reduced), std::move(report)};
}

}  // namespace dea
