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
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "dea/analysis.hpp"
#include "dea/circuit.hpp"
#include "dea/rng.hpp"
#include "dea/sectors.hpp"

namespace dea {

/// The chosen representative of a nonzero translation class. Every class
/// other than all-ones has a member with B_0 = 1 and B_{Q-1} = 0; the
/// smallest such member is taken. The all-ones class is its own
/// representative.
struct CanonicalRep {
    std::uint32_t bits = 0;
    int qubits = 0;
    int weight = 0;       // number of 1-bits; the gate "order"
    int class_order = 0;  // orbit size of [|B>]

    std::string to_string() const {
        std::string s(qubits, '0');
        for (int q = 0; q < qubits; ++q)
            if ((bits >> q) & 1) s[qubits - 1 - q] = '1';
        return s;
    }
};

/// One representative per nonzero class, sorted by (weight, integer value).
inline std::vector<CanonicalRep> canonical_representatives(int qubits) {
    if (qubits < 1 || qubits > 16)
        throw std::invalid_argument("canonical_representatives: Q out of range");
    const std::uint32_t all_ones = (qubits == 32) ? ~0u : ((1u << qubits) - 1);
    std::vector<CanonicalRep> reps;
    for (const EquivalenceClass& cls : equivalence_classes(qubits)) {
        if (cls.representative == 0) continue;
        CanonicalRep rep;
        rep.qubits = qubits;
        rep.class_order = cls.order;
        if (cls.representative == all_ones || qubits == 1) {
            rep.bits = all_ones;
        } else {
            std::uint32_t best = 0;
            bool found = false;
            for (std::uint32_t m : cls.members) {
                bool ok = (m & 1u) && !((m >> (qubits - 1)) & 1u);
                if (ok && (!found || m < best)) {
                    best = m;
                    found = true;
                }
            }
            if (!found) throw NumericError("canonical_representatives: no canonical member");
            rep.bits = best;
        }
        rep.weight = std::popcount(rep.bits);
        reps.push_back(rep);
    }
    std::sort(reps.begin(), reps.end(), [](const CanonicalRep& a, const CanonicalRep& b) {
        return std::pair(a.weight, a.bits) < std::pair(b.weight, b.bits);
    });
    return reps;
}

namespace detail {

inline PauliString x_word(std::uint32_t support, int qubits) {
    return PauliString(qubits, support, 0);
}

/// X word with the lowest set bit replaced by Y.
inline PauliString xy_word(std::uint32_t support, int qubits) {
    std::uint32_t ybit = support & (~support + 1);
    return PauliString(qubits, support, ybit);
}

}  // namespace detail

/// R_{X^B} generator: the X words over all distinct translates of B
/// (class_order terms). Its derivative at theta = 0 on |0...0> points along
/// i * e_{[B]}.
inline Generator build_x_gate(const CanonicalRep& rep) {
    std::vector<PauliString> terms;
    std::uint32_t b = rep.bits;
    for (int j = 0; j < rep.class_order; ++j) {
        terms.push_back(detail::x_word(b, rep.qubits));
        b = translate_bits(b, rep.qubits);
    }
    return Generator(std::move(terms));
}

/// R_{(X|Y)^B} generator: B's X word with the lowest-index 1-bit replaced by
/// Y, summed over all Q translates of the modified word. The full orbit (Q
/// distinct terms, since the single Y pins the phase of the rotation) keeps
/// the generator translation invariant, which the class-order-sized sum
/// would lose whenever the class order is below Q. Its derivative at
/// theta = 0 on |0...0> points along e_{[B]} with a real coefficient.
inline Generator build_xy_gate(const CanonicalRep& rep) {
    std::set<PauliString> terms;
    PauliString word = detail::xy_word(rep.bits, rep.qubits);
    for (int j = 0; j < rep.qubits; ++j) {
        terms.insert(word);
        word = translate_string(word);
    }
    return Generator(std::vector<PauliString>(terms.begin(), terms.end()));
}

/// R_{Z,Q} generator: sum of Z_q over all qubits. Its derivative at |0...0>
/// points along i |0...0>.
inline Generator build_z_gate(int qubits) {
    std::vector<PauliString> terms;
    for (int q = 0; q < qubits; ++q) terms.push_back(PauliString::single(qubits, Pauli::Z, q));
    return Generator(std::move(terms));
}

/// Assembles the minimal maximally expressive circuit for the omega = 1
/// translation sector: R_{Z,Q} first, then (R_{X^B}, R_{(X|Y)^B}) per
/// canonical representative in ascending (weight, value) order. Parameter
/// count equals sector_dimension(Q, 1) and the output state stays in the
/// sector for every theta.
inline ParametricCircuit build_sector_circuit(int qubits) {
    if (qubits < 1 || qubits > 10)
        throw std::invalid_argument("build_sector_circuit: Q out of range");
    std::vector<GateSpec> gates;
    int counter = 0;
    auto next_name = [&counter]() { return "t" + std::to_string(counter++); };
    gates.push_back(RotationGate{build_z_gate(qubits), next_name()});
    for (const CanonicalRep& rep : canonical_representatives(qubits)) {
        gates.push_back(RotationGate{build_x_gate(rep), next_name()});
        gates.push_back(RotationGate{build_xy_gate(rep), next_name()});
    }
    return ParametricCircuit(qubits, 0, std::move(gates));
}

struct SectorVerification {
    int qubits = 0;
    std::int64_t expected_dimension = 0;
    int parameter_count = 0;
    bool pass = false;

    struct Trial {
        std::uint64_t theta_seed = 0;  // 0 = the theta = 0 check
        bool all_independent = false;
        double translation_defect = 0;
    };
    std::vector<Trial> trials;

    nlohmann::json to_json() const {
        nlohmann::json ts = nlohmann::json::array();
        for (const Trial& t : trials)
            ts.push_back({{"theta_seed", t.theta_seed},
                          {"all_independent", t.all_independent},
                          {"translation_defect", t.translation_defect}});
        return {{"qubits", qubits},
                {"expected_dimension", expected_dimension},
                {"parameter_count", parameter_count},
                {"pass", pass},
                {"trials", ts}};
    }
};

/// Checks a built sector circuit: classification at theta = 0 and at
/// `trials` random theta must find every parameter independent (with the
/// sector dimension as cap), and the output state must be translation
/// invariant to 1e-10 at each point.
inline SectorVerification verify_sector_circuit(const ParametricCircuit& c, int qubits, int trials,
                                                std::uint64_t seed = 1) {
    SectorVerification out;
    out.qubits = qubits;
    out.expected_dimension = sector_dimension(qubits, 1);
    out.parameter_count = c.parameter_count();
    out.pass = out.parameter_count == out.expected_dimension;

    auto run_trial = [&](const ParameterAssignment& theta, std::uint64_t theta_seed) {
        SectorVerification::Trial trial;
        trial.theta_seed = theta_seed;
        ClassificationReport report =
            classify_parameters(c, theta, {}, static_cast<int>(out.expected_dimension));
        trial.all_independent =
            static_cast<int>(report.independent_indices().size()) == c.parameter_count();
        StateVector state = evolve(c, theta);
        trial.translation_defect = chordal_distance(translate_statevector(state), state);
        out.pass = out.pass && trial.all_independent && trial.translation_defect < 1e-10;
        out.trials.push_back(trial);
    };

    run_trial(ParameterAssignment(c.parameter_count(), 0.0), 0);
    for (int t = 0; t < trials; ++t) {
        std::uint64_t theta_seed = derive_seed(seed, {static_cast<std::uint64_t>(t + 1)});
        run_trial(random_theta(c.parameter_count(), theta_seed), theta_seed);
    }
    return out;
}

}  // namespace dea
