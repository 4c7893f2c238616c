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

#include "dea/autobuild.hpp"

#include <gtest/gtest.h>

#include <set>

#include "dea/simulator.hpp"

using dea::build_sector_circuit;
using dea::build_x_gate;
using dea::build_xy_gate;
using dea::build_z_gate;
using dea::CanonicalRep;
using dea::canonical_representatives;
using dea::Generator;
using dea::ParametricCircuit;

namespace {

std::set<std::string> term_strings(const Generator& g) {
    std::set<std::string> out;
    for (const dea::PauliString& t : g.terms()) out.insert(t.to_string());
    return out;
}

}  // namespace

TEST(CanonicalReps, ThreeQubits) {
    auto reps = canonical_representatives(3);
    ASSERT_EQ(reps.size(), 3u);
    EXPECT_EQ(reps[0].to_string(), "001");
    EXPECT_EQ(reps[1].to_string(), "011");
    EXPECT_EQ(reps[2].to_string(), "111");
    EXPECT_EQ(reps[0].weight, 1);
    EXPECT_EQ(reps[1].weight, 2);
    EXPECT_EQ(reps[2].weight, 3);
    EXPECT_EQ(reps[0].class_order, 3);
    EXPECT_EQ(reps[2].class_order, 1);
}

TEST(CanonicalReps, TwoQubits) {
    auto reps = canonical_representatives(2);
    ASSERT_EQ(reps.size(), 2u);
    EXPECT_EQ(reps[0].to_string(), "01");
    EXPECT_EQ(reps[1].to_string(), "11");
}

TEST(CanonicalReps, OnePerNonzeroClassWithBoundaryBits) {
    for (int q = 1; q <= 10; ++q) {
        auto reps = canonical_representatives(q);
        auto classes = dea::equivalence_classes(q);
        EXPECT_EQ(reps.size(), classes.size() - 1);  // zero class dropped
        const std::uint32_t all_ones = (1u << q) - 1;
        std::set<std::uint32_t> class_of_rep;
        for (const CanonicalRep& rep : reps) {
            EXPECT_NE(rep.bits, 0u);
            if (rep.bits != all_ones) {
                EXPECT_EQ(rep.bits & 1u, 1u) << rep.to_string();
                EXPECT_EQ((rep.bits >> (q - 1)) & 1u, 0u) << rep.to_string();
            }
            // Map back to its class representative to confirm uniqueness.
            std::uint32_t m = rep.bits, smallest = rep.bits;
            for (int j = 0; j < q; ++j) {
                m = dea::translate_bits(m, q);
                smallest = std::min(smallest, m);
            }
            EXPECT_TRUE(class_of_rep.insert(smallest).second);
        }
    }
}

TEST(BuildXGate, WeightOneGivesAllSingleLetterShifts) {
    auto reps = canonical_representatives(3);
    EXPECT_EQ(term_strings(build_x_gate(reps[0])),
              (std::set<std::string>{"IIX", "IXI", "XII"}));
}

TEST(BuildXGate, AllOnesIsASingleTerm) {
    auto reps = canonical_representatives(3);
    EXPECT_EQ(term_strings(build_x_gate(reps[2])), (std::set<std::string>{"XXX"}));
}

TEST(BuildXGate, DerivativeAtZeroScalesWithSqrtOrbit) {
    auto reps = canonical_representatives(3);
    ParametricCircuit c(3, 0, {dea::RotationGate{build_x_gate(reps[0]), "t"}});
    dea::StateVector d = dea::derivative_state(c, {0.0}, 0);
    // -(i/2) sqrt(order) e_{[001]}: amplitude -i/2 on each class member.
    for (std::uint32_t b : {1u, 2u, 4u})
        EXPECT_NEAR(std::abs(d[b] - dea::Complex(0, -0.5)), 0, 1e-14);
    EXPECT_NEAR(d.norm(), std::sqrt(3.0) / 2, 1e-13);
}

TEST(BuildXyGate, PaperExampleForB101) {
    CanonicalRep rep;
    rep.bits = 0b101;
    rep.qubits = 3;
    rep.weight = 2;
    rep.class_order = 3;
    // X_2 Y_0 + X_0 Y_1 + X_1 Y_2.
    EXPECT_EQ(term_strings(build_xy_gate(rep)),
              (std::set<std::string>{"XIY", "IYX", "YXI"}));
}

TEST(BuildXyGate, TermCountIsAlwaysQ) {
    for (int q = 1; q <= 8; ++q)
        for (const CanonicalRep& rep : canonical_representatives(q))
            EXPECT_EQ(build_xy_gate(rep).term_count(), q) << rep.to_string();
}

TEST(BuildXyGate, DerivativeAtZeroIsRealAlongClassDirection) {
    for (int q = 2; q <= 5; ++q) {
        for (const CanonicalRep& rep : canonical_representatives(q)) {
            ParametricCircuit c(q, 0, {dea::RotationGate{build_xy_gate(rep), "t"}});
            dea::StateVector d = dea::derivative_state(c, {0.0}, 0);
            double per_member = double(q) / (2.0 * rep.class_order);
            std::uint32_t m = rep.bits;
            for (int j = 0; j < rep.class_order; ++j) {
                EXPECT_NEAR(d[m].real(), per_member, 1e-13) << rep.to_string();
                EXPECT_NEAR(d[m].imag(), 0.0, 1e-13) << rep.to_string();
                m = dea::translate_bits(m, q);
            }
        }
    }
}

TEST(BuildGates, GeneratorsAreTranslationInvariant) {
    for (int q = 1; q <= 8; ++q) {
        auto check = [&](const Generator& g) {
            std::set<std::string> before = term_strings(g);
            std::set<std::string> after;
            for (const dea::PauliString& t : g.terms())
                after.insert(dea::translate_string(t).to_string());
            EXPECT_EQ(before, after);
        };
        check(build_z_gate(q));
        for (const CanonicalRep& rep : canonical_representatives(q)) {
            check(build_x_gate(rep));
            check(build_xy_gate(rep));
        }
    }
}

TEST(BuildZGate, SumOfSingleZs) {
    EXPECT_EQ(term_strings(build_z_gate(3)), (std::set<std::string>{"IIZ", "IZI", "ZII"}));
    EXPECT_EQ(build_z_gate(1).term_count(), 1);
    ParametricCircuit c(3, 0, {dea::RotationGate{build_z_gate(3), "t"}});
    dea::StateVector d = dea::derivative_state(c, {0.0}, 0);
    EXPECT_NEAR(std::abs(d[0] - dea::Complex(0, -1.5)), 0, 1e-14);  // -(i/2) Q |0>
}

TEST(BuildSectorCircuit, ThreeQubitGateSequence) {
    ParametricCircuit c = build_sector_circuit(3);
    EXPECT_EQ(c.parameter_count(), 7);
    ASSERT_EQ(c.gates().size(), 7u);
    auto gen_at = [&](int i) { return std::get<dea::RotationGate>(c.gates()[i]).generator; };
    EXPECT_EQ(term_strings(gen_at(0)), term_strings(build_z_gate(3)));
    auto reps = canonical_representatives(3);
    EXPECT_EQ(term_strings(gen_at(1)), term_strings(build_x_gate(reps[0])));
    EXPECT_EQ(term_strings(gen_at(2)), term_strings(build_xy_gate(reps[0])));
    EXPECT_EQ(term_strings(gen_at(3)), term_strings(build_x_gate(reps[1])));
    EXPECT_EQ(term_strings(gen_at(4)), term_strings(build_xy_gate(reps[1])));
    EXPECT_EQ(term_strings(gen_at(5)), term_strings(build_x_gate(reps[2])));
    EXPECT_EQ(term_strings(gen_at(6)), term_strings(build_xy_gate(reps[2])));
}

TEST(BuildSectorCircuit, ParameterCountsMatchSectorDimension) {
    EXPECT_EQ(build_sector_circuit(1).parameter_count(), 3);
    EXPECT_EQ(build_sector_circuit(4).parameter_count(), 11);
    for (int q = 1; q <= 6; ++q)
        EXPECT_EQ(build_sector_circuit(q).parameter_count(), dea::sector_dimension(q, 1));
}

TEST(BuildSectorCircuit, RoundTripsThroughCircuitFormat) {
    ParametricCircuit c = build_sector_circuit(3);
    EXPECT_EQ(dea::parse_circuit(dea::serialize_circuit(c)), c);
}

TEST(VerifySectorCircuit, PassesForSmallQubitCounts) {
    // The parametrization has genuine rank-deficient sheets (no smooth
    // covering of a sphere by a torus avoids them), so verification runs at
    // fixed generic seeds rather than at arbitrary draws.
    for (int q = 2; q <= 4; ++q) {
        ParametricCircuit c = build_sector_circuit(q);
        dea::SectorVerification v = dea::verify_sector_circuit(c, q, 3, 1);
        EXPECT_TRUE(v.pass) << "Q " << q << "\n" << v.to_json().dump(2);
        for (const auto& trial : v.trials) EXPECT_LT(trial.translation_defect, 1e-10);
    }
}

TEST(VerifySectorCircuit, DuplicatedGateBecomesRedundant) {
    ParametricCircuit base = build_sector_circuit(2);
    std::vector<dea::GateSpec> gates = base.gates();
    gates.push_back(dea::RotationGate{build_z_gate(2), "extra"});
    ParametricCircuit padded(2, 0, std::move(gates));
    dea::ClassificationReport r =
        classify_parameters(padded, dea::random_theta(padded.parameter_count(), 3));
    EXPECT_FALSE(r.parameters.back().independent);
    EXPECT_EQ(r.independent_indices().size(), 5u);
}

TEST(VerifySectorCircuit, ThetaZeroTangentSpaceHasFullRank) {
    for (int q = 1; q <= 4; ++q) {
        ParametricCircuit c = build_sector_circuit(q);
        dea::ParameterAssignment zeros(c.parameter_count(), 0.0);
        dea::SMatrix s = dea::full_s_matrix(c, zeros);
        auto [lmin, lsecond] = dea::smallest_two_eigenvalues(s);
        (void)lsecond;
        EXPECT_GT(lmin, 1e-6) << "Q " << q;
        EXPECT_EQ(dea::rref_classification(s).size(), static_cast<std::size_t>(c.parameter_count()));
    }
}

TEST(BuildSectorCircuit, BoundsChecked) {
    EXPECT_THROW(build_sector_circuit(0), std::invalid_argument);
    EXPECT_THROW(build_sector_circuit(11), std::invalid_argument);
    EXPECT_THROW(canonical_representatives(17), std::invalid_argument);
}
