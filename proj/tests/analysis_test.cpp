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

#include "dea/analysis.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "dea/rng.hpp"
#include "oracles.hpp"
#include "test_circuits.hpp"

using dea::ClassificationReport;
using dea::classify_parameters;
using dea::ParametricCircuit;
using dea::SMatrix;

TEST(SMatrixOp, MinimalBlochIsQuarterIdentity) {
    ParametricCircuit c = testcircuits::minimal_bloch();
    std::vector<int> subset = {0, 1};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::vector<double> theta = dea::random_theta(2, seed);
        SMatrix s = dea::s_matrix(c, theta, subset);
        EXPECT_NEAR(s(0, 0), 0.25, 1e-12);
        EXPECT_NEAR(s(1, 1), 0.25, 1e-12);
        EXPECT_NEAR(s(0, 1), 0.0, 1e-12);
        EXPECT_NEAR(s(1, 0), 0.0, 1e-12);
        dea::validate_s_matrix(s);
    }
}

TEST(SMatrixOp, ReducibleBlochIsQuarterOnes) {
    ParametricCircuit c = testcircuits::reducible_bloch();
    std::vector<int> subset = {0, 1};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::vector<double> theta = dea::random_theta(2, seed + 31);
        SMatrix s = dea::s_matrix(c, theta, subset);
        for (int m = 0; m < 2; ++m)
            for (int n = 0; n < 2; ++n) EXPECT_NEAR(s(m, n), 0.25, 1e-12);
        dea::validate_s_matrix(s);
    }
}

TEST(SMatrixOp, SingletonSubsetOfPauliRotationIsQuarter) {
    ParametricCircuit c = testcircuits::four_parameter_bloch();
    std::vector<int> subset = {2};
    SMatrix s = dea::s_matrix(c, dea::random_theta(4, 5), subset);
    ASSERT_EQ(s.rows(), 1);
    EXPECT_NEAR(s(0, 0), 0.25, 1e-12);
}

TEST(SMatrixOp, RejectsBadSubsets) {
    ParametricCircuit c = testcircuits::minimal_bloch();
    std::vector<double> theta = {1.0, 2.0};
    std::vector<int> out_of_range = {0, 2};
    std::vector<int> duplicate = {1, 1};
    EXPECT_THROW(dea::s_matrix(c, theta, out_of_range), std::invalid_argument);
    EXPECT_THROW(dea::s_matrix(c, theta, duplicate), std::invalid_argument);
}

TEST(SmallestTwoEigenvalues, KnownMatrices) {
    SMatrix one(1, 1);
    one << 0.25;
    auto [l1, l2] = dea::smallest_two_eigenvalues(one);
    EXPECT_DOUBLE_EQ(l1, 0.25);
    EXPECT_TRUE(std::isnan(l2));

    SMatrix ones(2, 2);
    ones << 0.25, 0.25, 0.25, 0.25;
    auto [m1, m2] = dea::smallest_two_eigenvalues(ones);
    EXPECT_NEAR(m1, 0.0, 1e-15);
    EXPECT_NEAR(m2, 0.5, 1e-15);

    SMatrix diag = SMatrix::Zero(2, 2);
    diag(0, 0) = diag(1, 1) = 0.25;
    auto [d1, d2] = dea::smallest_two_eigenvalues(diag);
    EXPECT_NEAR(d1, 0.25, 1e-15);
    EXPECT_NEAR(d2, 0.25, 1e-15);
}

TEST(ClassifyParameters, MinimalBlochBothIndependent) {
    ClassificationReport r = classify_parameters(testcircuits::minimal_bloch(), dea::random_theta(2, 2));
    EXPECT_EQ(r.verdicts(), (std::vector<bool>{true, true}));
}

TEST(ClassifyParameters, ReducibleBlochSecondRedundant) {
    ClassificationReport r =
        classify_parameters(testcircuits::reducible_bloch(), dea::random_theta(2, 3));
    EXPECT_EQ(r.verdicts(), (std::vector<bool>{true, false}));
}

TEST(ClassifyParameters, FourParameterCircuitLastRedundant) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        ClassificationReport r =
            classify_parameters(testcircuits::four_parameter_bloch(), dea::random_theta(4, seed));
        EXPECT_EQ(r.verdicts(), (std::vector<bool>{true, true, true, false})) << "seed " << seed;
    }
}

TEST(ClassifyParameters, IndependentCountNeverExceedsSphereDimension) {
    // Eight rotations on one qubit: at most 2^(Q+1) - 1 = 3 independent.
    std::vector<dea::GateSpec> gates;
    dea::Pauli cycle[] = {dea::Pauli::X, dea::Pauli::Z, dea::Pauli::Y};
    for (int i = 0; i < 8; ++i)
        gates.push_back(testcircuits::rot(cycle[i % 3], 0, "t" + std::to_string(i)));
    ParametricCircuit c(1, 0, std::move(gates));
    ClassificationReport r = classify_parameters(c, dea::random_theta(8, 77));
    EXPECT_LE(r.independent_indices().size(), 3u);
}

TEST(ClassifyParameters, CapMarksRemainingRedundant) {
    ClassificationReport r = classify_parameters(testcircuits::four_parameter_bloch(),
                                                 dea::random_theta(4, 11), {}, 2);
    EXPECT_EQ(r.independent_indices().size(), 2u);
    EXPECT_FALSE(r.parameters[2].independent);
    EXPECT_FALSE(r.parameters[3].independent);
    EXPECT_EQ(r.parameters[2].matrix_size, 0);  // never measured
    EXPECT_EQ(r.parameters[3].matrix_size, 0);
}

TEST(ClassifyParameters, StableAcrossGenericPoints) {
    for (const ParametricCircuit& c :
         {testcircuits::minimal_bloch(), testcircuits::reducible_bloch(),
          testcircuits::four_parameter_bloch(), testcircuits::extended_bloch()}) {
        ClassificationReport a = classify_parameters(c, dea::random_theta(c.parameter_count(), 101));
        ClassificationReport b = classify_parameters(c, dea::random_theta(c.parameter_count(), 202));
        EXPECT_EQ(a.verdicts(), b.verdicts());
    }
}

TEST(RrefClassification, KnownMatrices) {
    SMatrix diag = SMatrix::Zero(2, 2);
    diag(0, 0) = diag(1, 1) = 0.25;
    EXPECT_EQ(dea::rref_classification(diag), (std::vector<int>{0, 1}));

    SMatrix ones(2, 2);
    ones << 0.25, 0.25, 0.25, 0.25;
    EXPECT_EQ(dea::rref_classification(ones), (std::vector<int>{0}));
}

TEST(RrefClassification, AgreesWithInductiveClassifier) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        oracle::RandomCircuitOptions opt;
        opt.qubits = 1 + static_cast<int>(seed % 2);
        opt.depth = 7;
        opt.rotations_only = true;
        ParametricCircuit c = oracle::random_circuit(seed + 500, opt);
        std::vector<double> theta = dea::random_theta(c.parameter_count(), seed + 13);
        std::vector<int> pivots = dea::rref_classification(dea::full_s_matrix(c, theta));
        std::vector<int> inductive = classify_parameters(c, theta).independent_indices();
        EXPECT_EQ(pivots, inductive) << "seed " << seed;
    }
    // The four-parameter circuit pins down {0, 1, 2} explicitly.
    ParametricCircuit c = testcircuits::four_parameter_bloch();
    EXPECT_EQ(dea::rref_classification(dea::full_s_matrix(c, dea::random_theta(4, 1))),
              (std::vector<int>{0, 1, 2}));
}

TEST(RemoveSymmetry, ReducesExtendedBlochToMinimalStructure) {
    ParametricCircuit c = testcircuits::extended_bloch();
    dea::RemoveSymmetryOptions opt;
    opt.seed = 4;
    opt.freeze_to_zero = true;
    dea::RemoveSymmetryResult r = dea::remove_symmetry(c, {0.0}, opt);
    EXPECT_EQ(r.report.verdicts(), (std::vector<bool>{true, true, true, false}));
    EXPECT_EQ(r.reduced, testcircuits::minimal_bloch());
}

TEST(RemoveSymmetry, KeepModeFreezesAtClassificationValue) {
    ParametricCircuit c = testcircuits::extended_bloch();
    dea::RemoveSymmetryOptions opt;
    opt.theta = {0.0, 1.1, 2.2, 0.9};
    dea::RemoveSymmetryResult r = dea::remove_symmetry(c, {0.0}, opt);
    // phi gate dropped (identity at 0), t3 kept as a frozen R_Y(0.9).
    ASSERT_EQ(r.reduced.gates().size(), 3u);
    const auto* frozen = std::get_if<dea::FrozenRotationGate>(&r.reduced.gates()[2]);
    ASSERT_NE(frozen, nullptr);
    EXPECT_DOUBLE_EQ(frozen->angle, 0.9);
    // The reduced circuit reproduces the full circuit at the frozen point.
    dea::StateVector a = dea::evolve(c, opt.theta);
    dea::StateVector b = dea::evolve(r.reduced, {1.1, 2.2});
    EXPECT_LT(dea::chordal_distance(a, b), 1e-13);
}

TEST(RemoveSymmetry, NoRedundancyLeavesCircuitUnchangedUpToPhi) {
    // R_Z(t2) R_X(t1) R_Z(phi) |0>: nothing redundant, phi freezes away.
    ParametricCircuit c(1, 0,
                        {testcircuits::rot(dea::Pauli::Z, 0, "phi"),
                         testcircuits::rot(dea::Pauli::X, 0, "t1"),
                         testcircuits::rot(dea::Pauli::Z, 0, "t2")},
                        {"phi"});
    dea::RemoveSymmetryOptions opt;
    opt.seed = 8;
    dea::RemoveSymmetryResult r = dea::remove_symmetry(c, {0.0}, opt);
    EXPECT_EQ(r.reduced, testcircuits::minimal_bloch());
}

TEST(RemoveSymmetry, VerdictPatternStableOverTenDraws) {
    ParametricCircuit c = testcircuits::extended_bloch();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        dea::RemoveSymmetryOptions opt;
        opt.seed = seed;
        dea::RemoveSymmetryResult r = dea::remove_symmetry(c, {0.0}, opt);
        EXPECT_EQ(r.report.verdicts(), (std::vector<bool>{true, true, true, false}))
            << "seed " << seed;
    }
}

TEST(RemoveSymmetry, ValidatesInput) {
    EXPECT_THROW(dea::remove_symmetry(testcircuits::minimal_bloch(), {0.0}), std::invalid_argument);
    EXPECT_THROW(dea::remove_symmetry(testcircuits::extended_bloch(), {0.0, 1.0}),
                 std::invalid_argument);
}

TEST(ClassificationReportType, JsonShapeAndDeterminism) {
    ClassificationReport r =
        classify_parameters(testcircuits::reducible_bloch(), dea::random_theta(2, 6));
    r.seed = 6;
    nlohmann::json j = r.to_json();
    ASSERT_TRUE(j.contains("parameters"));
    EXPECT_EQ(j["parameters"].size(), 2u);
    EXPECT_EQ(j["parameters"][0]["verdict"], "independent");
    EXPECT_EQ(j["parameters"][1]["verdict"], "redundant");
    EXPECT_TRUE(j.contains("tolerance"));
    EXPECT_TRUE(j.contains("theta"));
    ClassificationReport again =
        classify_parameters(testcircuits::reducible_bloch(), dea::random_theta(2, 6));
    again.seed = 6;
    EXPECT_EQ(j.dump(), again.to_json().dump());
}

TEST(ClassificationReportType, CsvHasOneRowPerStep) {
    ClassificationReport r =
        classify_parameters(testcircuits::four_parameter_bloch(), dea::random_theta(4, 21));
    std::string csv = r.to_csv();
    int rows = static_cast<int>(std::count(csv.begin(), csv.end(), '\n'));
    EXPECT_EQ(rows, 1 + 4);  // header + one row per checked parameter
    EXPECT_NE(csv.find("k,lambda_min,lambda_min_std,lambda_second,lambda_second_std,shots,seed"),
              std::string::npos);
}
