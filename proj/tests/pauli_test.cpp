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

#include "dea/pauli.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using dea::Generator;
using dea::Pauli;
using dea::PauliString;

TEST(PauliString, StringRoundTrip) {
    PauliString p = PauliString::from_string("XIYZ");
    EXPECT_EQ(p.qubits(), 4);
    EXPECT_EQ(p.letter(0), Pauli::Z);
    EXPECT_EQ(p.letter(1), Pauli::Y);
    EXPECT_EQ(p.letter(2), Pauli::I);
    EXPECT_EQ(p.letter(3), Pauli::X);
    EXPECT_EQ(p.to_string(), "XIYZ");
    EXPECT_EQ(p.weight(), 3);
}

TEST(PauliString, SingleLetterPlacement) {
    // Qubit 2 of 3 is the leftmost character.
    EXPECT_EQ(PauliString::single(3, Pauli::X, 2).to_string(), "XII");
    EXPECT_EQ(PauliString::single(3, Pauli::Y, 0).to_string(), "IIY");
}

TEST(PauliString, RejectsBadInput) {
    EXPECT_THROW(PauliString::from_string(""), dea::ParseError);
    EXPECT_THROW(PauliString::from_string("XAZ"), dea::ParseError);
    EXPECT_THROW(PauliString::from_string(std::string(25, 'I')), dea::ParseError);
}

TEST(PauliCommute, KnownPairs) {
    EXPECT_TRUE(dea::pauli_commute(PauliString::from_string("XIX"), PauliString::from_string("IXX")));
    // Two anticommuting positions cancel out.
    EXPECT_TRUE(dea::pauli_commute(PauliString::from_string("XY"), PauliString::from_string("YX")));
    // One anticommuting position: XZ = -ZX.
    EXPECT_FALSE(dea::pauli_commute(PauliString::from_string("XI"), PauliString::from_string("ZI")));
}

TEST(PauliCommute, LengthMismatchThrows) {
    EXPECT_THROW(
        dea::pauli_commute(PauliString::from_string("XI"), PauliString::from_string("X")),
        std::invalid_argument);
}

TEST(PauliCommute, MatchesDenseCommutatorExhaustively) {
    // All pairs of words over Q <= 3 against the matrix commutator.
    const char alphabet[] = "IXYZ";
    for (int q = 1; q <= 3; ++q) {
        std::vector<std::string> words;
        for (int code = 0; code < (1 << (2 * q)); ++code) {
            std::string w(q, 'I');
            for (int pos = 0; pos < q; ++pos) w[pos] = alphabet[(code >> (2 * pos)) & 3];
            words.push_back(w);
        }
        for (const std::string& a : words) {
            oracle::Matrix ma = oracle::word_matrix(a);
            for (const std::string& b : words) {
                oracle::Matrix mb = oracle::word_matrix(b);
                bool commute_dense = (ma * mb - mb * ma).norm() < 1e-12;
                EXPECT_EQ(dea::pauli_commute(PauliString::from_string(a), PauliString::from_string(b)),
                          commute_dense)
                    << a << " vs " << b;
            }
        }
    }
}

TEST(TranslateString, KnownShifts) {
    // X on qubit 2 of 3 moves to qubit 0.
    EXPECT_EQ(dea::translate_string(PauliString::from_string("XII")).to_string(), "IIX");
    // X_2 Y_0 -> X_0 Y_1.
    EXPECT_EQ(dea::translate_string(PauliString::from_string("XIY")).to_string(), "IYX");
}

TEST(TranslateString, QShiftsAreIdentity) {
    std::mt19937_64 eng(11);
    std::uniform_int_distribution<int> letter(0, 3);
    const char alphabet[] = "IXYZ";
    for (int q = 1; q <= 8; ++q) {
        for (int rep = 0; rep < 20; ++rep) {
            std::string w(q, 'I');
            for (char& c : w) c = alphabet[letter(eng)];
            PauliString p = PauliString::from_string(w);
            PauliString shifted = p;
            for (int i = 0; i < q; ++i) shifted = dea::translate_string(shifted);
            EXPECT_EQ(shifted, p);
        }
    }
}

TEST(GeneratorType, RejectsInvalidTermLists) {
    EXPECT_THROW(Generator({}), std::invalid_argument);
    EXPECT_THROW(Generator({PauliString::from_string("II")}), std::invalid_argument);
    EXPECT_THROW(Generator({PauliString::from_string("XI"), PauliString::from_string("XI")}),
                 std::invalid_argument);
    EXPECT_THROW(Generator({PauliString::from_string("XI"), PauliString::from_string("X")}),
                 std::invalid_argument);
}

TEST(GeneratorType, DetectsCommutingTermSets) {
    Generator zs({PauliString::from_string("ZI"), PauliString::from_string("IZ")});
    EXPECT_TRUE(zs.pairwise_commuting());
    Generator mixed({PauliString::from_string("XI"), PauliString::from_string("ZI")});
    EXPECT_FALSE(mixed.pairwise_commuting());
}
