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

#include "dea/sobol.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using dea::SobolSequence;

namespace {

/// Radical-inverse oracle for the first dimension.
double van_der_corput(std::uint64_t n) {
    double x = 0, w = 0.5;
    while (n) {
        if (n & 1) x += w;
        n >>= 1;
        w /= 2;
    }
    return x;
}

}  // namespace

TEST(Sobol, FirstDimensionIsVanDerCorput) {
    SobolSequence seq(1);
    for (std::uint64_t n = 0; n < 64; ++n)
        EXPECT_DOUBLE_EQ(seq.point(n)[0], van_der_corput(n)) << "n " << n;
    // The four-point prefix in particular.
    EXPECT_DOUBLE_EQ(seq.point(0)[0], 0.0);
    EXPECT_DOUBLE_EQ(seq.point(1)[0], 0.5);
    EXPECT_DOUBLE_EQ(seq.point(2)[0], 0.25);
    EXPECT_DOUBLE_EQ(seq.point(3)[0], 0.75);
}

TEST(Sobol, MatchesPublishedTableValues) {
    // First sixteen points of the first eight dimensions of the standard
    // direction-number table, in direct binary order.
    const double expected[16][8] = {
        {0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000},
        {0.5000, 0.5000, 0.5000, 0.5000, 0.5000, 0.5000, 0.5000, 0.5000},
        {0.2500, 0.7500, 0.7500, 0.7500, 0.2500, 0.2500, 0.7500, 0.2500},
        {0.7500, 0.2500, 0.2500, 0.2500, 0.7500, 0.7500, 0.2500, 0.7500},
        {0.1250, 0.6250, 0.3750, 0.1250, 0.1250, 0.3750, 0.6250, 0.6250},
        {0.6250, 0.1250, 0.8750, 0.6250, 0.6250, 0.8750, 0.1250, 0.1250},
        {0.3750, 0.3750, 0.6250, 0.8750, 0.3750, 0.1250, 0.3750, 0.8750},
        {0.8750, 0.8750, 0.1250, 0.3750, 0.8750, 0.6250, 0.8750, 0.3750},
        {0.0625, 0.9375, 0.5625, 0.3125, 0.6875, 0.1875, 0.8125, 0.3125},
        {0.5625, 0.4375, 0.0625, 0.8125, 0.1875, 0.6875, 0.3125, 0.8125},
        {0.3125, 0.1875, 0.3125, 0.5625, 0.9375, 0.4375, 0.0625, 0.0625},
        {0.8125, 0.6875, 0.8125, 0.0625, 0.4375, 0.9375, 0.5625, 0.5625},
        {0.1875, 0.3125, 0.9375, 0.4375, 0.5625, 0.3125, 0.4375, 0.9375},
        {0.6875, 0.8125, 0.4375, 0.9375, 0.0625, 0.8125, 0.9375, 0.4375},
        {0.4375, 0.5625, 0.1875, 0.6875, 0.8125, 0.0625, 0.6875, 0.6875},
        {0.9375, 0.0625, 0.6875, 0.1875, 0.3125, 0.5625, 0.1875, 0.1875},
    };
    SobolSequence seq(8);
    for (int n = 0; n < 16; ++n) {
        std::vector<double> p = seq.point(n);
        for (int d = 0; d < 8; ++d) EXPECT_DOUBLE_EQ(p[d], expected[n][d]) << n << "," << d;
    }
}

TEST(Sobol, EveryCoordinateIsAZeroOneSequence) {
    // First 2^k points of every coordinate hit each dyadic bin of width
    // 2^-k exactly once.
    SobolSequence seq(16);
    for (int k = 1; k <= 6; ++k) {
        const std::uint64_t n = std::uint64_t(1) << k;
        std::vector<std::set<std::uint64_t>> bins(16);
        for (std::uint64_t i = 0; i < n; ++i) {
            std::vector<double> p = seq.point(i);
            for (int d = 0; d < 16; ++d)
                EXPECT_TRUE(bins[d].insert(static_cast<std::uint64_t>(p[d] * n)).second)
                    << "k " << k << " dim " << d;
        }
    }
}

TEST(Sobol, TwoDimensionalNetProperty) {
    // 256 points fill a 16 x 16 grid of boxes exactly one point each.
    SobolSequence seq(2);
    int counts[16][16] = {};
    for (int i = 0; i < 256; ++i) {
        std::vector<double> p = seq.point(i);
        ++counts[static_cast<int>(p[0] * 16)][static_cast<int>(p[1] * 16)];
    }
    for (auto& row : counts)
        for (int c : row) EXPECT_EQ(c, 1);
}

TEST(Sobol, LowerBoxDiscrepancyThanUniformRandom) {
    // Box-count proxy: sum of squared deviations from the expected count
    // over an 8 x 8 grid, 256 points in 2-d.
    auto box_score = [](const std::vector<std::vector<double>>& pts) {
        double counts[8][8] = {};
        for (const auto& p : pts) ++counts[static_cast<int>(p[0] * 8)][static_cast<int>(p[1] * 8)];
        double score = 0, expect = 256.0 / 64.0;
        for (auto& row : counts)
            for (double c : row) score += (c - expect) * (c - expect);
        return score;
    };
    std::vector<std::vector<double>> sobol = dea::sobol_points(2, 256, 9001);
    std::mt19937_64 eng(9001);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<std::vector<double>> random;
    for (int i = 0; i < 256; ++i) random.push_back({u(eng), u(eng)});
    EXPECT_LT(box_score(sobol), box_score(random));
}

TEST(Sobol, ScramblingIsDeterministicAndEquidistributed) {
    std::vector<std::vector<double>> a = dea::sobol_points(4, 128, 5);
    std::vector<std::vector<double>> b = dea::sobol_points(4, 128, 5);
    std::vector<std::vector<double>> c = dea::sobol_points(4, 128, 6);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    // A scrambled sequence stays a (0,1)-sequence per coordinate.
    for (int k = 1; k <= 6; ++k) {
        const std::uint64_t n = std::uint64_t(1) << k;
        for (int d = 0; d < 4; ++d) {
            std::set<std::uint64_t> bins;
            for (std::uint64_t i = 0; i < n; ++i)
                EXPECT_TRUE(bins.insert(static_cast<std::uint64_t>(a[i][d] * n)).second);
        }
    }
    for (const auto& p : a)
        for (double x : p) {
            EXPECT_GE(x, 0.0);
            EXPECT_LT(x, 1.0);
        }
}

TEST(Sobol, DimensionBoundsChecked) {
    EXPECT_THROW(SobolSequence(0), std::invalid_argument);
    EXPECT_THROW(SobolSequence(33), std::invalid_argument);
    EXPECT_NO_THROW(SobolSequence(32));
}
