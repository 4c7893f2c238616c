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

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dea/rng.hpp"

namespace dea {

/// Sobol' low-discrepancy sequence in base 2, up to 32 dimensions, with
/// optional seed-keyed digital scrambling (random linear lower-triangular
/// scramble of the direction numbers plus a digital shift).
///
/// Points are produced in direct binary order: x_n = XOR of the direction
/// numbers selected by the set bits of n. Dimension 0 is the van der Corput
/// sequence, so the unscrambled first four 1-d points are 0, 1/2, 1/4, 3/4.
/// Direction numbers follow the standard published table of primitive
/// polynomials and initial values (Joe and Kuo's ordering).
class SobolSequence {
  public:
    static constexpr int kMaxDimension = 32;
    static constexpr int kBits = 52;

    explicit SobolSequence(int dim, std::optional<std::uint64_t> scramble_seed = std::nullopt)
        : dim_(dim) {
        if (dim < 1 || dim > kMaxDimension)
            throw std::invalid_argument("SobolSequence: dimension must lie in [1, 32]");
        v_.assign(dim, {});
        shift_.assign(dim, 0);
        for (int d = 0; d < dim; ++d) init_direction_numbers(d);
        if (scramble_seed.has_value())
            for (int d = 0; d < dim; ++d) scramble_dimension(d, *scramble_seed);
    }

    int dimension() const { return dim_; }

    /// The n-th point (n = 0, 1, ...), each coordinate in [0, 1).
    std::vector<double> point(std::uint64_t n) const {
        std::vector<double> out(dim_);
        constexpr double scale = 1.0 / (std::uint64_t(1) << kBits);
        for (int d = 0; d < dim_; ++d) {
            std::uint64_t acc = shift_[d];
            std::uint64_t idx = n;
            for (int bit = 0; idx != 0; ++bit, idx >>= 1)
                if (idx & 1) acc ^= v_[d][bit];
            out[d] = static_cast<double>(acc) * scale;
        }
        return out;
    }

  private:
    struct Row {
        std::uint8_t degree;
        std::uint8_t poly;  // inner coefficient bits a_1 .. a_{s-1}
        std::uint8_t m[7];  // initial odd direction integers
    };

    // Dimensions 2..32 of the published table; dimension 1 is van der
    // Corput (m_k = 1 for every k).
    static const Row* table() {
        static const Row rows[31] = {
            {1, 0, {1}},
            {2, 1, {1, 3}},
            {3, 1, {1, 3, 1}},
            {3, 2, {1, 1, 1}},
            {4, 1, {1, 1, 3, 3}},
            {4, 4, {1, 3, 5, 13}},
            {5, 2, {1, 1, 5, 5, 17}},
            {5, 4, {1, 1, 5, 5, 5}},
            {5, 7, {1, 1, 7, 11, 19}},
            {5, 11, {1, 1, 5, 1, 1}},
            {5, 13, {1, 1, 1, 3, 11}},
            {5, 14, {1, 3, 5, 5, 31}},
            {6, 1, {1, 3, 3, 9, 7, 49}},
            {6, 13, {1, 1, 1, 15, 21, 21}},
            {6, 16, {1, 3, 1, 13, 27, 49}},
            {6, 19, {1, 1, 1, 15, 7, 5}},
            {6, 22, {1, 3, 1, 15, 13, 25}},
            {6, 25, {1, 1, 5, 5, 19, 61}},
            {7, 1, {1, 3, 7, 11, 23, 15, 103}},
            {7, 4, {1, 3, 7, 13, 13, 15, 69}},
            {7, 7, {1, 1, 3, 13, 7, 35, 63}},
            {7, 8, {1, 3, 5, 9, 1, 25, 53}},
            {7, 14, {1, 3, 1, 13, 9, 35, 107}},
            {7, 19, {1, 3, 1, 5, 27, 61, 31}},
            {7, 21, {1, 1, 5, 11, 19, 41, 61}},
            {7, 28, {1, 3, 5, 3, 3, 13, 69}},
            {7, 31, {1, 1, 7, 13, 1, 19, 1}},
            {7, 32, {1, 3, 7, 5, 13, 19, 59}},
            {7, 37, {1, 1, 3, 9, 25, 29, 41}},
            {7, 41, {1, 3, 5, 13, 23, 1, 55}},
            {7, 42, {1, 3, 7, 3, 13, 59, 17}},
        };
        return rows;
    }

    void init_direction_numbers(int d) {
        std::array<std::uint64_t, kBits> m{};  // direction integers, m_k odd
        if (d == 0) {
            for (int k = 0; k < kBits; ++k) m[k] = 1;
        } else {
            const Row& row = table()[d - 1];
            const int s = row.degree;
            for (int k = 0; k < s; ++k) m[k] = row.m[k];
            for (int k = s; k < kBits; ++k) {
                std::uint64_t val = m[k - s] ^ (m[k - s] << s);
                for (int i = 1; i < s; ++i)
                    if ((row.poly >> (s - 1 - i)) & 1) val ^= m[k - i] << i;
                m[k] = val;
            }
        }
        for (int k = 0; k < kBits; ++k) v_[d][k] = m[k] << (kBits - 1 - k);
    }

    /// Matousek-style linear scramble (random lower-triangular bit matrix
    /// with unit diagonal applied to every direction number) plus a digital
    /// shift. Digit j of the output is parity(L_row_j & input).
    void scramble_dimension(int d, std::uint64_t seed) {
        std::uint64_t rng_state = derive_seed(seed, {0x736f626fULL, static_cast<std::uint64_t>(d)});
        std::array<std::uint64_t, kBits> rows;
        for (int j = 0; j < kBits; ++j) {
            // Digit j has weight 2^-(j+1) and sits at bit (kBits-1-j). Row j
            // touches digits 0..j: the j high bits plus the diagonal.
            std::uint64_t high_mask =
                j == 0 ? 0 : (~std::uint64_t{0} << (64 - j)) >> (64 - kBits);
            rows[j] = (splitmix64(rng_state) & high_mask) | (std::uint64_t(1) << (kBits - 1 - j));
        }
        for (int k = 0; k < kBits; ++k) {
            std::uint64_t in = v_[d][k], out = 0;
            for (int j = 0; j < kBits; ++j)
                out |= static_cast<std::uint64_t>(std::popcount(rows[j] & in) & 1)
                       << (kBits - 1 - j);
            v_[d][k] = out;
        }
        shift_[d] = splitmix64(rng_state) >> (64 - kBits);
    }

    int dim_;
    std::vector<std::array<std::uint64_t, kBits>> v_;
    std::vector<std::uint64_t> shift_;
};

/// First n points of the (optionally scrambled) Sobol' sequence.
inline std::vector<std::vector<double>> sobol_points(int dim, std::uint64_t n,
                                                     std::optional<std::uint64_t> seed = std::nullopt) {
    SobolSequence seq(dim, seed);
    std::vector<std::vector<double>> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(seq.point(i));
    return out;
}

}  // namespace dea
