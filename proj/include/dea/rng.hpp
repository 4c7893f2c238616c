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
#include <initializer_list>
#include <numbers>
#include <random>
#include <vector>

namespace dea {

/// Finalizer of splitmix64; a strong 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// splitmix64 step; the standard seed expander.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    return mix64(state);
}

/// Deterministically derives a child seed from a base seed and a path of
/// integers, so that independent tasks (matrix entries, bootstrap replicas,
/// probe batches, ...) get decorrelated streams regardless of evaluation
/// order. Every element is run through the full mixer before combining, so
/// nearby (base, path) pairs do not collide.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = mix64(base + 0x9e3779b97f4a7c15ULL);
    for (std::uint64_t p : path) {
        std::uint64_t elem = mix64(p + 0x9e3779b97f4a7c15ULL);
        h = mix64(h ^ (elem + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
    }
    return h;
}

inline std::mt19937_64 make_engine(std::uint64_t seed) { return std::mt19937_64(seed); }

/// Draws a parameter point uniformly from [0, 2*pi)^n, rejecting a small
/// neighbourhood of {0, pi, 2*pi} in every coordinate so that classification
/// runs at a generic point.
inline std::vector<double> random_theta(int n, std::uint64_t seed, double exclusion = 1e-3) {
    std::mt19937_64 eng = make_engine(seed);
    std::uniform_real_distribution<double> dist(0.0, 2.0 * std::numbers::pi);
    std::vector<double> theta(n);
    for (int i = 0; i < n; ++i) {
        double v;
        do {
            v = dist(eng);
        } while (v < exclusion || std::abs(v - std::numbers::pi) < exclusion ||
                 v > 2.0 * std::numbers::pi - exclusion);
        theta[i] = v;
    }
    return theta;
}

}  // namespace dea
