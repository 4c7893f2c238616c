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

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "dea/state.hpp"

namespace dea {

/// Translation on basis labels: bit q moves to bit (q+1) mod Q, i.e.
/// |b_{Q-1} ... b_0>  ->  |b_{Q-2} ... b_0 b_{Q-1}>.
inline std::uint32_t translate_bits(std::uint32_t b, int qubits) {
    const std::uint32_t all = (qubits == 32) ? ~0u : ((1u << qubits) - 1);
    return ((b << 1) | (b >> (qubits - 1))) & all;
}

/// String form of the translation: "101" -> "011".
inline std::string translate_state(const std::string& bits) {
    if (bits.empty()) throw std::invalid_argument("translate_state: empty bitstring");
    return bits.substr(1) + bits[0];
}

/// tau applied to amplitudes: amplitude of |b> moves to |tau(b)>.
inline StateVector translate_statevector(const StateVector& s) {
    StateVector out(s.qubits());
    for (std::size_t i = 0; i < s.dimension(); ++i)
        out[translate_bits(static_cast<std::uint32_t>(i), s.qubits())] = s[i];
    return out;
}

/// An orbit of basis states under tau. `members` starts with the
/// lexicographically smallest member (the representative) and follows the
/// repeated action of tau.
struct EquivalenceClass {
    std::uint32_t representative = 0;
    std::vector<std::uint32_t> members;
    int order = 0;

    std::string representative_string(int qubits) const {
        std::string s(qubits, '0');
        for (int q = 0; q < qubits; ++q)
            if ((representative >> q) & 1) s[qubits - 1 - q] = '1';
        return s;
    }
};

/// Partition of all 2^Q bitstrings into tau orbits, sorted by
/// (order, representative). The order of every class divides Q.
inline std::vector<EquivalenceClass> equivalence_classes(int qubits) {
    if (qubits < 1 || qubits > 24) throw std::invalid_argument("equivalence_classes: Q out of range");
    const std::uint64_t total = std::uint64_t(1) << qubits;
    std::vector<bool> visited(total, false);
    std::vector<EquivalenceClass> classes;
    for (std::uint64_t start = 0; start < total; ++start) {
        if (visited[start]) continue;
        EquivalenceClass cls;
        std::uint32_t b = static_cast<std::uint32_t>(start);
        do {
            visited[b] = true;
            cls.members.push_back(b);
            b = translate_bits(b, qubits);
        } while (b != start);
        cls.representative = *std::min_element(cls.members.begin(), cls.members.end());
        cls.order = static_cast<int>(cls.members.size());
        // Start the member walk at the representative.
        std::vector<std::uint32_t> ordered;
        std::uint32_t m = cls.representative;
        for (int i = 0; i < cls.order; ++i) {
            ordered.push_back(m);
            m = translate_bits(m, qubits);
        }
        cls.members = std::move(ordered);
        classes.push_back(std::move(cls));
    }
    std::sort(classes.begin(), classes.end(), [](const EquivalenceClass& a, const EquivalenceClass& b) {
        return std::pair(a.order, a.representative) < std::pair(b.order, b.representative);
    });
    return classes;
}

/// #(k): the number of length-k binary strings of full period k.
/// #(1) = 2 and #(k) = 2^k - sum over proper divisors k' of #(k').
inline std::int64_t aperiodic_count(int k) {
    if (k < 1 || k > 62) throw std::invalid_argument("aperiodic_count: k out of range");
    std::vector<std::int64_t> memo(k + 1, 0);
    memo[1] = 2;
    for (int i = 2; i <= k; ++i) {
        std::int64_t v = std::int64_t(1) << i;
        for (int d = 1; d < i; ++d)
            if (i % d == 0) v -= memo[d];
        memo[i] = v;
    }
    return memo[k];
}

/// A translation eigenvalue omega = exp(2*pi*i*p/Q) identified by p; its
/// order d is the smallest j >= 1 with omega^j = 1, i.e. Q / gcd(p, Q).
struct SectorSpec {
    int qubits = 1;
    int p = 0;

    SectorSpec(int qubits_, int p_) : qubits(qubits_), p(p_) {
        if (qubits < 1) throw std::invalid_argument("SectorSpec: Q must be >= 1");
        if (p < 0 || p >= qubits) throw std::invalid_argument("SectorSpec: p must lie in [0, Q-1]");
    }

    /// Sector whose eigenvalue has the requested order d (d must divide Q).
    static SectorSpec of_order(int qubits, int d) {
        if (d < 1 || qubits % d != 0) throw std::invalid_argument("SectorSpec: d must divide Q");
        return SectorSpec(qubits, (d == 1) ? 0 : qubits / d);
    }

    int order() const { return qubits / std::gcd(p, qubits); }

    std::complex<double> omega() const {
        return std::polar(1.0, 2.0 * std::numbers::pi * p / qubits);
    }
};

/// Real dimension of the unit sphere in the omega-eigenspace of tau_Q:
/// -1 + 2 * sum over k with d | k and k | Q of #(k)/k. This is also the
/// number of independent parameters of a maximally expressive circuit into
/// that sector.
inline std::int64_t sector_dimension(const SectorSpec& spec) {
    const int q = spec.qubits, d = spec.order();
    std::int64_t acc = 0;
    for (int k = 1; k <= q; ++k) {
        if (q % k != 0 || k % d != 0) continue;
        std::int64_t cnt = aperiodic_count(k);
        acc += cnt / k;  // orbits of aperiodic strings have size exactly k
    }
    return -1 + 2 * acc;
}

inline std::int64_t sector_dimension(int qubits, int d) {
    return sector_dimension(SectorSpec::of_order(qubits, d));
}

/// Orthonormal basis of the omega-eigenspace: for every class whose order is
/// divisible by d, e(omega, [b]) = order^{-1/2} sum_j omega^j tau^j |b>.
/// Each vector satisfies tau e = conj(omega) e.
inline std::vector<StateVector> sector_basis(const SectorSpec& spec) {
    if (spec.qubits > 12) throw std::invalid_argument("sector_basis: Q > 12 not supported");
    const int d = spec.order();
    std::vector<StateVector> basis;
    for (const EquivalenceClass& cls : equivalence_classes(spec.qubits)) {
        if (cls.order % d != 0) continue;
        StateVector e(spec.qubits);
        const double scale = 1.0 / std::sqrt(double(cls.order));
        std::complex<double> phase(1, 0);
        for (int j = 0; j < cls.order; ++j) {
            e[cls.members[j]] += scale * phase;
            phase *= spec.omega();
        }
        basis.push_back(std::move(e));
    }
    return basis;
}

/// Oracle for the dimension formula: builds the dense 2^Q x 2^Q permutation
/// matrix of tau_Q, counts eigenvalues within 1e-9 of omega, and returns
/// 2*count - 1.
inline std::int64_t brute_force_sector_dimension(const SectorSpec& spec) {
    if (spec.qubits > 10)
        throw std::invalid_argument("brute_force_sector_dimension: Q > 10 not supported");
    const int dim = 1 << spec.qubits;
    Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) perm(translate_bits(i, spec.qubits), i) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(perm, false);
    if (solver.info() != Eigen::Success)
        throw NumericError("brute_force_sector_dimension: eigensolver failed");
    std::int64_t count = 0;
    for (int i = 0; i < dim; ++i)
        if (std::abs(solver.eigenvalues()(i) - spec.omega()) < 1e-9) ++count;
    return 2 * count - 1;
}

/// {"Q": Q, "sectors": [{"p":, "d":, "dim":}, ...]} over p = 0..Q-1.
inline nlohmann::json sector_table_json(int qubits) {
    nlohmann::json sectors = nlohmann::json::array();
    for (int p = 0; p < qubits; ++p) {
        SectorSpec spec(qubits, p);
        sectors.push_back(
            {{"p", p}, {"d", spec.order()}, {"dim", sector_dimension(spec)}});
    }
    return {{"Q", qubits}, {"sectors", sectors}};
}

}  // namespace dea
