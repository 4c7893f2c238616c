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

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dea/errors.hpp"

namespace dea {

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

/// A word over {I, X, Y, Z}, one letter per qubit.
///
/// Letter q acts on qubit q. The textual form writes qubit Q-1 leftmost, so
/// the word lines up with the |b_{Q-1} ... b_0> convention used for basis
/// states. Internally the word is a pair of bit masks: bit q of x_mask is
/// set for letters X and Y, bit q of z_mask for Z and Y.
class PauliString {
  public:
    static constexpr int kMaxQubits = 24;

    PauliString(int qubits, std::uint64_t x_mask, std::uint64_t z_mask)
        : qubits_(qubits), x_(x_mask), z_(z_mask) {
        if (qubits < 1 || qubits > kMaxQubits)
            throw std::invalid_argument("PauliString: qubit count out of range");
        std::uint64_t all = mask_all(qubits);
        if ((x_ & ~all) != 0 || (z_ & ~all) != 0)
            throw std::invalid_argument("PauliString: mask exceeds qubit count");
    }

    static PauliString identity(int qubits) { return PauliString(qubits, 0, 0); }

    /// Single-letter word: `letter` on qubit `q`, identity elsewhere.
    static PauliString single(int qubits, Pauli letter, int q) {
        if (q < 0 || q >= qubits) throw std::invalid_argument("PauliString: qubit index out of range");
        std::uint64_t b = std::uint64_t(1) << q;
        switch (letter) {
            case Pauli::I: return PauliString(qubits, 0, 0);
            case Pauli::X: return PauliString(qubits, b, 0);
            case Pauli::Y: return PauliString(qubits, b, b);
            case Pauli::Z: return PauliString(qubits, 0, b);
        }
        throw std::invalid_argument("PauliString: bad letter");
    }

    /// Parses the textual form (leftmost char = qubit Q-1).
    static PauliString from_string(std::string_view word) {
        int q = static_cast<int>(word.size());
        if (q < 1 || q > kMaxQubits) throw ParseError("Pauli word length out of range");
        std::uint64_t x = 0, z = 0;
        for (int i = 0; i < q; ++i) {
            std::uint64_t b = std::uint64_t(1) << (q - 1 - i);
            switch (word[i]) {
                case 'I': break;
                case 'X': x |= b; break;
                case 'Y': x |= b; z |= b; break;
                case 'Z': z |= b; break;
                default: throw ParseError("Pauli word may contain only I, X, Y, Z");
            }
        }
        return PauliString(q, x, z);
    }

    int qubits() const { return qubits_; }
    std::uint64_t x_mask() const { return x_; }
    std::uint64_t z_mask() const { return z_; }
    bool is_identity() const { return x_ == 0 && z_ == 0; }

    Pauli letter(int q) const {
        bool x = (x_ >> q) & 1, z = (z_ >> q) & 1;
        if (x && z) return Pauli::Y;
        if (x) return Pauli::X;
        if (z) return Pauli::Z;
        return Pauli::I;
    }

    std::string to_string() const {
        std::string s(qubits_, 'I');
        for (int q = 0; q < qubits_; ++q) s[qubits_ - 1 - q] = static_cast<char>(letter(q));
        return s;
    }

    /// Number of non-identity letters.
    int weight() const { return std::popcount(x_ | z_); }

    bool operator==(const PauliString& o) const {
        return qubits_ == o.qubits_ && x_ == o.x_ && z_ == o.z_;
    }
    bool operator<(const PauliString& o) const {
        if (qubits_ != o.qubits_) return qubits_ < o.qubits_;
        if (x_ != o.x_) return x_ < o.x_;
        return z_ < o.z_;
    }

  private:
    static std::uint64_t mask_all(int q) { return (q == 64) ? ~std::uint64_t{0} : ((std::uint64_t(1) << q) - 1); }

    int qubits_;
    std::uint64_t x_;
    std::uint64_t z_;
};

/// True iff the two words commute: the number of positions carrying distinct
/// non-identity letters must be even. Equivalent to the symplectic form
/// popcount(a.x & b.z) + popcount(a.z & b.x) being even.
inline bool pauli_commute(const PauliString& a, const PauliString& b) {
    if (a.qubits() != b.qubits())
        throw std::invalid_argument("pauli_commute: length mismatch");
    int anti = std::popcount(a.x_mask() & b.z_mask()) + std::popcount(a.z_mask() & b.x_mask());
    return (anti % 2) == 0;
}

/// Cyclic shift of qubit labels: the letter on qubit q moves to qubit
/// (q+1) mod Q. In textual form "XII" (X on qubit 2 of 3) becomes "IIX".
inline PauliString translate_string(const PauliString& p) {
    int q = p.qubits();
    std::uint64_t all = (std::uint64_t(1) << q) - 1;
    auto rot = [&](std::uint64_t m) { return ((m << 1) | (m >> (q - 1))) & all; };
    return PauliString(q, rot(p.x_mask()), rot(p.z_mask()));
}

/// A Hermitian sum of distinct Pauli words with unit coefficients; the G in
/// R_G(theta) = exp(-i*theta*G/2). The identity word is not allowed.
class Generator {
  public:
    explicit Generator(std::vector<PauliString> terms) : terms_(std::move(terms)) {
        if (terms_.empty()) throw std::invalid_argument("Generator: no terms");
        int q = terms_.front().qubits();
        for (const PauliString& t : terms_) {
            if (t.qubits() != q) throw std::invalid_argument("Generator: mixed term lengths");
            if (t.is_identity()) throw std::invalid_argument("Generator: identity term not allowed");
        }
        std::vector<PauliString> sorted = terms_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("Generator: duplicate term");
    }

    static Generator single(int qubits, Pauli letter, int q) {
        return Generator({PauliString::single(qubits, letter, q)});
    }

    const std::vector<PauliString>& terms() const { return terms_; }
    int qubits() const { return terms_.front().qubits(); }
    int term_count() const { return static_cast<int>(terms_.size()); }

    bool pairwise_commuting() const {
        for (std::size_t i = 0; i < terms_.size(); ++i)
            for (std::size_t j = i + 1; j < terms_.size(); ++j)
                if (!pauli_commute(terms_[i], terms_[j])) return false;
        return true;
    }

    bool operator==(const Generator& o) const { return terms_ == o.terms_; }

  private:
    std::vector<PauliString> terms_;
};

}  // namespace dea
