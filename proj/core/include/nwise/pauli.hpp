// Copyright 2026 The nwise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "nwise/basis.hpp"

namespace nwise {

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(PauliLetter p);

/// A tensor product of single-site Pauli matrices times a phase i^k.
///
/// Sites are addressed 1..n to match the spin numbering of the basis
/// convention. The phase is stored as a power of i so that products stay
/// exact.
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(std::vector<PauliLetter> letters,
                         std::uint8_t phase_power = 0);

    static PauliString identity(int n);
    static PauliString single(int n, int spin, PauliLetter letter);
    /// The same letter on every site, e.g. X^{\otimes n}.
    static PauliString uniform(int n, PauliLetter letter);
    /// Parses strings such as "XIZ", "-YY", "iZ" or "-iXX".
    static PauliString parse(std::string_view text);

    int size() const { return static_cast<int>(letters_.size()); }
    PauliLetter at(int spin) const;
    const std::vector<PauliLetter> &letters() const { return letters_; }

    /// Power k of the phase i^k, in 0..3.
    std::uint8_t phase_power() const { return phase_; }
    Complex phase() const;
    PauliString without_phase() const { return PauliString(letters_, 0); }

    std::string str() const;

    friend bool operator==(const PauliString &, const PauliString &) = default;

  private:
    std::vector<PauliLetter> letters_;
    std::uint8_t phase_ = 0;
};

/// Site-wise product a*b with the accumulated phase. Throws UsageError on a
/// length mismatch.
PauliString pauli_multiply(const PauliString &a, const PauliString &b);

inline PauliString operator*(const PauliString &a, const PauliString &b) {
    return pauli_multiply(a, b);
}

struct PauliTerm {
    Complex coefficient;
    PauliString string;
};

/// A weighted sum of Pauli strings on a fixed number of sites.
///
/// add() appends without merging; arithmetic results and canonical() are
/// merged, sorted by letters, carry phase-free strings and have no
/// coefficient below kDropThreshold in magnitude.
class OperatorSum {
  public:
    static constexpr double kDropThreshold = 1e-15;

    explicit OperatorSum(int n);

    int sites() const { return n_; }
    const std::vector<PauliTerm> &terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    OperatorSum &add(Complex coefficient, const PauliString &string);
    OperatorSum canonical() const;

    OperatorSum &operator+=(const OperatorSum &other);
    OperatorSum &operator-=(const OperatorSum &other);
    OperatorSum &operator*=(Complex scale);

    friend OperatorSum operator+(OperatorSum a, const OperatorSum &b) {
        return a += b;
    }
    friend OperatorSum operator-(OperatorSum a, const OperatorSum &b) {
        return a -= b;
    }
    friend OperatorSum operator*(Complex s, OperatorSum a) { return a *= s; }
    friend OperatorSum operator*(const OperatorSum &a, const OperatorSum &b);

    std::string str() const;

  private:
    void check_sites(int other) const;

    int n_;
    std::vector<PauliTerm> terms_;
};

/// Canonical a*b - b*a.
OperatorSum commutator(const OperatorSum &a, const OperatorSum &b);

/// True iff the symbolic commutator cancels exactly.
bool commutes(const OperatorSum &a, const OperatorSum &b);

using DenseOperator = Eigen::MatrixXcd;

/// Dense matrix of a single string under the basis convention. Throws
/// CapacityError above kDenseCap.
DenseOperator to_dense(const PauliString &string);

/// Dense matrix of a sum on n sites. Throws CapacityError above kDenseCap and
/// UsageError if any string has a different length.
DenseOperator to_dense(const OperatorSum &op, int n);

} // namespace nwise
