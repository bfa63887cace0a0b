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

#include "nwise/pauli.hpp"

#include <map>
#include <sstream>

#include "nwise/errors.hpp"

namespace nwise {

namespace {

constexpr Complex kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// Product of two single-site letters: result letter and the power of i.
struct LetterProduct {
    PauliLetter letter;
    std::uint8_t phase;
};

LetterProduct multiply_letters(PauliLetter a, PauliLetter b) {
    const auto ua = static_cast<std::uint8_t>(a);
    const auto ub = static_cast<std::uint8_t>(b);
    const auto letter = static_cast<PauliLetter>(ua ^ ub);
    if (ua == 0 || ub == 0 || ua == ub) {
        return {letter, 0};
    }
    // X=1, Y=2, Z=3: cyclic order XY, YZ, ZX gives +i.
    const int diff = ((static_cast<int>(ub) - static_cast<int>(ua)) % 3 + 3) % 3;
    return {letter, static_cast<std::uint8_t>(diff == 1 ? 1 : 3)};
}

void check_dense_sites(int n) {
    if (n < 1) {
        throw UsageError("dense operator needs at least one site");
    }
    if (n > kDenseCap) {
        throw CapacityError("dense operators are limited to n <= " +
                            std::to_string(kDenseCap) + " (requested n = " +
                            std::to_string(n) + ")");
    }
}

// Adds coefficient * string into dense, column by column.
void accumulate_dense(DenseOperator &dense, Complex coefficient,
                      const PauliString &string) {
    const int n = string.size();
    BasisIndex flip_mask = 0;
    for (int spin = 1; spin <= n; ++spin) {
        const PauliLetter p = string.at(spin);
        if (p == PauliLetter::X || p == PauliLetter::Y) {
            flip_mask |= spin_mask(spin, n);
        }
    }
    const Complex base = coefficient * string.phase();
    const BasisIndex dim = dimension(n);
    for (BasisIndex col = 0; col < dim; ++col) {
        Complex value = base;
        for (int spin = 1; spin <= n; ++spin) {
            const int bit = spin_bit(col, spin, n);
            switch (string.at(spin)) {
            case PauliLetter::Y:
                value *= bit == 0 ? Complex(0, 1) : Complex(0, -1);
                break;
            case PauliLetter::Z:
                if (bit == 1) {
                    value = -value;
                }
                break;
            default:
                break;
            }
        }
        dense(static_cast<Eigen::Index>(col ^ flip_mask),
              static_cast<Eigen::Index>(col)) += value;
    }
}

} // namespace

char to_char(PauliLetter p) {
    static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
    return kChars[static_cast<std::uint8_t>(p)];
}

PauliString::PauliString(std::vector<PauliLetter> letters,
                         std::uint8_t phase_power)
    : letters_(std::move(letters)), phase_(phase_power & 3U) {}

PauliString PauliString::identity(int n) {
    return uniform(n, PauliLetter::I);
}

PauliString PauliString::single(int n, int spin, PauliLetter letter) {
    if (spin < 1 || spin > n) {
        throw UsageError("spin index " + std::to_string(spin) +
                         " out of range 1.." + std::to_string(n));
    }
    std::vector<PauliLetter> letters(static_cast<std::size_t>(n),
                                     PauliLetter::I);
    letters[static_cast<std::size_t>(spin - 1)] = letter;
    return PauliString(std::move(letters));
}

PauliString PauliString::uniform(int n, PauliLetter letter) {
    if (n < 1) {
        throw UsageError("Pauli string needs at least one site");
    }
    return PauliString(std::vector<PauliLetter>(static_cast<std::size_t>(n),
                                                letter));
}

PauliString PauliString::parse(std::string_view text) {
    std::uint8_t phase = 0;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        if (text.front() == '-') {
            phase = 2;
        }
        text.remove_prefix(1);
    }
    if (!text.empty() && text.front() == 'i') {
        phase = static_cast<std::uint8_t>((phase + 1) & 3U);
        text.remove_prefix(1);
    }
    std::vector<PauliLetter> letters;
    for (char c : text) {
        switch (c) {
        case 'I':
            letters.push_back(PauliLetter::I);
            break;
        case 'X':
            letters.push_back(PauliLetter::X);
            break;
        case 'Y':
            letters.push_back(PauliLetter::Y);
            break;
        case 'Z':
            letters.push_back(PauliLetter::Z);
            break;
        default:
            throw UsageError(std::string("invalid Pauli letter '") + c + "'");
        }
    }
    if (letters.empty()) {
        throw UsageError("empty Pauli string");
    }
    return PauliString(std::move(letters), phase);
}

PauliLetter PauliString::at(int spin) const {
    return letters_[static_cast<std::size_t>(spin - 1)];
}

Complex PauliString::phase() const { return kPhases[phase_]; }

std::string PauliString::str() const {
    static constexpr const char *kPrefix[] = {"", "i", "-", "-i"};
    std::string out = kPrefix[phase_];
    for (PauliLetter p : letters_) {
        out.push_back(to_char(p));
    }
    return out;
}

PauliString pauli_multiply(const PauliString &a, const PauliString &b) {
    if (a.size() != b.size()) {
        throw UsageError("Pauli string length mismatch: " +
                         std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
    }
    std::vector<PauliLetter> letters(a.letters().size());
    unsigned phase = a.phase_power() + b.phase_power();
    for (std::size_t i = 0; i < letters.size(); ++i) {
        const auto prod = multiply_letters(a.letters()[i], b.letters()[i]);
        letters[i] = prod.letter;
        phase += prod.phase;
    }
    return PauliString(std::move(letters), static_cast<std::uint8_t>(phase & 3U));
}

OperatorSum::OperatorSum(int n) : n_(n) {
    if (n < 1) {
        throw UsageError("operator sum needs at least one site");
    }
}

void OperatorSum::check_sites(int other) const {
    if (other != n_) {
        throw UsageError("operator length mismatch: " + std::to_string(n_) +
                         " vs " + std::to_string(other));
    }
}

OperatorSum &OperatorSum::add(Complex coefficient, const PauliString &string) {
    check_sites(string.size());
    terms_.push_back({coefficient * string.phase(), string.without_phase()});
    return *this;
}

OperatorSum OperatorSum::canonical() const {
    std::map<std::vector<PauliLetter>, Complex> merged;
    for (const auto &term : terms_) {
        merged[term.string.letters()] += term.coefficient * term.string.phase();
    }
    OperatorSum out(n_);
    for (auto &[letters, coefficient] : merged) {
        if (std::abs(coefficient) >= kDropThreshold) {
            out.terms_.push_back({coefficient, PauliString(letters)});
        }
    }
    return out;
}

OperatorSum &OperatorSum::operator+=(const OperatorSum &other) {
    check_sites(other.n_);
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    *this = canonical();
    return *this;
}

OperatorSum &OperatorSum::operator-=(const OperatorSum &other) {
    check_sites(other.n_);
    for (const auto &term : other.terms_) {
        terms_.push_back({-term.coefficient, term.string});
    }
    *this = canonical();
    return *this;
}

OperatorSum &OperatorSum::operator*=(Complex scale) {
    for (auto &term : terms_) {
        term.coefficient *= scale;
    }
    *this = canonical();
    return *this;
}

OperatorSum operator*(const OperatorSum &a, const OperatorSum &b) {
    a.check_sites(b.n_);
    OperatorSum out(a.n_);
    for (const auto &ta : a.terms_) {
        for (const auto &tb : b.terms_) {
            const PauliString product = ta.string * tb.string;
            out.terms_.push_back({ta.coefficient * tb.coefficient *
                                      product.phase(),
                                  product.without_phase()});
        }
    }
    return out.canonical();
}

std::string OperatorSum::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto &term : terms_) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << '(' << term.coefficient.real() << (term.coefficient.imag() < 0 ? "" : "+")
           << term.coefficient.imag() << "i)" << term.string.str();
    }
    if (first) {
        os << '0';
    }
    return os.str();
}

OperatorSum commutator(const OperatorSum &a, const OperatorSum &b) {
    return a * b - b * a;
}

bool commutes(const OperatorSum &a, const OperatorSum &b) {
    return commutator(a, b).empty();
}

DenseOperator to_dense(const PauliString &string) {
    check_dense_sites(string.size());
    const auto dim = static_cast<Eigen::Index>(dimension(string.size()));
    DenseOperator dense = DenseOperator::Zero(dim, dim);
    accumulate_dense(dense, Complex(1, 0), string);
    return dense;
}

DenseOperator to_dense(const OperatorSum &op, int n) {
    check_dense_sites(n);
    if (op.sites() != n) {
        throw UsageError("operator has " + std::to_string(op.sites()) +
                         " sites, requested dense form on " + std::to_string(n));
    }
    const auto dim = static_cast<Eigen::Index>(dimension(n));
    DenseOperator dense = DenseOperator::Zero(dim, dim);
    for (const auto &term : op.terms()) {
        accumulate_dense(dense, term.coefficient, term.string);
    }
    return dense;
}

} // namespace nwise
