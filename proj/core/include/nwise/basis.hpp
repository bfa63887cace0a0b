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

// Computational basis convention shared by every module.
//
// Spins are numbered 1..n. Basis index b = sum_k bit_k * 2^(n-k), where
// bit_k = 0 means spin k is |+> (sigma_z = +1) and bit_k = 1 means |->.
// Spin 1 is therefore the most significant bit.

#include <complex>
#include <cstdint>

#include <Eigen/Core>

namespace nwise {

using Complex = std::complex<double>;
using BasisIndex = std::uint64_t;
using StateVector = Eigen::VectorXcd;

/// Largest spin count for which dense 2^n x 2^n operators may be built.
inline constexpr int kDenseCap = 12;
/// Largest spin count for which the dense oracle evolves density matrices.
inline constexpr int kOracleDensityCap = 8;
/// Largest spin count for which the engine stores a full density matrix.
inline constexpr int kDensityCap = 10;
/// Hard upper bound on the spin count (indices are 64-bit).
inline constexpr int kMaxSpins = 62;

constexpr BasisIndex dimension(int n) { return BasisIndex{1} << n; }

constexpr BasisIndex spin_mask(int spin, int n) {
    return BasisIndex{1} << (n - spin);
}

constexpr int spin_bit(BasisIndex b, int spin, int n) {
    return static_cast<int>((b >> (n - spin)) & 1U);
}

/// Eigenvalue (+1 or -1) of sigma_z of `spin` on basis state b.
constexpr int spin_sign(BasisIndex b, int spin, int n) {
    return spin_bit(b, spin, n) == 0 ? 1 : -1;
}

constexpr BasisIndex all_minus(int n) { return dimension(n) - 1; }

} // namespace nwise
