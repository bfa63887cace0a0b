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

// The chain unitary U that block-diagonalizes the N-wise Hamiltonian.
//
// U is a product of nearest-neighbour controlled flips
//
//   U(j,k) = (1 + Z_j + X_k - Z_j X_k) / 2
//
// which is the identity when spin j is |+> and X on spin k when spin j is
// |->. The chain is U = U(n-1,n) ... U(2,3) U(1,2): acting on a state, U(1,2)
// is applied first. The net effect is a basis permutation that replaces each
// bit by the XOR of itself and all bits of lower-numbered spins, so that
// U^dag H U contains spins 2..n only through Z_k.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "nwise/basis.hpp"
#include "nwise/pauli.hpp"

namespace nwise {

/// Application order of the pair factors. `reverse` applies U(n-1,n) first
/// and exists only as a falsification control: it does not block-diagonalize
/// H for n >= 3.
enum class ChainOrdering { forward, reverse };

const char *to_string(ChainOrdering ordering);

struct ControlledFlip {
    int control = 1;
    int target = 2;
};

/// Dense (1 + Z_control + X_target - Z_control X_target) / 2 on n spins, built
/// from the Pauli algebra. Throws UsageError for bad or equal indices.
DenseOperator pair_unitary(int control, int target, int n);

class ChainUnitary {
  public:
    /// Reverse chains up to this spin count keep a flat permutation table;
    /// the forward chain is a closed-form prefix parity.
    static constexpr int kTableCap = 24;
    /// Spin counts up to this value get the dense form at construction.
    static constexpr int kEagerDenseCap = 8;

    explicit ChainUnitary(int n, ChainOrdering ordering = ChainOrdering::forward);

    int spins() const { return n_; }
    ChainOrdering ordering() const { return ordering_; }

    /// Pair factors in application order (first element acts first).
    std::span<const ControlledFlip> factors() const { return factors_; }

    /// U|b> = |permute_index(b)>. Throws UsageError when b >= 2^n.
    BasisIndex permute_index(BasisIndex b) const;
    /// U^dag|c> = |inverse_index(c)>.
    BasisIndex inverse_index(BasisIndex c) const;

    /// Dense form when it was built eagerly (n <= kEagerDenseCap).
    const std::optional<DenseOperator> &dense() const { return dense_; }

    /// Product of the dense pair unitaries. Throws CapacityError above
    /// kDenseCap; cost grows as 8^n.
    DenseOperator build_dense() const;

  private:
    BasisIndex apply_factors(BasisIndex b) const;

    int n_;
    ChainOrdering ordering_;
    std::vector<ControlledFlip> factors_;
    std::vector<std::uint32_t> table_;
    std::optional<DenseOperator> dense_;
};

ChainUnitary chain_unitary(int n, ChainOrdering ordering = ChainOrdering::forward);

/// Process-wide cache of forward chains, one per n. Thread-safe.
std::shared_ptr<const ChainUnitary> shared_chain(int n);

} // namespace nwise
