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

#include "nwise/transform.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "nwise/errors.hpp"

namespace nwise {

const char *to_string(ChainOrdering ordering) {
    return ordering == ChainOrdering::forward ? "forward" : "reverse";
}

DenseOperator pair_unitary(int control, int target, int n) {
    if (n < 2) {
        throw UsageError("pair unitary needs n >= 2");
    }
    if (control < 1 || control > n || target < 1 || target > n) {
        throw UsageError("pair unitary index out of range 1.." + std::to_string(n));
    }
    if (control == target) {
        throw UsageError("pair unitary needs distinct control and target");
    }
    const PauliString zc = PauliString::single(n, control, PauliLetter::Z);
    const PauliString xt = PauliString::single(n, target, PauliLetter::X);
    OperatorSum u(n);
    u.add(0.5, PauliString::identity(n));
    u.add(0.5, zc);
    u.add(0.5, xt);
    u.add(-0.5, zc * xt);
    return to_dense(u.canonical(), n);
}

ChainUnitary::ChainUnitary(int n, ChainOrdering ordering)
    : n_(n), ordering_(ordering) {
    if (n < 2 || n > kMaxSpins) {
        throw UsageError("chain unitary needs 2 <= n <= " + std::to_string(kMaxSpins));
    }
    for (int j = 1; j < n; ++j) {
        factors_.push_back({j, j + 1});
    }
    if (ordering == ChainOrdering::reverse) {
        std::reverse(factors_.begin(), factors_.end());
    }
    if (ordering == ChainOrdering::reverse && n <= kTableCap) {
        const BasisIndex dim = dimension(n);
        table_.resize(dim);
        for (BasisIndex b = 0; b < dim; ++b) {
            table_[b] = static_cast<std::uint32_t>(apply_factors(b));
        }
    }
    if (n <= kEagerDenseCap) {
        dense_ = build_dense();
    }
}

BasisIndex ChainUnitary::apply_factors(BasisIndex b) const {
    for (const auto &f : factors_) {
        if (spin_bit(b, f.control, n_) == 1) {
            b ^= spin_mask(f.target, n_);
        }
    }
    return b;
}

BasisIndex ChainUnitary::permute_index(BasisIndex b) const {
    if (b >= dimension(n_)) {
        throw UsageError("basis index " + std::to_string(b) + " out of range for n = " +
                         std::to_string(n_));
    }
    if (ordering_ == ChainOrdering::forward) {
        // Forward chain: bit k of the image is the parity of spins 1..k.
        b ^= b >> 1;
        b ^= b >> 2;
        b ^= b >> 4;
        b ^= b >> 8;
        b ^= b >> 16;
        b ^= b >> 32;
        return b;
    }
    if (!table_.empty()) {
        return table_[b];
    }
    return apply_factors(b);
}

BasisIndex ChainUnitary::inverse_index(BasisIndex c) const {
    if (c >= dimension(n_)) {
        throw UsageError("basis index " + std::to_string(c) + " out of range for n = " +
                         std::to_string(n_));
    }
    if (ordering_ == ChainOrdering::forward) {
        return c ^ (c >> 1);
    }
    // Each factor is an involution; undo them in reverse order.
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
        if (spin_bit(c, it->control, n_) == 1) {
            c ^= spin_mask(it->target, n_);
        }
    }
    return c;
}

DenseOperator ChainUnitary::build_dense() const {
    if (n_ > kDenseCap) {
        throw CapacityError("dense chain unitary is limited to n <= " +
                            std::to_string(kDenseCap));
    }
    const auto dim = static_cast<Eigen::Index>(dimension(n_));
    DenseOperator u = DenseOperator::Identity(dim, dim);
    for (const auto &f : factors_) {
        u = pair_unitary(f.control, f.target, n_) * u;
    }
    return u;
}

ChainUnitary chain_unitary(int n, ChainOrdering ordering) {
    return ChainUnitary(n, ordering);
}

std::shared_ptr<const ChainUnitary> shared_chain(int n) {
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const ChainUnitary>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto &slot = cache[n];
    if (!slot) {
        slot = std::make_shared<const ChainUnitary>(n, ChainOrdering::forward);
    }
    return slot;
}

} // namespace nwise
