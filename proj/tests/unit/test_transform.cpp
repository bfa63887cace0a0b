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

#include <set>

#include "doctest.h"

#include "helpers.hpp"
#include "nwise/errors.hpp"
#include "nwise/oracle.hpp"
#include "nwise/sampling.hpp"
#include "nwise/transform.hpp"

using namespace nwise;
using nwise::testing::kron_string;
using nwise::testing::max_abs;

namespace {

Eigen::MatrixXcd column_map_matrix(const ChainUnitary &u) {
    const auto dim = static_cast<Eigen::Index>(dimension(u.spins()));
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        m(static_cast<Eigen::Index>(u.permute_index(static_cast<BasisIndex>(b))), b) = 1.0;
    }
    return m;
}

} // namespace

TEST_CASE("two-spin pair unitary is the controlled flip") {
    const auto u = pair_unitary(1, 2, 2);
    // Explicit (1 + Z1 + X2 - Z1 X2) / 2 from Kronecker products.
    const Eigen::MatrixXcd explicit_u =
        0.5 * (kron_string("II") + kron_string("ZI") + kron_string("IX") - kron_string("ZX"));
    CHECK(max_abs(u - explicit_u) == 0.0);
    Eigen::MatrixXcd cnot = Eigen::MatrixXcd::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(3, 2) = cnot(2, 3) = 1.0;
    CHECK(max_abs(u - cnot) == 0.0);
    // |-+> -> |-->, |--> -> |-+>, |++> fixed.
    CHECK(u(3, 2) == 1.0);
    CHECK(u(2, 3) == 1.0);
    CHECK(u(0, 0) == 1.0);
}

TEST_CASE("pair unitaries are Hermitian involutions") {
    for (int n = 2; n <= 5; ++n) {
        for (int j = 1; j <= n; ++j) {
            for (int k = 1; k <= n; ++k) {
                if (j == k) {
                    continue;
                }
                const auto u = pair_unitary(j, k, n);
                const auto id = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
                CHECK(max_abs(u - u.adjoint()) == 0.0);
                CHECK(max_abs(u * u - id) < 1e-15);
            }
        }
    }
    CHECK_THROWS_AS(pair_unitary(1, 1, 3), UsageError);
    CHECK_THROWS_AS(pair_unitary(0, 2, 3), UsageError);
    CHECK_THROWS_AS(pair_unitary(1, 4, 3), UsageError);
}

TEST_CASE("chain permutation agrees with the dense product") {
    for (int n = 2; n <= 8; ++n) {
        for (auto ordering : {ChainOrdering::forward, ChainOrdering::reverse}) {
            const ChainUnitary u(n, ordering);
            REQUIRE(u.dense().has_value());
            const auto &d = *u.dense();
            CHECK(max_abs(d - column_map_matrix(u)) == 0.0);
            const auto id = Eigen::MatrixXcd::Identity(d.rows(), d.cols());
            CHECK(max_abs(d.adjoint() * d - id) < 1e-12);
        }
    }
}

TEST_CASE("two-spin chain equals the single pair unitary") {
    const ChainUnitary u(2);
    CHECK(max_abs(*u.dense() - pair_unitary(1, 2, 2)) == 0.0);
    CHECK(u.permute_index(2) == 3);
    CHECK(u.permute_index(3) == 2);
}

TEST_CASE("chain permutation is a bijection fixing the all-plus state") {
    for (int n = 2; n <= 14; ++n) {
        const ChainUnitary u(n);
        CHECK(u.permute_index(0) == 0);
        std::set<BasisIndex> image;
        for (BasisIndex b = 0; b < dimension(n); ++b) {
            const BasisIndex c = u.permute_index(b);
            CHECK(u.inverse_index(c) == b);
            image.insert(c);
        }
        CHECK(image.size() == dimension(n));
        CHECK_THROWS_AS(u.permute_index(dimension(n)), UsageError);
    }
}

TEST_CASE("forward chain is a prefix XOR on large spin counts") {
    const ChainUnitary u(40);
    const BasisIndex b = 0x5A5A5A5A5AULL & (dimension(40) - 1);
    BasisIndex expected = 0;
    int acc = 0;
    for (int k = 1; k <= 40; ++k) {
        acc ^= spin_bit(b, k, 40);
        if (acc) {
            expected |= spin_mask(k, 40);
        }
    }
    CHECK(u.permute_index(b) == expected);
    CHECK(u.inverse_index(expected) == b);
}

TEST_CASE("forward chain factors act U12 first") {
    const ChainUnitary u(4);
    REQUIRE(u.factors().size() == 3);
    CHECK(u.factors()[0].control == 1);
    CHECK(u.factors()[0].target == 2);
    CHECK(u.factors()[2].control == 3);
    CHECK(u.factors()[2].target == 4);
    const ChainUnitary r(4, ChainOrdering::reverse);
    CHECK(r.factors()[0].control == 3);
}

TEST_CASE("dense chain form is capped") {
    const ChainUnitary u(kDenseCap + 1);
    CHECK(!u.dense().has_value());
    CHECK_THROWS_AS(u.build_dense(), CapacityError);
    CHECK(!ChainUnitary(9).dense().has_value());
    const auto built = ChainUnitary(9).build_dense();
    CHECK(max_abs(built - column_map_matrix(ChainUnitary(9))) == 0.0);
}

TEST_CASE("forward chain block-diagonalizes random Hamiltonians") {
    ScenarioSampler s(7);
    for (int n = 2; n <= 8; ++n) {
        for (int draw = 0; draw < 5; ++draw) {
            const auto cfg = s.constant_scenario(n);
            const auto rep = oracle::verify_block_structure(cfg, 0.0);
            CHECK(rep.commutator_residuals.size() == static_cast<std::size_t>(n - 1));
            CHECK(rep.worst() < 1e-10);
        }
    }
}

TEST_CASE("reverse ordering is a falsification control") {
    ScenarioSampler s(8);
    CHECK(oracle::verify_block_structure(s.constant_scenario(2), 0.0, ChainOrdering::reverse)
              .worst() < 1e-10);
    for (int n = 3; n <= 7; ++n) {
        const auto rep =
            oracle::verify_block_structure(s.constant_scenario(n), 0.0, ChainOrdering::reverse);
        CHECK(rep.worst() > 1e-3);
    }
}

TEST_CASE("single-operator images under the chain") {
    // U^dag Z_k U = Z_1 ... Z_k and U^dag X^n U = X_1, checked densely.
    for (int n = 2; n <= 6; ++n) {
        const ChainUnitary u(n);
        const auto &d = *u.dense();
        for (int k = 1; k <= n; ++k) {
            std::string zk(static_cast<std::size_t>(n), 'I');
            zk[static_cast<std::size_t>(k - 1)] = 'Z';
            std::string prefix(static_cast<std::size_t>(n), 'I');
            for (int j = 0; j < k; ++j) {
                prefix[static_cast<std::size_t>(j)] = 'Z';
            }
            CHECK(max_abs(d.adjoint() * kron_string(zk) * d - kron_string(prefix)) == 0.0);
        }
        std::string x1(static_cast<std::size_t>(n), 'I');
        x1[0] = 'X';
        CHECK(max_abs(d.adjoint() * kron_string(std::string(static_cast<std::size_t>(n), 'X')) *
                          d -
                      kron_string(x1)) == 0.0);
    }
}
