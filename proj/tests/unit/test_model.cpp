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

#include <cmath>
#include <numbers>

#include "doctest.h"

#include "helpers.hpp"
#include "nwise/errors.hpp"
#include "nwise/model.hpp"
#include "nwise/sampling.hpp"

using namespace nwise;
using nwise::testing::hand_hamiltonian;
using nwise::testing::max_abs;

TEST_CASE("drivers evaluate in closed form") {
    CHECK(evaluate_driver(CosineDriver{0.7, 3.0, 0.0}, 0.0) == doctest::Approx(0.7));
    CHECK(evaluate_driver(SineDriver{0.7, 3.0, 0.0}, 0.0) == 0.0);
    CHECK(evaluate_driver(LinearRampDriver{2.5, 0.0}, 1.2) == doctest::Approx(3.0));
    CHECK(evaluate_driver(LinearRampDriver{2.5, 1.0}, 0.0) == doctest::Approx(1.0));
    CHECK(evaluate_driver(ConstantDriver{-4.0}, 99.0) == -4.0);
    CHECK(evaluate_driver(SechPulseDriver{2.0, 0.5, 1.0}, 1.0) == doctest::Approx(2.0));
    CHECK(evaluate_driver(SechPulseDriver{2.0, 0.5, 1.0}, 1.5) ==
          doctest::Approx(2.0 / std::cosh(1.0)));
    const TabulatedDriver tab{{0.0, 1.0, 3.0}, {1.0, 3.0, -1.0}};
    CHECK(evaluate_driver(tab, 0.5) == doctest::Approx(2.0));
    CHECK(evaluate_driver(tab, 2.0) == doctest::Approx(1.0));
    CHECK(evaluate_driver(tab, 3.0) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(evaluate_driver(tab, 3.0001), DomainError);
    CHECK_THROWS_AS(evaluate_driver(tab, -0.1), DomainError);
}

TEST_CASE("driver invariants are enforced") {
    CHECK_THROWS_AS(validate_driver(SechPulseDriver{1.0, 0.0, 0.0}), UsageError);
    CHECK_THROWS_AS(validate_driver(TabulatedDriver{{0.0, 0.0}, {1.0, 2.0}}), UsageError);
    CHECK_THROWS_AS(validate_driver(TabulatedDriver{{0.0}, {1.0}}), UsageError);
    CHECK_THROWS_AS(validate_driver(TabulatedDriver{{0.0, 1.0}, {1.0}}), UsageError);
    CHECK_THROWS_AS(validate_driver(ConstantDriver{std::nan("")}), UsageError);
    CHECK_NOTHROW(validate_driver(TabulatedDriver{{0.0, 1.0}, {1.0, 2.0}}));
    CHECK(driver_kind(LinearRampDriver{}) == "linear-ramp");
    CHECK(driver_kind(SechPulseDriver{}) == "sech-pulse");
}

TEST_CASE("full Hamiltonian has n + 3 raw terms") {
    for (int n = 2; n <= 6; ++n) {
        ScenarioSampler s(static_cast<std::uint64_t>(n));
        const auto cfg = s.constant_scenario(n);
        CHECK(build_full_hamiltonian(cfg, 0.0).terms().size() ==
              static_cast<std::size_t>(n + 3));
    }
}

TEST_CASE("two-spin Hamiltonian matches the term list") {
    const auto cfg = testing::constant_config({0.3, -1.1}, 0.7, 0.2, -0.5);
    const auto h = build_full_hamiltonian(cfg, 0.0);
    REQUIRE(h.terms().size() == 5);
    CHECK(h.terms()[0].string.str() == "ZI");
    CHECK(h.terms()[0].coefficient.real() == 0.3);
    CHECK(h.terms()[1].string.str() == "IZ");
    CHECK(h.terms()[1].coefficient.real() == -1.1);
    CHECK(h.terms()[2].string.str() == "XX");
    CHECK(h.terms()[3].string.str() == "YY");
    CHECK(h.terms()[4].string.str() == "ZZ");
}

TEST_CASE("non-interacting limit is diagonal with +-omega sums") {
    const std::vector<double> w{0.9, -0.4, 1.7};
    const auto cfg = testing::constant_config(w, 0.0, 0.0, 0.0);
    const auto d = to_dense(build_full_hamiltonian(cfg, 0.0), 3);
    for (BasisIndex b = 0; b < 8; ++b) {
        double e = 0.0;
        for (int k = 1; k <= 3; ++k) {
            e += spin_sign(b, k, 3) * w[static_cast<std::size_t>(k - 1)];
        }
        CHECK(d(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)).real() ==
              doctest::Approx(e));
    }
    Eigen::MatrixXcd off = d;
    off.diagonal().setZero();
    CHECK(max_abs(off) == 0.0);
}

TEST_CASE("dense Hamiltonian equals the hand-assembled Kronecker sum") {
    ScenarioSampler s(42);
    for (int n = 2; n <= 6; ++n) {
        for (int draw = 0; draw < 5; ++draw) {
            const auto cfg = s.constant_scenario(n);
            const auto smp = sample_schedules(cfg.fields, cfg.couplings, 0.0);
            const auto d = to_dense(build_full_hamiltonian(cfg, 0.0), n);
            const auto hand = hand_hamiltonian(smp.omega, smp.gamma_x, smp.gamma_y, smp.gamma_z);
            CHECK(max_abs(d - hand) < 1e-14);
            CHECK(max_abs(d - d.adjoint()) < 1e-12);
        }
    }
}

TEST_CASE("symmetries of the full Hamiltonian") {
    ScenarioSampler s(3);
    for (int n = 2; n <= 5; ++n) {
        auto cfg = s.constant_scenario(n);
        cfg.couplings.y = ConstantDriver{0.0};
        cfg.couplings.z = ConstantDriver{0.0};
        cfg.fields.omega.assign(static_cast<std::size_t>(n), ConstantDriver{0.0});
        OperatorSum xn(n);
        xn.add(1.0, PauliString::uniform(n, PauliLetter::X));
        CHECK(commutes(build_full_hamiltonian(cfg, 0.0), xn));

        auto zcfg = s.constant_scenario(n);
        zcfg.couplings.x = ConstantDriver{0.0};
        zcfg.couplings.y = ConstantDriver{0.0};
        const auto h = build_full_hamiltonian(zcfg, 0.0);
        for (int k = 1; k <= n; ++k) {
            OperatorSum zk(n);
            zk.add(1.0, PauliString::single(n, k, PauliLetter::Z));
            CHECK(commutes(h, zk));
        }
    }
}

TEST_CASE("dense Hamiltonian is linear in every parameter") {
    const std::vector<double> w{0.4, -0.2, 1.3};
    const auto h = [&](std::vector<double> om, double gx, double gy, double gz) {
        return to_dense(build_full_hamiltonian(testing::constant_config(om, gx, gy, gz), 0.0),
                        3);
    };
    const Eigen::MatrixXcd base = h(w, 0.5, -0.3, 0.8);
    const Eigen::MatrixXcd scaled = h({0.8, -0.4, 2.6}, 1.0, -0.6, 1.6);
    CHECK(max_abs(scaled - 2.0 * base) < 1e-14);
    const Eigen::MatrixXcd sum = h({0.4, -0.2, 1.3}, 0.0, 0.0, 0.0) + h({0, 0, 0}, 0.5, 0.0, 0.0) +
                     h({0, 0, 0}, 0.0, -0.3, 0.0) + h({0, 0, 0}, 0.0, 0.0, 0.8);
    CHECK(max_abs(sum - base) < 1e-14);
}

TEST_CASE("scenario validation") {
    auto cfg = testing::constant_config({1.0, 1.0}, 0.1, 0.0, 0.0);
    CHECK_NOTHROW(cfg.validate());
    auto bad = cfg;
    bad.n = 1;
    CHECK_THROWS_AS(bad.validate(), UsageError);
    bad = cfg;
    bad.fields.omega.pop_back();
    CHECK_THROWS_AS(bad.validate(), UsageError);
    bad = cfg;
    bad.time.steps = 0;
    CHECK_THROWS_AS(bad.validate(), UsageError);
    bad = cfg;
    bad.initial = DiagonalMixtureInit{{0.3, 0.3, 0.2, 0.1}};
    CHECK_THROWS_AS(bad.validate(), UsageError);
    bad.initial = DiagonalMixtureInit{{0.3, 0.3, 0.2, 0.2}};
    CHECK_NOTHROW(bad.validate());
    bad.initial = DiagonalMixtureInit{{0.5, 0.7, -0.2, 0.0}};
    CHECK_THROWS_AS(bad.validate(), UsageError);
    bad = cfg;
    bad.initial = BasisStateInit{4};
    CHECK_THROWS_AS(bad.validate(), UsageError);
}

TEST_CASE("initial states") {
    auto cfg = testing::constant_config({1.0, 1.0, 1.0}, 0.1, 0.0, 0.0);
    cfg.initial = GhzPairInit{1, std::numbers::pi / 2};
    const auto psi = initial_state_vector(cfg);
    CHECK(psi.norm() == doctest::Approx(1.0));
    CHECK(std::abs(psi(1) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(psi(6) - std::complex<double>(0, 1) / std::sqrt(2.0)) < 1e-15);
    cfg.initial = DiagonalMixtureInit{std::vector<double>(8, 0.125)};
    CHECK_THROWS_AS(initial_state_vector(cfg), UsageError);
}

TEST_CASE("characteristic frequency bounds the Hamiltonian norm") {
    ScenarioSampler s(11);
    for (int draw = 0; draw < 12; ++draw) {
        const auto cfg = s.dynamic_scenario(4, draw);
        const double w = characteristic_frequency(cfg);
        for (int i = 0; i <= 20; ++i) {
            const double t = cfg.time.t0 + (cfg.time.t1 - cfg.time.t0) * i / 20.0;
            const auto d = to_dense(build_full_hamiltonian(cfg, t), 4);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d);
            CHECK(es.eigenvalues().cwiseAbs().maxCoeff() <= w + 1e-12);
        }
    }
}
