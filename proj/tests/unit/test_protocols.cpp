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
#include <string>
#include <vector>

#include "doctest.h"

#include "nwise/errors.hpp"
#include "nwise/protocols.hpp"

using namespace nwise;
using namespace nwise::protocols;

namespace {

constexpr double kPi = std::numbers::pi;

GhzScenario ghz(int n, double gx, GhzTarget target) {
    GhzScenario s;
    s.n = n;
    s.gamma_x = gx;
    s.target = target;
    s.time = TimeGrid{0.0, ghz_target_time(target, gx), 200};
    return s;
}

CoolingScenario odd3() {
    CoolingScenario s;
    s.n = 3;
    s.omega = {5, 4, 3};
    s.gamma = 1.0;
    s.nu = -12.0;
    s.weights = {0.4, 0.3, 0.2, 0.1};
    return s;
}

CoolingScenario odd5() {
    CoolingScenario s;
    s.n = 5;
    s.omega = {9, 7, 5, 4, 3};
    s.gamma = 1.0;
    s.nu = resonant_nu(5, s.omega);
    s.weights.assign(16, 0.04);
    s.weights[0] = 0.4;
    return s;
}

// Label of the initial basis state |+, b> of spins 2..n, read off the prefix
// parity of its bits.
SubspaceLabel label_of(int n, BasisIndex b) {
    std::vector<int> eps;
    int prev = 0;
    for (int k = 2; k <= n; ++k) {
        const int bit = static_cast<int>((b >> (n - k)) & 1U);
        eps.push_back((bit ^ prev) != 0 ? -1 : 1);
        prev = bit;
    }
    return SubspaceLabel(eps);
}

// Closed-form populations after the pulse for odd-n cooling.
double predicted_success(const CoolingScenario &s) {
    const double t = s.pulse_duration();
    double p = 0.0;
    for (BasisIndex b = 0; b < s.weights.size(); ++b) {
        const double delta = detuning(label_of(s.n, b), s.splittings(), s.nu, s.n);
        p += s.weights[b] * rabi_probability(s.gamma, delta, t);
    }
    return p;
}

} // namespace

TEST_CASE("GHZ target times") {
    CHECK(ghz_target_time(GhzTarget::half, 1.0) == doctest::Approx(kPi / 4));
    CHECK(ghz_target_time(GhzTarget::full, 0.5) == doctest::Approx(kPi));
    CHECK_THROWS_AS(ghz_target_time(GhzTarget::full, 0.0), UsageError);
}

TEST_CASE("full inversion reaches the all-minus state") {
    for (int n : {2, 3, 4, 7}) {
        const auto r = run_ghz(ghz(n, 1.0, GhzTarget::full));
        REQUIRE(r.expected_p_minus.has_value());
        CHECK(*r.expected_p_minus == 1.0);
        CHECK(r.samples.back().p_minus == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.samples.front().p_plus == 1.0);
        CHECK(r.max_leakage < 1e-9);
    }
}

TEST_CASE("half inversion produces a GHZ state") {
    const auto r = run_ghz(ghz(3, 0.5, GhzTarget::half));
    CHECK(*r.expected_p_minus == 0.5);
    CHECK(r.samples.back().p_minus == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r.samples.back().ghz_fidelity == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.max_leakage < 1e-9);
    for (const auto &s : r.samples) {
        CHECK(s.p_minus == doctest::Approx(std::pow(std::sin(0.5 * s.t), 2)).epsilon(1e-9));
    }
}

TEST_CASE("GHZ runs on large registers") {
    const auto r = run_ghz(ghz(40, 2.0, GhzTarget::full));
    CHECK(r.samples.back().p_minus == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.max_leakage < 1e-9);
}

TEST_CASE("GHZ oracle agreement") {
    RunOptions opts;
    opts.oracle = true;
    const auto r = run_ghz(ghz(4, 1.0, GhzTarget::full), opts);
    REQUIRE(r.oracle_max_gap.has_value());
    CHECK(*r.oracle_max_gap < 1e-9);
}

TEST_CASE("swept field gives the Landau-Zener probability") {
    auto s = ghz(3, 1.0, GhzTarget::full);
    s.omega1 = LinearRampDriver{kPi / std::log(2.0), 0.0};
    s.time = TimeGrid{-40, 40, 400};
    const auto r = run_ghz(s);
    CHECK(!r.expected_p_minus.has_value());
    CHECK(std::abs(r.samples.back().p_minus - 0.5) < 0.01);
    CHECK(r.max_leakage < 1e-9);
}

TEST_CASE("resonant coupling frequency") {
    CHECK(resonant_nu(3, {5, 4, 3}) == -12.0);
    CHECK(resonant_nu(5, {9, 7, 5, 4, 3}) == 28.0);
    CHECK(resonant_nu(4, {50, 7, 6, 5}) == 68.0);
    CHECK(resonant_nu(7, {1, 1, 1, 1, 1, 1, 1}) == -7.0);
    CHECK_THROWS_AS(resonant_nu(3, {1, 2}), UsageError);
}

TEST_CASE("cooling validation") {
    auto s = odd3();
    CHECK_NOTHROW(s.validate());
    auto even = s;
    even.n = 4;
    even.omega = {5, 4, 3, 2};
    even.weights.assign(8, 0.125);
    try {
        even.validate();
        FAIL("odd-exact with even n accepted");
    } catch (const UsageError &e) {
        CHECK(std::string(e.what()).rfind("parity:", 0) == 0);
    }
    auto rwa = odd3();
    rwa.mode = CoolingMode::even_rwa;
    CHECK_THROWS_WITH_AS(rwa.validate(), doctest::Contains("parity:"), UsageError);
    auto norm = odd3();
    norm.weights = {0.4, 0.3, 0.1, 0.1};
    CHECK_THROWS_WITH_AS(norm.validate(), doctest::Contains("normalization:"), UsageError);
    auto count = odd3();
    count.weights = {0.5, 0.5};
    CHECK_THROWS_AS(count.validate(), UsageError);
    auto neg = odd3();
    neg.weights = {1.2, -0.2, 0.0, 0.0};
    CHECK_THROWS_AS(neg.validate(), UsageError);
    auto big = odd3();
    big.n = kDensityCap + 1;
    big.omega.assign(static_cast<std::size_t>(big.n), 1.0);
    big.weights.assign(dimension(big.n - 1), 1.0 / static_cast<double>(dimension(big.n - 1)));
    CHECK_THROWS_AS(big.validate(), CapacityError);
    auto zero = odd3();
    zero.gamma = 0.0;
    CHECK_THROWS_AS(zero.validate(), UsageError);
}

TEST_CASE("cooling pulse parameters") {
    const auto s = odd3();
    CHECK(s.rabi_rate() == 1.0);
    CHECK(s.pi_pulse() == doctest::Approx(kPi));
    CHECK(s.freezing_ratio() == 3.0);
    auto r = s;
    r.n = 4;
    r.mode = CoolingMode::even_rwa;
    CHECK(r.rabi_rate() == 0.5);
    CHECK(r.pi_pulse() == doctest::Approx(2 * kPi));
    const auto cfg = s.to_config();
    CHECK(cfg.n == 3);
    CHECK(evaluate_driver(cfg.fields.omega[0], 0.3) == 2.5);
    CHECK(evaluate_driver(cfg.couplings.x, 0.0) == 0.5);
    CHECK(evaluate_driver(cfg.couplings.y, 0.0) == 0.0);
}

TEST_CASE("odd cooling matches closed-form Rabi populations") {
    for (const auto &s : {odd3(), odd5()}) {
        const auto r = run_cooling(s);
        CHECK(r.resonance_as_intended);
        REQUIRE(r.resonant.size() == 1);
        CHECK(r.resonant[0] == 0);
        const double p = predicted_success(s);
        CHECK(r.success_probability == doctest::Approx(p).epsilon(1e-6));
        CHECK(r.conditional_fidelity == doctest::Approx(s.weights[0] / p).epsilon(1e-6));
        CHECK(r.success_probability > 0.4);
        CHECK(r.conditional_fidelity > 0.9999);
        CHECK(r.min_margin > 0.0);
        CHECK(r.samples.size() == 201);
    }
}

TEST_CASE("pre-measurement state is a mixture of pair states") {
    const auto s = odd3();
    const auto r = run_cooling(s);
    const auto &rho = r.pre_measurement;
    const auto dim = rho.rows();
    REQUIRE(dim == 8);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            if (j != i && j != (dim - 1 - i)) {
                CHECK(std::abs(rho(i, j)) < 1e-14);
            }
        }
    }
    const double t = s.pulse_duration();
    for (BasisIndex b = 0; b < 4; ++b) {
        const double delta = detuning(label_of(3, b), s.splittings(), s.nu, 3);
        const double moved = s.weights[b] * rabi_probability(s.gamma, delta, t);
        const auto i = static_cast<Eigen::Index>(b);
        CHECK(rho(i, i).real() == doctest::Approx(s.weights[b] - moved).epsilon(1e-6));
        CHECK(rho(dim - 1 - i, dim - 1 - i).real() == doctest::Approx(moved).epsilon(1e-6));
    }
}

TEST_CASE("vanishing coupling never flips spin 1") {
    auto s = odd3();
    s.gamma = 0.0;
    s.duration = 2.0;
    const auto r = run_cooling(s);
    CHECK(r.success_probability == 0.0);
    CHECK(r.conditional_fidelity == 0.0);
}

TEST_CASE("leakage bound holds and shrinks with the freezing ratio") {
    double previous = 1.0;
    for (double k : {1.0, 2.0, 4.0}) {
        auto s = odd3();
        for (auto &w : s.omega) {
            w *= k;
        }
        s.nu = resonant_nu(3, s.omega);
        const auto r = run_cooling(s);
        CHECK(r.freezing_ratio == doctest::Approx(3.0 * k));
        CHECK(r.max_leakage < previous);
        CHECK(r.min_margin > 0.0);
        for (const auto &l : r.leakage) {
            CHECK(l.max_transition <= 1.1 * l.ceiling);
        }
        previous = r.max_leakage;
    }
}

TEST_CASE("selectivity map follows the Rabi ceiling") {
    const auto map = selectivity_map(odd3());
    REQUIRE(map.labels.size() == 4);
    CHECK(map.resonant == std::vector<BasisIndex>{0});
    CHECK(map.window == doctest::Approx(2 * kPi));
    const std::vector<double> expected_detuning{0.0, 18.0, -14.0, 16.0};
    for (std::size_t i = 0; i < 4; ++i) {
        const auto &l = map.labels[i];
        CHECK(l.detuning == doctest::Approx(expected_detuning[i]));
        CHECK(l.predicted_ceiling == doctest::Approx(1.0 / (1.0 + l.detuning * l.detuning)));
        CHECK(l.observed_max == doctest::Approx(l.predicted_ceiling).epsilon(1e-3));
    }
}

TEST_CASE("detuned drive caps the resonant transfer") {
    auto s = odd3();
    s.nu = -11.0;
    const auto map = selectivity_map(s);
    CHECK(map.resonant.empty());
    CHECK(map.labels[0].predicted_ceiling == doctest::Approx(0.5));
    CHECK(map.labels[0].observed_max == doctest::Approx(0.5).epsilon(1e-3));
    const auto r = run_cooling(s);
    CHECK(!r.resonance_as_intended);
}

TEST_CASE("even-RWA cooling is selective") {
    CoolingScenario s;
    s.n = 4;
    s.mode = CoolingMode::even_rwa;
    s.omega = {50, 7, 6, 5};
    s.gamma = 1.0;
    s.nu = resonant_nu(4, s.omega);
    s.weights = {0.4, 0.1, 0.1, 0.1, 0.1, 0.1, 0.05, 0.05};
    const auto r = run_cooling(s);
    CHECK(r.resonance_as_intended);
    CHECK(r.success_probability == doctest::Approx(0.4).epsilon(1e-3));
    CHECK(r.conditional_fidelity > 0.999);
    const auto map = selectivity_map(s);
    for (const auto &l : map.labels) {
        CHECK(l.observed_max == doctest::Approx(l.predicted_ceiling).epsilon(1e-2));
    }
}
