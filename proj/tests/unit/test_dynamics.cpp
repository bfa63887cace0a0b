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
#include <vector>

#include "doctest.h"

#include "helpers.hpp"
#include "nwise/dynamics.hpp"
#include "nwise/errors.hpp"
#include "nwise/sampling.hpp"

using namespace nwise;
using nwise::testing::constant_config;
using nwise::testing::hand_hamiltonian;
using nwise::testing::hermitian_propagator;
using nwise::testing::max_abs;

namespace {

constexpr double kPi = std::numbers::pi;

const TwoLevelState kUp(1.0, 0.0);

double final_lower(const TwoLevelTrajectory &tr) { return std::norm(tr.states.back()(1)); }

TwoLevelHamiltonian rotating(double omega, double g, double nu) {
    return [=](double t) {
        return EffectiveHamiltonian{omega / 2, g / 2 * std::cos(nu * t),
                                    g / 2 * std::sin(nu * t), 0.0};
    };
}

} // namespace

TEST_CASE("two-level exponential matches the eigendecomposition") {
    ScenarioSampler s(31);
    for (int i = 0; i < 20; ++i) {
        EffectiveHamiltonian h{s.uniform(-3, 3), s.uniform(-3, 3), s.uniform(-3, 3),
                               s.uniform(-1, 1)};
        const double dt = s.uniform(0.01, 2.0);
        CHECK(max_abs(step_exponential(h, dt) - hermitian_propagator(h.matrix(), dt)) < 1e-13);
    }
    CHECK(max_abs(step_exponential(EffectiveHamiltonian{}, 1.0) - Matrix2::Identity()) == 0.0);
}

TEST_CASE("rotating field follows the Rabi formula") {
    const double g = 0.8;
    const double nu = 5.0;
    for (double ratio : {0.0, 1.0, 3.0}) {
        const double delta = ratio * g;
        const double t1 = 2 * kPi / std::sqrt(g * g + delta * delta) * 1.3;
        PropagatorOptions opts;
        opts.steps_per_period = 1024;
        const auto tr = integrate_two_level(rotating(nu + delta, g, nu), TimeGrid{0, t1, 40},
                                            kUp, nu + delta + g, opts);
        for (std::size_t i = 0; i < tr.times.size(); ++i) {
            CHECK(std::abs(std::norm(tr.states[i](1)) - rabi_probability(g, delta, tr.times[i])) <
                  1e-5);
        }
    }
    CHECK(rabi_probability(1.0, 0.0, kPi) == doctest::Approx(1.0));
    CHECK(rabi_probability(1.0, 1.0, 0.3) < 0.5);
}

TEST_CASE("Landau-Zener crossing") {
    const double alpha = kPi / std::log(2.0);
    const double g = 1.0;
    const auto h = [=](double t) { return EffectiveHamiltonian{alpha * t, g, 0.0, 0.0}; };
    PropagatorOptions opts;
    opts.steps_per_period = 64;
    const auto tr = integrate_two_level(h, TimeGrid{-40, 40, 10}, kUp, alpha * 40, opts);
    // Diabatic survival exp(-pi g^2 / alpha) = 1/2.
    CHECK(std::abs(std::norm(tr.states.back()(0)) - 0.5) < 0.01);
}

TEST_CASE("resonant sech pulse transfers sin^2 of the area") {
    const double w = 0.7;
    for (double a : {0.25, 0.5, 0.9}) {
        const auto h = [=](double t) {
            return EffectiveHamiltonian{0.0, a / std::cosh(t / w), 0.0, 0.0};
        };
        const auto tr =
            integrate_two_level(h, TimeGrid{-30 * w, 30 * w, 1}, kUp, a, PropagatorOptions{});
        const double expected = std::pow(std::sin(a * kPi * w), 2);
        CHECK(std::abs(final_lower(tr) - expected) < 1e-6);
    }
}

TEST_CASE("integrators conserve the norm and agree") {
    const auto h = rotating(2.0, 1.5, 1.7);
    PropagatorOptions mid;
    mid.steps_per_period = 4096;
    PropagatorOptions rk = mid;
    rk.method = IntegrationMethod::rk4;
    const TimeGrid grid{0, 12, 30};
    const auto a = integrate_two_level(h, grid, kUp, 4.0, mid);
    const auto b = integrate_two_level(h, grid, kUp, 4.0, rk);
    CHECK(a.max_norm_drift < 1e-10);
    CHECK(b.max_norm_drift < 1e-8);
    CHECK(a.steps == b.steps);
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        CHECK((a.states[i] - b.states[i]).norm() < 1e-6);
    }
}

TEST_CASE("midpoint exponential converges at second order") {
    const auto h = rotating(2.0, 1.5, 1.7);
    const TimeGrid grid{0, 6, 1};
    PropagatorOptions ref;
    ref.steps_per_period = 4096;
    const auto exact = integrate_two_level(h, grid, kUp, 4.0, ref).states.back();
    std::vector<double> errors;
    for (int spp : {16, 32, 64}) {
        PropagatorOptions o;
        o.steps_per_period = spp;
        errors.push_back((integrate_two_level(h, grid, kUp, 4.0, o).states.back() - exact).norm());
    }
    CHECK(errors[0] / errors[1] > 3.5);
    CHECK(errors[1] / errors[2] > 3.5);
    CHECK(errors[0] / errors[1] < 4.5);
}

TEST_CASE("step counts follow the requested density") {
    CHECK(substeps_for_interval(2 * kPi, 1.0, 256) == 256);
    CHECK(substeps_for_interval(1e-9, 1.0, 256) == 1);
    CHECK(substeps_for_interval(1.0, 0.0, 256) == 1);
    PropagatorOptions bad;
    bad.steps_per_period = 0;
    CHECK_THROWS_AS(bad.validate(), UsageError);
}

TEST_CASE("decomposed propagator is exact for constant Hamiltonians") {
    ScenarioSampler s(32);
    for (int n = 2; n <= 7; ++n) {
        std::vector<double> omega;
        for (int k = 0; k < n; ++k) {
            omega.push_back(s.uniform(-2, 2));
        }
        const double gx = s.uniform(-2, 2);
        const double gy = s.uniform(-2, 2);
        const double gz = s.uniform(-2, 2);
        const auto cfg = constant_config(omega, gx, gy, gz, 1.7);
        const auto v = assemble_propagator(cfg, 0.0, 1.7);
        const auto exact = hermitian_propagator(hand_hamiltonian(omega, gx, gy, gz), 1.7);
        CHECK(max_abs(v.to_dense() - exact) < 1e-10);
        CHECK(v.max_unitarity_error() < 1e-12);
        const auto grid = propagate_grid(constant_config(omega, gx, gy, gz, 1.7, 5));
        REQUIRE(grid.size() == 6);
        CHECK(max_abs(grid[0].to_dense() - DenseOperator::Identity(exact.rows(), exact.cols())) ==
              0.0);
        CHECK(max_abs(grid[5].to_dense() - exact) < 1e-10);
    }
}

TEST_CASE("propagators compose in application order") {
    ScenarioSampler s(33);
    const auto cfg = s.dynamic_scenario(4, 0);
    const double tm = 0.5 * (cfg.time.t0 + cfg.time.t1);
    const auto first = assemble_propagator(cfg, cfg.time.t0, tm);
    const auto second = assemble_propagator(cfg, tm, cfg.time.t1);
    const auto whole = first.then(second);
    CHECK(max_abs(whole.to_dense() - second.to_dense() * first.to_dense()) < 1e-12);
    const StateVector psi = initial_state_vector(cfg);
    CHECK((whole.apply(psi) - second.apply(first.apply(psi))).norm() < 1e-12);
    CHECK(max_abs(first.apply_left(second.to_dense()) - first.to_dense() * second.to_dense()) <
          1e-12);
}

TEST_CASE("propagator rows have two nonzero entries") {
    ScenarioSampler s(34);
    const auto cfg = s.dynamic_scenario(5, 1);
    const auto v = assemble_propagator(cfg, cfg.time.t0, cfg.time.t1).to_dense();
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
        int nonzero = 0;
        for (Eigen::Index c = 0; c < v.cols(); ++c) {
            nonzero += std::abs(v(r, c)) > 0.0 ? 1 : 0;
        }
        CHECK(nonzero <= 2);
    }
}

TEST_CASE("rotation sense and detuning") {
    const auto plus3 = SubspaceLabel::all_plus(3);
    const auto plus5 = SubspaceLabel::all_plus(5);
    CHECK(rotation_sense(plus3) == -1);
    CHECK(rotation_sense(plus5) == 1);
    CHECK(rotation_sense(SubspaceLabel({1, -1})) == 1);
    FieldSchedule f;
    for (double w : {5.0, 4.0, 3.0}) {
        f.omega.emplace_back(ConstantDriver{w});
    }
    CHECK(detuning(plus3, f, -12.0, 3) == doctest::Approx(0.0));
    // eps_2 = -1: omega_1 - omega_2 - omega_3, sense -1.
    CHECK(detuning(SubspaceLabel({-1, 1}), f, -12.0, 3) == doctest::Approx(5.0 - 4.0 - 3.0 - 12.0));
    CHECK_THROWS_AS(detuning(SubspaceLabel({1}), f, 1.0, 2), UsageError);
    FieldSchedule moving = f;
    moving.omega[0] = CosineDriver{1.0, 1.0, 0.0};
    CHECK_THROWS_AS(detuning(plus3, moving, 1.0, 3), UsageError);
}

TEST_CASE("density matrices are validated") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = 0.5;
    m(3, 3) = 0.5;
    CHECK_NOTHROW(DensityMatrix{m});
    Eigen::MatrixXcd bad_trace = m;
    bad_trace(0, 0) = 0.6;
    CHECK_THROWS_AS(DensityMatrix{bad_trace}, NumericalError);
    Eigen::MatrixXcd non_hermitian = m;
    non_hermitian(0, 3) = 0.1;
    CHECK_THROWS_AS(DensityMatrix{non_hermitian}, NumericalError);
    Eigen::MatrixXcd negative = Eigen::MatrixXcd::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix{negative}, NumericalError);
    CHECK_THROWS_AS(DensityMatrix{Eigen::MatrixXcd::Identity(3, 3) / 3.0}, UsageError);
    const std::vector<double> w{0.1, 0.2, 0.3, 0.4};
    const auto d = DensityMatrix::diagonal(w);
    CHECK(d.spins() == 2);
    CHECK(d.population(3) == doctest::Approx(0.4));
    CHECK(d.trace() == doctest::Approx(1.0));
    CHECK(d.min_eigenvalue() == doctest::Approx(0.1));
}

TEST_CASE("measurement projects and renormalizes") {
    StateVector ghz = StateVector::Zero(8);
    ghz(0) = ghz(7) = 1.0 / std::sqrt(2.0);
    const auto rho = DensityMatrix::pure(ghz);
    const auto up = measure_and_project(rho, 1, 1);
    REQUIRE(up.possible());
    CHECK(up.probability == doctest::Approx(0.5));
    CHECK(up.state->population(0) == doctest::Approx(1.0));
    const auto down = measure_and_project(rho, 2, -1);
    CHECK(down.state->population(7) == doctest::Approx(1.0));
    StateVector plus = StateVector::Zero(8);
    plus(0) = 1.0;
    const auto none = measure_and_project(DensityMatrix::pure(plus), 3, -1);
    CHECK(!none.possible());
    CHECK(none.probability == 0.0);
    CHECK_THROWS_AS(measure_and_project(rho, 1, 0), UsageError);
    CHECK_THROWS_AS(measure_and_project(rho, 4, 1), UsageError);
}

TEST_CASE("density evolution matches conjugation") {
    ScenarioSampler s(35);
    const auto cfg = s.dynamic_scenario(3, 2);
    const auto v = assemble_propagator(cfg, cfg.time.t0, cfg.time.t1);
    const std::vector<double> w{0.3, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1};
    const auto rho = DensityMatrix::diagonal(w);
    const auto out = evolve_density(rho, v);
    const auto vd = v.to_dense();
    CHECK(max_abs(out.matrix() - vd * rho.matrix() * vd.adjoint()) < 1e-12);
}
