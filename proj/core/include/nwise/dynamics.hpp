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

// Time evolution in the decomposed picture. Every invariant subspace is an
// independent two-level problem; the full propagator is
//
//   V(t1, t0) = U (direct sum over labels of v_label(t1, t0)) U^dag
//
// and therefore has exactly two nonzero entries per row.

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "nwise/basis.hpp"
#include "nwise/model.hpp"
#include "nwise/subspace.hpp"
#include "nwise/transform.hpp"

namespace nwise {

enum class IntegrationMethod { rk4, midpoint_exponential };

const char *to_string(IntegrationMethod method);

struct PropagatorOptions {
    IntegrationMethod method = IntegrationMethod::midpoint_exponential;
    /// Integration steps per 2*pi / characteristic_frequency(cfg).
    int steps_per_period = 256;
    /// Largest tolerated deviation of a two-level norm (or block unitarity).
    double norm_tolerance = 1e-8;

    void validate() const;
};

/// Number of integration steps for an interval of length dt.
int substeps_for_interval(double dt, double omega_max, int steps_per_period);

using TwoLevelState = Spinor;

struct TwoLevelTrajectory {
    std::vector<double> times;
    std::vector<TwoLevelState> states;
    double max_norm_drift = 0.0;
    long long steps = 0;
};

/// exp(-i h dt), exact for the 2x2 case.
Matrix2 step_exponential(const EffectiveHamiltonian &h, double dt);

using TwoLevelHamiltonian = std::function<EffectiveHamiltonian(double)>;

/// Solves i d/dt psi = h(t) psi on the grid. omega_max sets the step density.
/// Throws NumericalError when the norm drifts by more than the tolerance.
TwoLevelTrajectory integrate_two_level(const TwoLevelHamiltonian &h,
                                       const TimeGrid &grid, const TwoLevelState &psi0,
                                       double omega_max, const PropagatorOptions &opts);

/// Two-level dynamics of one subspace of cfg on cfg.time.
TwoLevelTrajectory propagate_two_level(const SubspaceLabel &label,
                                       const ScenarioConfig &cfg,
                                       const TwoLevelState &psi0,
                                       const PropagatorOptions &opts = {});

/// gamma^2 / (gamma^2 + delta^2) * sin^2(omega_R t / 2),
/// omega_R = sqrt(delta^2 + gamma^2).
///
/// Exact transition probability for a spin whose level splitting is delta
/// away from the frequency of a circularly rotating transverse field with
/// Rabi frequency gamma.
double rabi_probability(double gamma, double delta, double t);

/// Sense (+1 or -1) in which the effective transverse field of an odd-n label
/// rotates when gamma_x = g cos(nu t) and gamma_y = g sin(nu t):
/// (-1)^((n-1)/2) times the product of eps over odd spins.
int rotation_sense(const SubspaceLabel &label);

/// Detuning of a subspace from a rotating coupling of angular frequency nu,
/// with the constant fields read as level splittings:
///
///   Delta = omega_1 + sum_{k>=2} omega_k eps_2...eps_k - rotation_sense * nu
///
/// Throws UsageError for even n or non-constant fields.
double detuning(const SubspaceLabel &label, const FieldSchedule &fields, double nu, int n);

/// Full n-spin propagator stored as one 2x2 block per label plus the chain.
class SparsePropagator {
  public:
    SparsePropagator(std::shared_ptr<const ChainUnitary> chain, std::vector<Matrix2> blocks);
    static SparsePropagator identity(int n);

    int spins() const { return chain_->spins(); }
    const std::vector<Matrix2> &blocks() const { return blocks_; }
    const Matrix2 &block(const SubspaceLabel &label) const;
    const ChainUnitary &chain() const { return *chain_; }

    StateVector apply(const StateVector &psi) const;
    /// V * m, column by column.
    Eigen::MatrixXcd apply_left(const Eigen::MatrixXcd &m) const;
    /// Composition: (*this) first, then later.
    SparsePropagator then(const SparsePropagator &later) const;
    /// Same chain and basis pairs, new blocks.
    SparsePropagator with_blocks(std::vector<Matrix2> blocks) const;

    /// Dense V for n <= kDenseCap.
    DenseOperator to_dense() const;

    double max_unitarity_error() const;

  private:
    SparsePropagator(std::shared_ptr<const ChainUnitary> chain,
                     std::shared_ptr<const std::vector<BasisPair>> pairs,
                     std::vector<Matrix2> blocks);

    std::shared_ptr<const ChainUnitary> chain_;
    std::shared_ptr<const std::vector<BasisPair>> pairs_;
    std::vector<Matrix2> blocks_;
};

/// V(t1, t0) for cfg. Throws NumericalError naming the label on failure.
SparsePropagator assemble_propagator(const ScenarioConfig &cfg, double t0, double t1,
                                     const PropagatorOptions &opts = {});

/// Cumulative propagators V(t_i, t0) for every point of cfg.time (element 0 is
/// the identity).
std::vector<SparsePropagator> propagate_grid(const ScenarioConfig &cfg,
                                             const PropagatorOptions &opts = {});

/// Total number of integration steps propagate_grid takes per label.
long long grid_step_count(const ScenarioConfig &cfg, const PropagatorOptions &opts);

/// Hermitian, positive semidefinite, unit-trace matrix on n <= kDensityCap
/// spins.
class DensityMatrix {
  public:
    static constexpr double kTolerance = 1e-10;

    /// Validates; throws NumericalError when an invariant is violated beyond
    /// tolerance and UsageError for a non power-of-two dimension.
    explicit DensityMatrix(Eigen::MatrixXcd m, double tolerance = kTolerance);

    static DensityMatrix pure(const StateVector &psi);
    static DensityMatrix diagonal(std::span<const double> weights);

    const Eigen::MatrixXcd &matrix() const { return m_; }
    int spins() const { return n_; }
    double trace() const;
    double population(BasisIndex b) const;
    double min_eigenvalue() const;

  private:
    Eigen::MatrixXcd m_;
    int n_ = 0;
};

/// V rho V^dag.
DensityMatrix evolve_density(const DensityMatrix &rho, const SparsePropagator &prop);

struct MeasurementOutcome {
    double probability = 0.0;
    /// Empty when the outcome is impossible (probability < 1e-14).
    std::optional<DensityMatrix> state;

    bool possible() const { return state.has_value(); }
};

/// Projective sigma_z measurement of one spin. outcome is +1 or -1.
MeasurementOutcome measure_and_project(const DensityMatrix &rho, int spin, int outcome);

} // namespace nwise
