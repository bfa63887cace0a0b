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

// Brute-force dense reference. dense_evolve integrates the full 2^n dimensional
// Schrodinger equation with the Hamiltonian assembled from Pauli strings; it
// never touches labels, effective fields or the chain permutation.

#include <vector>

#include <Eigen/Core>

#include "nwise/basis.hpp"
#include "nwise/dynamics.hpp"
#include "nwise/model.hpp"
#include "nwise/pauli.hpp"
#include "nwise/transform.hpp"

namespace nwise::oracle {

/// compare() runs the oracle at this multiple of the engine step density.
inline constexpr int kRefinement = 4;
/// Step densities below this are flagged as sub-resolution by compare().
inline constexpr int kMinResolvedStepsPerPeriod = 32;

struct DenseTrajectory {
    std::vector<double> times;
    /// Filled for pure-state runs.
    std::vector<StateVector> states;
    /// Filled for density-matrix runs.
    std::vector<Eigen::MatrixXcd> densities;
    double max_norm_drift = 0.0;
    long long steps = 0;
};

DenseOperator dense_hamiltonian(const ScenarioConfig &cfg, double t);

/// exp(-i h dt) psi by a Taylor series summed to machine precision.
StateVector exponential_step(const DenseOperator &h, double dt, const StateVector &psi);

/// Midpoint-exponential dense stepping on cfg.time. Throws CapacityError for
/// n > kDenseCap.
DenseTrajectory dense_evolve(const ScenarioConfig &cfg, const StateVector &psi0,
                             const PropagatorOptions &opts = {});

/// Density-matrix variant (n <= kOracleDensityCap): each eigenvector of rho0
/// with nonzero weight is evolved separately.
DenseTrajectory dense_evolve(const ScenarioConfig &cfg, const DensityMatrix &rho0,
                             const PropagatorOptions &opts = {});

/// U^dag H(t) U with U built densely from the pair unitaries.
DenseOperator transformed_hamiltonian(const ScenarioConfig &cfg, double t,
                                      ChainOrdering ordering = ChainOrdering::forward);

struct BlockStructureReport {
    int n = 0;
    double t = 0.0;
    ChainOrdering ordering = ChainOrdering::forward;
    /// max |[U^dag H U, Z_k]| for k = 2..n (element k-2).
    std::vector<double> commutator_residuals;
    double max_commutator_residual = 0.0;
    /// Largest element coupling two different subspaces.
    double max_off_block = 0.0;
    /// Largest entrywise deviation of a 2x2 block from effective_field().
    double max_block_mismatch = 0.0;

    double worst() const;
    bool passes(double tolerance) const { return worst() < tolerance; }
};

BlockStructureReport verify_block_structure(const ScenarioConfig &cfg, double t,
                                            ChainOrdering ordering = ChainOrdering::forward);

struct CompareReport {
    std::vector<double> times;
    /// 1 - fidelity at each grid point (worst component for mixtures).
    std::vector<double> gaps;
    double max_gap = 0.0;
    int engine_steps_per_period = 0;
    int oracle_steps_per_period = 0;
    long long engine_steps = 0;
    long long oracle_steps = 0;
    bool sub_resolution = false;
};

/// Runs the decomposed engine at opts and the dense oracle at kRefinement
/// times the step density on the same output grid, from cfg.initial.
CompareReport compare(const ScenarioConfig &cfg, const PropagatorOptions &opts = {});

} // namespace nwise::oracle
