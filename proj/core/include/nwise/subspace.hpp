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

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "nwise/basis.hpp"
#include "nwise/model.hpp"
#include "nwise/transform.hpp"

namespace nwise {

using Spinor = Eigen::Vector2cd;
using Matrix2 = Eigen::Matrix2cd;

/// Eigenvalues eps_k = +-1 of the transformed-frame Z_k, k = 2..n. Identifies
/// one of the 2^(n-1) invariant two-dimensional subspaces.
///
/// The label index counts in binary with eps_2 as the most significant bit
/// and +1 <-> 0, so it coincides with the low n-1 bits of a transformed-frame
/// basis index.
class SubspaceLabel {
  public:
    /// eps holds eps_2..eps_n; every entry must be +1 or -1.
    explicit SubspaceLabel(std::vector<int> eps);
    static SubspaceLabel from_index(int n, BasisIndex index);
    static SubspaceLabel all_plus(int n);

    int spins() const { return static_cast<int>(eps_.size()) + 1; }
    /// eps of spin k, 2 <= k <= n.
    int eps(int spin) const;
    const std::vector<int> &values() const { return eps_; }
    BasisIndex index() const;

    /// Product of eps over odd spins 3, 5, ... <= n.
    int odd_product() const;
    /// Product of eps over even spins 2, 4, ... <= n.
    int even_product() const;

    std::string str() const;

    friend bool operator==(const SubspaceLabel &, const SubspaceLabel &) = default;

  private:
    std::vector<int> eps_;
};

/// H_eff = longitudinal Z + transverse_x X + transverse_y Y + offset 1.
struct EffectiveHamiltonian {
    double longitudinal = 0.0;
    double transverse_x = 0.0;
    double transverse_y = 0.0;
    double offset = 0.0;

    Matrix2 matrix() const;
    /// sqrt(longitudinal^2 + transverse_x^2 + transverse_y^2)
    double field_magnitude() const;
};

/// Two-level Hamiltonian governing one invariant subspace.
///
/// Longitudinal part: omega_1 + sum_{k>=2} omega_k eps_2...eps_k. For odd n the
/// y coupling enters as (-1)^((n-1)/2) gamma_y P_odd sigma_y and the z coupling
/// adds gamma_z P_odd to the longitudinal field; for even n the y coupling
/// adds (-1)^(n/2) gamma_y P_even to the x field and the z coupling becomes the
/// scalar offset gamma_z P_even.
EffectiveHamiltonian effective_field(const SubspaceLabel &label,
                                     const ScheduleSample &sample);
EffectiveHamiltonian effective_field(const SubspaceLabel &label,
                                     const FieldSchedule &fields,
                                     const CouplingSchedule &couplings, double t);

/// All 2^(n-1) labels in index order.
std::vector<SubspaceLabel> enumerate_labels(int n);

/// Original-frame basis indices U|+,label> and U|-,label>. Under the forward
/// chain the second is the bitwise complement of the first.
struct BasisPair {
    BasisIndex first = 0;
    BasisIndex second = 0;
    friend bool operator==(const BasisPair &, const BasisPair &) = default;
};

BasisPair subspace_basis_pair(const SubspaceLabel &label, const ChainUnitary &chain);
BasisPair subspace_basis_pair(const SubspaceLabel &label);

/// U (chi tensor |eps_2 ... eps_n>) as a full n-spin state. Throws UsageError
/// when chi is not normalized within 1e-12.
StateVector embed(const SubspaceLabel &label, const Spinor &chi,
                  const ChainUnitary &chain);
StateVector embed(const SubspaceLabel &label, const Spinor &chi);

struct Eigenpair {
    double energy = 0.0;
    SubspaceLabel label;
    BasisPair support;
    Spinor amplitudes; // on support.first, support.second

    StateVector to_state(int n) const;
};

/// Eigenpairs of a two-level Hamiltonian, lower energy first. A vanishing
/// field returns (1,0) and (0,1).
std::array<std::pair<double, Spinor>, 2> diagonalize(const EffectiveHamiltonian &h);

/// All 2^n eigenpairs of H(t), assembled label by label (labels in index
/// order, lower energy first within a label).
std::vector<Eigenpair> static_spectrum(const ScenarioConfig &cfg, double t);

} // namespace nwise
