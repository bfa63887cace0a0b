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

#include "nwise/subspace.hpp"

#include <cmath>

#include "nwise/errors.hpp"

namespace nwise {

SubspaceLabel::SubspaceLabel(std::vector<int> eps) : eps_(std::move(eps)) {
    if (eps_.empty()) {
        throw UsageError("subspace label needs n >= 2");
    }
    for (int e : eps_) {
        if (e != 1 && e != -1) {
            throw UsageError("subspace label entries must be +1 or -1");
        }
    }
}

SubspaceLabel SubspaceLabel::from_index(int n, BasisIndex index) {
    if (n < 2 || n > kMaxSpins) {
        throw UsageError("subspace label needs 2 <= n <= " + std::to_string(kMaxSpins));
    }
    if (index >= dimension(n - 1)) {
        throw UsageError("subspace label index out of range");
    }
    std::vector<int> eps(static_cast<std::size_t>(n - 1));
    for (int k = 2; k <= n; ++k) {
        eps[static_cast<std::size_t>(k - 2)] = spin_sign(index, k - 1, n - 1);
    }
    return SubspaceLabel(std::move(eps));
}

SubspaceLabel SubspaceLabel::all_plus(int n) { return from_index(n, 0); }

int SubspaceLabel::eps(int spin) const {
    if (spin < 2 || spin > spins()) {
        throw UsageError("label spin index must be in 2..n");
    }
    return eps_[static_cast<std::size_t>(spin - 2)];
}

BasisIndex SubspaceLabel::index() const {
    BasisIndex idx = 0;
    for (int e : eps_) {
        idx = (idx << 1) | (e == 1 ? 0U : 1U);
    }
    return idx;
}

int SubspaceLabel::odd_product() const {
    int p = 1;
    for (int k = 3; k <= spins(); k += 2) {
        p *= eps(k);
    }
    return p;
}

int SubspaceLabel::even_product() const {
    int p = 1;
    for (int k = 2; k <= spins(); k += 2) {
        p *= eps(k);
    }
    return p;
}

std::string SubspaceLabel::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < eps_.size(); ++i) {
        if (i > 0) {
            s += ',';
        }
        s += eps_[i] == 1 ? '+' : '-';
    }
    return s + ")";
}

Matrix2 EffectiveHamiltonian::matrix() const {
    Matrix2 m;
    m << Complex(offset + longitudinal, 0), Complex(transverse_x, -transverse_y),
        Complex(transverse_x, transverse_y), Complex(offset - longitudinal, 0);
    return m;
}

double EffectiveHamiltonian::field_magnitude() const {
    return std::sqrt(longitudinal * longitudinal + transverse_x * transverse_x +
                     transverse_y * transverse_y);
}

EffectiveHamiltonian effective_field(const SubspaceLabel &label,
                                     const ScheduleSample &sample) {
    const int n = label.spins();
    if (sample.omega.size() != static_cast<std::size_t>(n)) {
        throw UsageError("schedule sample has " + std::to_string(sample.omega.size()) +
                         " fields, label expects " + std::to_string(n));
    }
    EffectiveHamiltonian h;
    double longitudinal = sample.omega[0];
    int cumulative = 1;
    for (int k = 2; k <= n; ++k) {
        cumulative *= label.eps(k);
        longitudinal += sample.omega[static_cast<std::size_t>(k - 1)] * cumulative;
    }
    if (n % 2 == 1) {
        const int p_odd = label.odd_product();
        const double sign = ((n - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
        h.transverse_x = sample.gamma_x;
        h.transverse_y = sign * sample.gamma_y * p_odd;
        h.longitudinal = longitudinal + sample.gamma_z * p_odd;
        h.offset = 0.0;
    } else {
        const int p_even = label.even_product();
        const double sign = (n / 2) % 2 == 0 ? 1.0 : -1.0;
        h.transverse_x = sample.gamma_x + sign * sample.gamma_y * p_even;
        h.transverse_y = 0.0;
        h.longitudinal = longitudinal;
        h.offset = sample.gamma_z * p_even;
    }
    return h;
}

EffectiveHamiltonian effective_field(const SubspaceLabel &label,
                                     const FieldSchedule &fields,
                                     const CouplingSchedule &couplings, double t) {
    return effective_field(label, sample_schedules(fields, couplings, t));
}

std::vector<SubspaceLabel> enumerate_labels(int n) {
    if (n < 2 || n > kMaxSpins) {
        throw UsageError("enumerate_labels needs 2 <= n <= " + std::to_string(kMaxSpins));
    }
    const BasisIndex count = dimension(n - 1);
    std::vector<SubspaceLabel> labels;
    labels.reserve(count);
    for (BasisIndex i = 0; i < count; ++i) {
        labels.push_back(SubspaceLabel::from_index(n, i));
    }
    return labels;
}

BasisPair subspace_basis_pair(const SubspaceLabel &label, const ChainUnitary &chain) {
    const int n = label.spins();
    if (chain.spins() != n) {
        throw UsageError("chain and label spin counts differ");
    }
    const BasisIndex low = label.index();
    return {chain.permute_index(low), chain.permute_index(low | spin_mask(1, n))};
}

BasisPair subspace_basis_pair(const SubspaceLabel &label) {
    return subspace_basis_pair(label, *shared_chain(label.spins()));
}

StateVector embed(const SubspaceLabel &label, const Spinor &chi,
                  const ChainUnitary &chain) {
    if (std::abs(chi.squaredNorm() - 1.0) > 1e-12) {
        throw UsageError("embed: two-level amplitudes are not normalized");
    }
    const int n = label.spins();
    if (n > kDenseCap + 8) {
        throw CapacityError("embed: full state vector too large");
    }
    const BasisPair pair = subspace_basis_pair(label, chain);
    StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(dimension(n)));
    psi(static_cast<Eigen::Index>(pair.first)) = chi(0);
    psi(static_cast<Eigen::Index>(pair.second)) = chi(1);
    return psi;
}

StateVector embed(const SubspaceLabel &label, const Spinor &chi) {
    return embed(label, chi, *shared_chain(label.spins()));
}

StateVector Eigenpair::to_state(int n) const {
    StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(dimension(n)));
    psi(static_cast<Eigen::Index>(support.first)) = amplitudes(0);
    psi(static_cast<Eigen::Index>(support.second)) = amplitudes(1);
    return psi;
}

std::array<std::pair<double, Spinor>, 2> diagonalize(const EffectiveHamiltonian &h) {
    const double r = h.field_magnitude();
    const double c = h.offset;
    if (r == 0.0) {
        return {{{c, Spinor(1, 0)}, {c, Spinor(0, 1)}}};
    }
    // Upper eigenvector of [[L, x - iy], [x + iy, -L]]; pick the form that
    // avoids cancellation.
    Spinor up;
    if (h.longitudinal >= 0.0) {
        up << Complex(r + h.longitudinal, 0), Complex(h.transverse_x, h.transverse_y);
    } else {
        up << Complex(h.transverse_x, -h.transverse_y), Complex(r - h.longitudinal, 0);
    }
    up.normalize();
    Spinor down;
    down << -std::conj(up(1)), std::conj(up(0));
    return {{{c - r, down}, {c + r, up}}};
}

std::vector<Eigenpair> static_spectrum(const ScenarioConfig &cfg, double t) {
    cfg.validate();
    const ScheduleSample sample = sample_schedules(cfg.fields, cfg.couplings, t);
    const auto chain = shared_chain(cfg.n);
    std::vector<Eigenpair> out;
    out.reserve(dimension(cfg.n));
    for (const auto &label : enumerate_labels(cfg.n)) {
        const BasisPair support = subspace_basis_pair(label, *chain);
        for (const auto &[energy, vec] : diagonalize(effective_field(label, sample))) {
            out.push_back({energy, label, support, vec});
        }
    }
    return out;
}

} // namespace nwise
