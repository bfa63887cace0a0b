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

// Independent reference constructions for the tests: explicit Kronecker
// products of 2x2 Pauli matrices and matrix exponentials through a Hermitian
// eigendecomposition.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "nwise/model.hpp"

namespace nwise::testing {

inline Eigen::Matrix2cd sigma(char c) {
    using C = std::complex<double>;
    Eigen::Matrix2cd m;
    switch (c) {
    case 'X':
        m << 0, 1, 1, 0;
        break;
    case 'Y':
        m << 0, C(0, -1), C(0, 1), 0;
        break;
    case 'Z':
        m << 1, 0, 0, -1;
        break;
    default:
        m.setIdentity();
    }
    return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// letters[0] acts on spin 1 (most significant).
inline Eigen::MatrixXcd kron_string(const std::string &letters) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (char c : letters) {
        out = kron(out, sigma(c));
    }
    return out;
}

inline Eigen::MatrixXcd hand_hamiltonian(const std::vector<double> &omega, double gx,
                                         double gy, double gz) {
    const int n = static_cast<int>(omega.size());
    const auto dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 0; k < n; ++k) {
        std::string s(static_cast<std::size_t>(n), 'I');
        s[static_cast<std::size_t>(k)] = 'Z';
        h += omega[static_cast<std::size_t>(k)] * kron_string(s);
    }
    h += gx * kron_string(std::string(static_cast<std::size_t>(n), 'X'));
    h += gy * kron_string(std::string(static_cast<std::size_t>(n), 'Y'));
    h += gz * kron_string(std::string(static_cast<std::size_t>(n), 'Z'));
    return h;
}

/// exp(-i h t) for Hermitian h.
inline Eigen::MatrixXcd hermitian_propagator(const Eigen::MatrixXcd &h, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) {
        phases(i) = std::polar(1.0, -es.eigenvalues()(i) * t);
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline ScenarioConfig constant_config(const std::vector<double> &omega, double gx, double gy,
                                      double gz, double t1 = 1.0, int steps = 1) {
    ScenarioConfig cfg;
    cfg.n = static_cast<int>(omega.size());
    for (double w : omega) {
        cfg.fields.omega.emplace_back(ConstantDriver{w});
    }
    cfg.couplings.x = ConstantDriver{gx};
    cfg.couplings.y = ConstantDriver{gy};
    cfg.couplings.z = ConstantDriver{gz};
    cfg.time = TimeGrid{0.0, t1, steps};
    return cfg;
}

inline double max_abs(const Eigen::MatrixXcd &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

} // namespace nwise::testing
