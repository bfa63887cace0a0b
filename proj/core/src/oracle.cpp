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

#include "nwise/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "nwise/errors.hpp"
#include "nwise/subspace.hpp"

namespace nwise::oracle {

namespace {

// A Pauli string acting on basis states: P|b> = coeff * sign(b) |b ^ flip>,
// sign(b) = (-1)^popcount(b & sign_mask).
struct CompiledTerm {
    BasisIndex flip = 0;
    BasisIndex sign_mask = 0;
    Complex coeff;
};

std::vector<CompiledTerm> compile(const OperatorSum &h) {
    const int n = h.sites();
    std::vector<CompiledTerm> out;
    out.reserve(h.terms().size());
    for (const auto &term : h.terms()) {
        CompiledTerm c;
        c.coeff = term.coefficient * term.string.phase();
        for (int k = 1; k <= n; ++k) {
            const BasisIndex m = spin_mask(k, n);
            switch (term.string.at(k)) {
            case PauliLetter::I:
                break;
            case PauliLetter::X:
                c.flip |= m;
                break;
            case PauliLetter::Y:
                c.flip |= m;
                c.sign_mask |= m;
                c.coeff *= Complex(0, 1);
                break;
            case PauliLetter::Z:
                c.sign_mask |= m;
                break;
            }
        }
        out.push_back(c);
    }
    return out;
}

double norm_bound(const std::vector<CompiledTerm> &terms) {
    double s = 0.0;
    for (const auto &t : terms) {
        s += std::abs(t.coeff);
    }
    return s;
}

void apply_terms(const std::vector<CompiledTerm> &terms, const StateVector &in,
                 StateVector &out) {
    out.setZero(in.size());
    const auto dim = static_cast<BasisIndex>(in.size());
    for (const auto &t : terms) {
        for (BasisIndex b = 0; b < dim; ++b) {
            const Complex a = in(static_cast<Eigen::Index>(b));
            if (a == Complex(0, 0)) {
                continue;
            }
            const double s = (std::popcount(b & t.sign_mask) & 1) ? -1.0 : 1.0;
            out(static_cast<Eigen::Index>(b ^ t.flip)) += s * t.coeff * a;
        }
    }
}

// exp(-i H dt) psi with H given as compiled terms.
StateVector taylor_step(const std::vector<CompiledTerm> &terms, double dt,
                        const StateVector &psi) {
    const double bound = norm_bound(terms) * std::abs(dt);
    const int pieces = std::max(1, static_cast<int>(std::ceil(bound)));
    const double h = dt / pieces;
    StateVector cur = psi;
    StateVector term(psi.size());
    StateVector next(psi.size());
    for (int p = 0; p < pieces; ++p) {
        StateVector sum = cur;
        term = cur;
        for (int k = 1; k < 60; ++k) {
            apply_terms(terms, term, next);
            term = next * Complex(0, -h / k);
            sum += term;
            if (term.norm() < 1e-18 * sum.norm()) {
                break;
            }
        }
        cur = sum;
    }
    return cur;
}

int oracle_substeps(double dt, double omega_max, int steps_per_period) {
    const double raw = dt * omega_max * steps_per_period / (2.0 * std::numbers::pi);
    return std::max(1, static_cast<int>(std::ceil(raw - 1e-9)));
}

void check_capacity(int n, int cap, const char *what) {
    if (n > cap) {
        throw CapacityError(std::string(what) + " is limited to n <= " + std::to_string(cap));
    }
}

// Evolves every start vector over the grid; calls sink(i, j, psi) for grid
// point i and start vector j.
template <typename Sink>
long long evolve_many(const ScenarioConfig &cfg, std::vector<StateVector> starts,
                      const PropagatorOptions &opts, double &max_drift, Sink sink) {
    const double omega_max = characteristic_frequency(cfg);
    std::vector<double> norms0;
    for (std::size_t j = 0; j < starts.size(); ++j) {
        norms0.push_back(starts[j].norm());
        sink(0, j, starts[j]);
    }
    long long steps = 0;
    for (int i = 0; i < cfg.time.steps; ++i) {
        const double ta = cfg.time.at(i);
        const double tb = cfg.time.at(i + 1);
        const int m = oracle_substeps(tb - ta, omega_max, opts.steps_per_period);
        const double dt = (tb - ta) / m;
        for (int s = 0; s < m; ++s) {
            const auto terms =
                compile(build_full_hamiltonian(cfg, ta + (s + 0.5) * dt));
            for (auto &psi : starts) {
                psi = taylor_step(terms, dt, psi);
            }
        }
        steps += m;
        for (std::size_t j = 0; j < starts.size(); ++j) {
            const double drift = std::abs(starts[j].norm() - norms0[j]);
            max_drift = std::max(max_drift, drift);
            if (drift > opts.norm_tolerance) {
                throw NumericalError("dense oracle norm drift " + std::to_string(drift) +
                                     " at t=" + std::to_string(tb));
            }
            sink(i + 1, j, starts[j]);
        }
    }
    return steps;
}

double fidelity_gap(const StateVector &a, const StateVector &b) {
    const double na = a.squaredNorm();
    const double nb = b.squaredNorm();
    if (na == 0.0 || nb == 0.0) {
        return 1.0;
    }
    const double f = std::norm(a.dot(b)) / (na * nb);
    return std::max(0.0, 1.0 - f);
}

} // namespace

DenseOperator dense_hamiltonian(const ScenarioConfig &cfg, double t) {
    check_capacity(cfg.n, kDenseCap, "dense Hamiltonian");
    return to_dense(build_full_hamiltonian(cfg, t), cfg.n);
}

StateVector exponential_step(const DenseOperator &h, double dt, const StateVector &psi) {
    if (h.rows() != psi.size() || h.cols() != psi.size()) {
        throw UsageError("exponential_step: dimension mismatch");
    }
    const double bound = h.cwiseAbs().colwise().sum().maxCoeff() * std::abs(dt);
    const int pieces = std::max(1, static_cast<int>(std::ceil(bound)));
    const double step = dt / pieces;
    StateVector cur = psi;
    for (int p = 0; p < pieces; ++p) {
        StateVector sum = cur;
        StateVector term = cur;
        for (int k = 1; k < 60; ++k) {
            term = (h * term) * Complex(0, -step / k);
            sum += term;
            if (term.norm() < 1e-18 * sum.norm()) {
                break;
            }
        }
        cur = sum;
    }
    return cur;
}

DenseTrajectory dense_evolve(const ScenarioConfig &cfg, const StateVector &psi0,
                             const PropagatorOptions &opts) {
    cfg.validate();
    opts.validate();
    check_capacity(cfg.n, kDenseCap, "dense oracle");
    if (psi0.size() != static_cast<Eigen::Index>(dimension(cfg.n))) {
        throw UsageError("dense_evolve: state has wrong dimension");
    }
    DenseTrajectory out;
    out.states.resize(static_cast<std::size_t>(cfg.time.steps) + 1);
    for (int i = 0; i <= cfg.time.steps; ++i) {
        out.times.push_back(cfg.time.at(i));
    }
    out.steps = evolve_many(cfg, {psi0}, opts, out.max_norm_drift,
                            [&](int i, std::size_t, const StateVector &psi) {
                                out.states[static_cast<std::size_t>(i)] = psi;
                            });
    return out;
}

DenseTrajectory dense_evolve(const ScenarioConfig &cfg, const DensityMatrix &rho0,
                             const PropagatorOptions &opts) {
    cfg.validate();
    opts.validate();
    check_capacity(cfg.n, kOracleDensityCap, "dense density oracle");
    if (rho0.spins() != cfg.n) {
        throw UsageError("dense_evolve: density matrix has wrong spin count");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho0.matrix());
    std::vector<StateVector> starts;
    std::vector<double> weights;
    for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
        const double w = es.eigenvalues()(j);
        if (w > 1e-15) {
            starts.emplace_back(es.eigenvectors().col(j));
            weights.push_back(w);
        }
    }
    DenseTrajectory out;
    const auto dim = static_cast<Eigen::Index>(dimension(cfg.n));
    out.densities.assign(static_cast<std::size_t>(cfg.time.steps) + 1,
                         Eigen::MatrixXcd::Zero(dim, dim));
    for (int i = 0; i <= cfg.time.steps; ++i) {
        out.times.push_back(cfg.time.at(i));
    }
    out.steps = evolve_many(cfg, std::move(starts), opts, out.max_norm_drift,
                            [&](int i, std::size_t j, const StateVector &psi) {
                                out.densities[static_cast<std::size_t>(i)] +=
                                    weights[j] * psi * psi.adjoint();
                            });
    return out;
}

namespace {

struct Entry {
    BasisIndex row;
    BasisIndex col;
    Complex value;
};

// Nonzero entries of U^dag H U in the transformed basis.
std::vector<Entry> transformed_entries(const ScenarioConfig &cfg, double t,
                                       const ChainUnitary &chain) {
    const int n = cfg.n;
    std::vector<Entry> out;
    if (n <= ChainUnitary::kEagerDenseCap) {
        const DenseOperator &u = *chain.dense();
        const DenseOperator a = u.adjoint() * dense_hamiltonian(cfg, t) * u;
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            for (Eigen::Index r = 0; r < a.rows(); ++r) {
                if (std::abs(a(r, c)) > 0.0) {
                    out.push_back({static_cast<BasisIndex>(r), static_cast<BasisIndex>(c),
                                   a(r, c)});
                }
            }
        }
        return out;
    }
    const auto terms = compile(build_full_hamiltonian(cfg, t));
    for (BasisIndex c = 0; c < dimension(n); ++c) {
        const BasisIndex b = chain.permute_index(c);
        for (const auto &term : terms) {
            const double s = (std::popcount(b & term.sign_mask) & 1) ? -1.0 : 1.0;
            out.push_back({chain.inverse_index(b ^ term.flip), c, s * term.coeff});
        }
    }
    return out;
}

} // namespace

DenseOperator transformed_hamiltonian(const ScenarioConfig &cfg, double t,
                                      ChainOrdering ordering) {
    cfg.validate();
    check_capacity(cfg.n, kOracleDensityCap + 2, "transformed Hamiltonian");
    const ChainUnitary chain = chain_unitary(cfg.n, ordering);
    const auto dim = static_cast<Eigen::Index>(dimension(cfg.n));
    DenseOperator a = DenseOperator::Zero(dim, dim);
    for (const auto &e : transformed_entries(cfg, t, chain)) {
        a(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) += e.value;
    }
    return a;
}

double BlockStructureReport::worst() const {
    return std::max({max_commutator_residual, max_off_block, max_block_mismatch});
}

BlockStructureReport verify_block_structure(const ScenarioConfig &cfg, double t,
                                            ChainOrdering ordering) {
    cfg.validate();
    check_capacity(cfg.n, kDenseCap, "block-structure check");
    const int n = cfg.n;
    const ChainUnitary chain = chain_unitary(n, ordering);
    BlockStructureReport rep;
    rep.n = n;
    rep.t = t;
    rep.ordering = ordering;
    rep.commutator_residuals.assign(static_cast<std::size_t>(n - 1), 0.0);

    // Merge duplicates (several terms may hit the same entry).
    std::vector<Entry> entries = transformed_entries(cfg, t, chain);
    std::sort(entries.begin(), entries.end(), [](const Entry &a, const Entry &b) {
        return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    std::vector<Entry> merged;
    for (const auto &e : entries) {
        if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
            merged.back().value += e.value;
        } else {
            merged.push_back(e);
        }
    }

    const BasisIndex half = dimension(n - 1);
    const BasisIndex low_mask = half - 1;
    const ScheduleSample sample = sample_schedules(cfg.fields, cfg.couplings, t);
    std::vector<Matrix2> blocks(half, Matrix2::Zero());
    for (const auto &e : merged) {
        const double mag = std::abs(e.value);
        for (int k = 2; k <= n; ++k) {
            if (spin_bit(e.row, k, n) != spin_bit(e.col, k, n)) {
                auto &r = rep.commutator_residuals[static_cast<std::size_t>(k - 2)];
                r = std::max(r, 2.0 * mag);
            }
        }
        if ((e.row & low_mask) != (e.col & low_mask)) {
            rep.max_off_block = std::max(rep.max_off_block, mag);
        } else {
            blocks[e.row & low_mask](static_cast<Eigen::Index>(e.row / half),
                                     static_cast<Eigen::Index>(e.col / half)) += e.value;
        }
    }
    for (BasisIndex l = 0; l < half; ++l) {
        const Matrix2 expected =
            effective_field(SubspaceLabel::from_index(n, l), sample).matrix();
        rep.max_block_mismatch =
            std::max(rep.max_block_mismatch, (blocks[l] - expected).cwiseAbs().maxCoeff());
    }
    for (double r : rep.commutator_residuals) {
        rep.max_commutator_residual = std::max(rep.max_commutator_residual, r);
    }
    return rep;
}

CompareReport compare(const ScenarioConfig &cfg, const PropagatorOptions &opts) {
    cfg.validate();
    opts.validate();
    check_capacity(cfg.n, kDenseCap, "compare");
    PropagatorOptions fine = opts;
    fine.steps_per_period = opts.steps_per_period * kRefinement;

    std::vector<StateVector> starts;
    if (const auto *mix = std::get_if<DiagonalMixtureInit>(&cfg.initial)) {
        const auto dim = static_cast<Eigen::Index>(dimension(cfg.n));
        for (std::size_t b = 0; b < mix->weights.size(); ++b) {
            if (mix->weights[b] > 0.0) {
                StateVector e = StateVector::Zero(dim);
                e(static_cast<Eigen::Index>(b)) = 1.0;
                starts.push_back(std::move(e));
            }
        }
    } else {
        starts.push_back(initial_state_vector(cfg));
    }

    const auto props = propagate_grid(cfg, opts);
    CompareReport rep;
    rep.engine_steps_per_period = opts.steps_per_period;
    rep.oracle_steps_per_period = fine.steps_per_period;
    rep.sub_resolution = opts.steps_per_period < kMinResolvedStepsPerPeriod;
    rep.engine_steps = grid_step_count(cfg, opts);
    rep.gaps.assign(static_cast<std::size_t>(cfg.time.steps) + 1, 0.0);
    for (int i = 0; i <= cfg.time.steps; ++i) {
        rep.times.push_back(cfg.time.at(i));
    }
    double drift = 0.0;
    rep.oracle_steps =
        evolve_many(cfg, starts, fine, drift,
                    [&](int i, std::size_t j, const StateVector &psi) {
                        const auto ii = static_cast<std::size_t>(i);
                        const double g = fidelity_gap(props[ii].apply(starts[j]), psi);
                        rep.gaps[ii] = std::max(rep.gaps[ii], g);
                    });
    rep.max_gap = *std::max_element(rep.gaps.begin(), rep.gaps.end());
    return rep;
}

} // namespace nwise::oracle
