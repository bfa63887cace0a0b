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

#include "nwise/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "nwise/errors.hpp"

namespace nwise {

namespace {

constexpr Complex kMinusI(0, -1);

Spinor rk4_step(const TwoLevelHamiltonian &h, double t, double dt, const Spinor &psi) {
    const Matrix2 h0 = h(t).matrix();
    const Matrix2 hm = h(t + 0.5 * dt).matrix();
    const Matrix2 h1 = h(t + dt).matrix();
    const Spinor k1 = kMinusI * (h0 * psi);
    const Spinor k2 = kMinusI * (hm * (psi + 0.5 * dt * k1));
    const Spinor k3 = kMinusI * (hm * (psi + 0.5 * dt * k2));
    const Spinor k4 = kMinusI * (h1 * (psi + dt * k3));
    return psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double unitarity_error(const Matrix2 &m) {
    return (m.adjoint() * m - Matrix2::Identity()).cwiseAbs().maxCoeff();
}

int spins_for_dimension(Eigen::Index dim) {
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) {
        ++n;
    }
    if ((Eigen::Index{1} << n) != dim || n < 1) {
        throw UsageError("density matrix dimension must be a power of two");
    }
    return n;
}

} // namespace

const char *to_string(IntegrationMethod method) {
    return method == IntegrationMethod::rk4 ? "rk4" : "midpoint-exponential";
}

void PropagatorOptions::validate() const {
    if (steps_per_period < 1) {
        throw UsageError("steps per period must be a positive integer");
    }
    if (!(norm_tolerance > 0.0)) {
        throw UsageError("norm tolerance must be > 0");
    }
}

int substeps_for_interval(double dt, double omega_max, int steps_per_period) {
    const double raw = dt * omega_max * steps_per_period / (2.0 * std::numbers::pi);
    return std::max(1, static_cast<int>(std::ceil(raw - 1e-9)));
}

Matrix2 step_exponential(const EffectiveHamiltonian &h, double dt) {
    const Complex global = std::polar(1.0, -h.offset * dt);
    const double r = h.field_magnitude();
    if (r == 0.0) {
        return global * Matrix2::Identity();
    }
    const double c = std::cos(r * dt);
    const double s = std::sin(r * dt) / r;
    Matrix2 m;
    m << Complex(c, -s * h.longitudinal), Complex(-s * h.transverse_y, -s * h.transverse_x),
        Complex(s * h.transverse_y, -s * h.transverse_x), Complex(c, s * h.longitudinal);
    return global * m;
}

TwoLevelTrajectory integrate_two_level(const TwoLevelHamiltonian &h, const TimeGrid &grid,
                                       const TwoLevelState &psi0, double omega_max,
                                       const PropagatorOptions &opts) {
    opts.validate();
    if (std::abs(psi0.squaredNorm() - 1.0) > 1e-12) {
        throw UsageError("initial two-level state is not normalized");
    }
    TwoLevelTrajectory out;
    out.times.reserve(static_cast<std::size_t>(grid.steps) + 1);
    out.states.reserve(static_cast<std::size_t>(grid.steps) + 1);
    Spinor psi = psi0;
    out.times.push_back(grid.at(0));
    out.states.push_back(psi);
    for (int i = 0; i < grid.steps; ++i) {
        const double ta = grid.at(i);
        const double tb = grid.at(i + 1);
        const int m = substeps_for_interval(tb - ta, omega_max, opts.steps_per_period);
        const double dt = (tb - ta) / m;
        for (int j = 0; j < m; ++j) {
            const double t = ta + j * dt;
            if (opts.method == IntegrationMethod::midpoint_exponential) {
                psi = step_exponential(h(t + 0.5 * dt), dt) * psi;
            } else {
                psi = rk4_step(h, t, dt, psi);
            }
        }
        out.steps += m;
        const double drift = std::abs(psi.norm() - 1.0);
        out.max_norm_drift = std::max(out.max_norm_drift, drift);
        if (drift > opts.norm_tolerance) {
            std::ostringstream os;
            os << "two-level norm drift " << drift << " exceeds tolerance "
               << opts.norm_tolerance << " at t = " << tb;
            throw NumericalError(os.str());
        }
        out.times.push_back(tb);
        out.states.push_back(psi);
    }
    return out;
}

TwoLevelTrajectory propagate_two_level(const SubspaceLabel &label, const ScenarioConfig &cfg,
                                       const TwoLevelState &psi0,
                                       const PropagatorOptions &opts) {
    cfg.validate();
    if (label.spins() != cfg.n) {
        throw UsageError("label and scenario spin counts differ");
    }
    auto h = [&](double t) {
        return effective_field(label, cfg.fields, cfg.couplings, t);
    };
    try {
        return integrate_two_level(h, cfg.time, psi0, characteristic_frequency(cfg), opts);
    } catch (const NumericalError &e) {
        throw NumericalError("label " + label.str() + ": " + e.what());
    }
}

double rabi_probability(double gamma, double delta, double t) {
    const double rabi_sq = delta * delta + gamma * gamma;
    if (rabi_sq == 0.0) {
        return 0.0;
    }
    const double s = std::sin(0.5 * std::sqrt(rabi_sq) * t);
    return gamma * gamma / rabi_sq * s * s;
}

int rotation_sense(const SubspaceLabel &label) {
    const int n = label.spins();
    if (n % 2 == 0) {
        throw UsageError("rotation sense is defined for odd n only; the even-n "
                         "transverse field has no sigma_y component");
    }
    const int sign = ((n - 1) / 2) % 2 == 0 ? 1 : -1;
    return sign * label.odd_product();
}

double detuning(const SubspaceLabel &label, const FieldSchedule &fields, double nu, int n) {
    if (n % 2 == 0) {
        throw UsageError("detuning: even n is unsupported (no rotating transverse field)");
    }
    if (label.spins() != n || fields.omega.size() != static_cast<std::size_t>(n)) {
        throw UsageError("detuning: label, fields and n disagree");
    }
    std::vector<double> omega;
    for (const auto &d : fields.omega) {
        const auto *c = std::get_if<ConstantDriver>(&d);
        if (c == nullptr) {
            throw UsageError("detuning needs constant fields");
        }
        omega.push_back(c->value);
    }
    double longitudinal = omega[0];
    int cumulative = 1;
    for (int k = 2; k <= n; ++k) {
        cumulative *= label.eps(k);
        longitudinal += omega[static_cast<std::size_t>(k - 1)] * cumulative;
    }
    return longitudinal - rotation_sense(label) * nu;
}

SparsePropagator::SparsePropagator(std::shared_ptr<const ChainUnitary> chain,
                                   std::vector<Matrix2> blocks)
    : chain_(std::move(chain)), blocks_(std::move(blocks)) {
    if (!chain_) {
        throw UsageError("sparse propagator needs a chain unitary");
    }
    const int n = chain_->spins();
    if (blocks_.size() != dimension(n - 1)) {
        throw UsageError("sparse propagator needs 2^(n-1) blocks");
    }
    auto pairs = std::make_shared<std::vector<BasisPair>>();
    pairs->reserve(blocks_.size());
    for (BasisIndex l = 0; l < blocks_.size(); ++l) {
        pairs->push_back(subspace_basis_pair(SubspaceLabel::from_index(n, l), *chain_));
    }
    pairs_ = std::move(pairs);
}

SparsePropagator::SparsePropagator(std::shared_ptr<const ChainUnitary> chain,
                                   std::shared_ptr<const std::vector<BasisPair>> pairs,
                                   std::vector<Matrix2> blocks)
    : chain_(std::move(chain)), pairs_(std::move(pairs)), blocks_(std::move(blocks)) {}

SparsePropagator SparsePropagator::with_blocks(std::vector<Matrix2> blocks) const {
    if (blocks.size() != blocks_.size()) {
        throw UsageError("sparse propagator needs 2^(n-1) blocks");
    }
    return SparsePropagator(chain_, pairs_, std::move(blocks));
}

SparsePropagator SparsePropagator::identity(int n) {
    return SparsePropagator(shared_chain(n),
                            std::vector<Matrix2>(dimension(n - 1), Matrix2::Identity()));
}

const Matrix2 &SparsePropagator::block(const SubspaceLabel &label) const {
    if (label.spins() != spins()) {
        throw UsageError("label spin count does not match propagator");
    }
    return blocks_[label.index()];
}

StateVector SparsePropagator::apply(const StateVector &psi) const {
    if (static_cast<BasisIndex>(psi.size()) != dimension(spins())) {
        throw UsageError("state dimension does not match propagator");
    }
    StateVector out(psi.size());
    for (std::size_t l = 0; l < blocks_.size(); ++l) {
        const auto i0 = static_cast<Eigen::Index>((*pairs_)[l].first);
        const auto i1 = static_cast<Eigen::Index>((*pairs_)[l].second);
        const Matrix2 &b = blocks_[l];
        const Complex a0 = psi(i0);
        const Complex a1 = psi(i1);
        out(i0) = b(0, 0) * a0 + b(0, 1) * a1;
        out(i1) = b(1, 0) * a0 + b(1, 1) * a1;
    }
    return out;
}

Eigen::MatrixXcd SparsePropagator::apply_left(const Eigen::MatrixXcd &m) const {
    if (static_cast<BasisIndex>(m.rows()) != dimension(spins())) {
        throw UsageError("matrix dimension does not match propagator");
    }
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (std::size_t l = 0; l < blocks_.size(); ++l) {
        const auto i0 = static_cast<Eigen::Index>((*pairs_)[l].first);
        const auto i1 = static_cast<Eigen::Index>((*pairs_)[l].second);
        const Matrix2 &b = blocks_[l];
        out.row(i0) = b(0, 0) * m.row(i0) + b(0, 1) * m.row(i1);
        out.row(i1) = b(1, 0) * m.row(i0) + b(1, 1) * m.row(i1);
    }
    return out;
}

SparsePropagator SparsePropagator::then(const SparsePropagator &later) const {
    if (later.spins() != spins()) {
        throw UsageError("cannot compose propagators of different sizes");
    }
    std::vector<Matrix2> blocks(blocks_.size());
    for (std::size_t l = 0; l < blocks_.size(); ++l) {
        blocks[l] = later.blocks_[l] * blocks_[l];
    }
    return with_blocks(std::move(blocks));
}

DenseOperator SparsePropagator::to_dense() const {
    if (spins() > kDenseCap) {
        throw CapacityError("dense propagator is limited to n <= " + std::to_string(kDenseCap));
    }
    const auto dim = static_cast<Eigen::Index>(dimension(spins()));
    DenseOperator v = DenseOperator::Zero(dim, dim);
    for (std::size_t l = 0; l < blocks_.size(); ++l) {
        const auto i0 = static_cast<Eigen::Index>((*pairs_)[l].first);
        const auto i1 = static_cast<Eigen::Index>((*pairs_)[l].second);
        v(i0, i0) = blocks_[l](0, 0);
        v(i0, i1) = blocks_[l](0, 1);
        v(i1, i0) = blocks_[l](1, 0);
        v(i1, i1) = blocks_[l](1, 1);
    }
    return v;
}

double SparsePropagator::max_unitarity_error() const {
    double worst = 0.0;
    for (const auto &b : blocks_) {
        worst = std::max(worst, unitarity_error(b));
    }
    return worst;
}

namespace {

// Advances every block from ta to tb in place.
long long advance_blocks(const ScenarioConfig &cfg, const std::vector<SubspaceLabel> &labels,
                         std::vector<Matrix2> &blocks, double ta, double tb,
                         double omega_max, const PropagatorOptions &opts) {
    const int m = substeps_for_interval(tb - ta, omega_max, opts.steps_per_period);
    const double dt = (tb - ta) / m;
    for (int j = 0; j < m; ++j) {
        const double t = ta + j * dt;
        if (opts.method == IntegrationMethod::midpoint_exponential) {
            const ScheduleSample mid = sample_schedules(cfg.fields, cfg.couplings, t + 0.5 * dt);
            for (std::size_t l = 0; l < labels.size(); ++l) {
                blocks[l] = step_exponential(effective_field(labels[l], mid), dt) * blocks[l];
            }
        } else {
            const ScheduleSample s0 = sample_schedules(cfg.fields, cfg.couplings, t);
            const ScheduleSample sm = sample_schedules(cfg.fields, cfg.couplings, t + 0.5 * dt);
            const ScheduleSample s1 = sample_schedules(cfg.fields, cfg.couplings, t + dt);
            for (std::size_t l = 0; l < labels.size(); ++l) {
                const Matrix2 h0 = effective_field(labels[l], s0).matrix();
                const Matrix2 hm = effective_field(labels[l], sm).matrix();
                const Matrix2 h1 = effective_field(labels[l], s1).matrix();
                const Matrix2 &u = blocks[l];
                const Matrix2 k1 = kMinusI * (h0 * u);
                const Matrix2 k2 = kMinusI * (hm * (u + 0.5 * dt * k1));
                const Matrix2 k3 = kMinusI * (hm * (u + 0.5 * dt * k2));
                const Matrix2 k4 = kMinusI * (h1 * (u + dt * k3));
                blocks[l] = u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
        }
    }
    for (std::size_t l = 0; l < labels.size(); ++l) {
        const double err = unitarity_error(blocks[l]);
        if (err > opts.norm_tolerance) {
            std::ostringstream os;
            os << "label " << labels[l].str() << ": block unitarity error " << err
               << " exceeds tolerance " << opts.norm_tolerance << " at t = " << tb;
            throw NumericalError(os.str());
        }
    }
    return m;
}

} // namespace

SparsePropagator assemble_propagator(const ScenarioConfig &cfg, double t0, double t1,
                                     const PropagatorOptions &opts) {
    cfg.validate();
    opts.validate();
    if (t1 < t0) {
        throw UsageError("assemble_propagator needs t1 >= t0");
    }
    const auto labels = enumerate_labels(cfg.n);
    std::vector<Matrix2> blocks(labels.size(), Matrix2::Identity());
    if (t1 > t0) {
        advance_blocks(cfg, labels, blocks, t0, t1, characteristic_frequency(cfg), opts);
    }
    return SparsePropagator(shared_chain(cfg.n), std::move(blocks));
}

std::vector<SparsePropagator> propagate_grid(const ScenarioConfig &cfg,
                                             const PropagatorOptions &opts) {
    cfg.validate();
    opts.validate();
    const auto labels = enumerate_labels(cfg.n);
    const auto chain = shared_chain(cfg.n);
    const double omega_max = characteristic_frequency(cfg);
    std::vector<Matrix2> blocks(labels.size(), Matrix2::Identity());
    std::vector<SparsePropagator> out;
    out.reserve(static_cast<std::size_t>(cfg.time.steps) + 1);
    out.emplace_back(chain, blocks);
    for (int i = 0; i < cfg.time.steps; ++i) {
        advance_blocks(cfg, labels, blocks, cfg.time.at(i), cfg.time.at(i + 1), omega_max, opts);
        out.push_back(out.front().with_blocks(blocks));
    }
    return out;
}

long long grid_step_count(const ScenarioConfig &cfg, const PropagatorOptions &opts) {
    const double omega_max = characteristic_frequency(cfg);
    long long total = 0;
    for (int i = 0; i < cfg.time.steps; ++i) {
        total += substeps_for_interval(cfg.time.at(i + 1) - cfg.time.at(i), omega_max,
                                       opts.steps_per_period);
    }
    return total;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd m, double tolerance) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw UsageError("density matrix must be square");
    }
    n_ = spins_for_dimension(m_.rows());
    if (n_ > kDensityCap) {
        throw CapacityError("density matrices are limited to n <= " +
                            std::to_string(kDensityCap));
    }
    const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tolerance) {
        throw NumericalError("density matrix is not Hermitian (deviation " +
                             std::to_string(herm) + ")");
    }
    if (std::abs(trace() - 1.0) > tolerance) {
        throw NumericalError("density matrix trace " + std::to_string(trace()) + " != 1");
    }
    const double lowest = min_eigenvalue();
    if (lowest < -tolerance) {
        throw NumericalError("density matrix has negative eigenvalue " +
                             std::to_string(lowest));
    }
}

DensityMatrix DensityMatrix::pure(const StateVector &psi) {
    return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> weights) {
    Eigen::VectorXcd d(static_cast<Eigen::Index>(weights.size()));
    for (std::size_t i = 0; i < weights.size(); ++i) {
        d(static_cast<Eigen::Index>(i)) = weights[i];
    }
    return DensityMatrix(d.asDiagonal().toDenseMatrix());
}

double DensityMatrix::trace() const { return m_.trace().real(); }

double DensityMatrix::population(BasisIndex b) const {
    return m_(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)).real();
}

double DensityMatrix::min_eigenvalue() const {
    const Eigen::MatrixXcd herm = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

DensityMatrix evolve_density(const DensityMatrix &rho, const SparsePropagator &prop) {
    if (rho.spins() != prop.spins()) {
        throw UsageError("density matrix and propagator sizes differ");
    }
    const Eigen::MatrixXcd left = prop.apply_left(rho.matrix());
    Eigen::MatrixXcd out = prop.apply_left(left.adjoint()).adjoint();
    try {
        return DensityMatrix(std::move(out));
    } catch (const NumericalError &e) {
        throw NumericalError(std::string("evolved density matrix invalid: ") + e.what());
    }
}

MeasurementOutcome measure_and_project(const DensityMatrix &rho, int spin, int outcome) {
    const int n = rho.spins();
    if (spin < 1 || spin > n) {
        throw UsageError("measured spin out of range 1.." + std::to_string(n));
    }
    if (outcome != 1 && outcome != -1) {
        throw UsageError("measurement outcome must be +1 or -1");
    }
    const int wanted_bit = outcome == 1 ? 0 : 1;
    const BasisIndex dim = dimension(n);
    double probability = 0.0;
    for (BasisIndex b = 0; b < dim; ++b) {
        if (spin_bit(b, spin, n) == wanted_bit) {
            probability += rho.population(b);
        }
    }
    MeasurementOutcome result;
    result.probability = probability;
    if (probability < 1e-14) {
        return result;
    }
    Eigen::MatrixXcd post = rho.matrix();
    for (BasisIndex b = 0; b < dim; ++b) {
        if (spin_bit(b, spin, n) != wanted_bit) {
            post.row(static_cast<Eigen::Index>(b)).setZero();
            post.col(static_cast<Eigen::Index>(b)).setZero();
        }
    }
    post /= probability;
    result.state.emplace(std::move(post));
    return result;
}

} // namespace nwise
