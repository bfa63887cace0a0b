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

#include "nwise/protocols.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <numbers>
#include <numeric>

#include "nwise/errors.hpp"
#include "nwise/oracle.hpp"

namespace nwise::protocols {

namespace {

constexpr double kPi = std::numbers::pi;

bool finite(double x) { return std::isfinite(x); }

double scale_of(const CoolingScenario &s) {
    double scale = std::max({std::abs(s.nu), std::abs(s.gamma), 1.0});
    for (double w : s.omega) {
        scale = std::max(scale, std::abs(w));
    }
    return scale;
}

double longitudinal_splitting(const SubspaceLabel &label, const std::vector<double> &omega) {
    double out = omega[0];
    int cumulative = 1;
    for (int k = 2; k <= label.spins(); ++k) {
        cumulative *= label.eps(k);
        out += omega[static_cast<std::size_t>(k - 1)] * cumulative;
    }
    return out;
}

double label_detuning(const CoolingScenario &s, const SubspaceLabel &label) {
    if (s.mode == CoolingMode::odd_exact) {
        return detuning(label, s.splittings(), s.nu, s.n);
    }
    return std::abs(longitudinal_splitting(label, s.omega)) - s.nu;
}

double ceiling(double rate, double delta) {
    const double r2 = rate * rate;
    if (r2 + delta * delta == 0.0) {
        return 0.0;
    }
    return r2 / (r2 + delta * delta);
}

std::vector<BasisIndex> resonant_labels(const CoolingScenario &s) {
    std::vector<BasisIndex> out;
    const double tol = 1e-9 * scale_of(s);
    for (const auto &label : enumerate_labels(s.n)) {
        if (std::abs(label_detuning(s, label)) < tol) {
            out.push_back(label.index());
        }
    }
    return out;
}

double transition(const Matrix2 &block) { return std::norm(block(1, 0)); }

} // namespace

const char *to_string(GhzTarget target) {
    return target == GhzTarget::half ? "half" : "full";
}

double ghz_target_time(GhzTarget target, double gamma_x) {
    if (gamma_x == 0.0 || !finite(gamma_x)) {
        throw UsageError("GHZ target time needs a finite nonzero gamma_x");
    }
    return (target == GhzTarget::half ? 0.25 : 0.5) * kPi / std::abs(gamma_x);
}

void GhzScenario::validate() const {
    if (n < 2 || n > kMaxSpins) {
        throw UsageError("GHZ scenario needs 2 <= n <= " + std::to_string(kMaxSpins));
    }
    if (!finite(gamma_x)) {
        throw UsageError("GHZ gamma_x must be finite");
    }
    to_config().validate();
}

ScenarioConfig GhzScenario::to_config() const {
    ScenarioConfig cfg;
    cfg.n = n;
    cfg.fields.omega.assign(static_cast<std::size_t>(std::max(n, 0)), ConstantDriver{0.0});
    if (n >= 1) {
        cfg.fields.omega[0] = omega1;
    }
    cfg.couplings.x = ConstantDriver{gamma_x};
    cfg.time = time;
    cfg.initial = BasisStateInit{0};
    return cfg;
}

GhzResult run_ghz(const GhzScenario &s, const RunOptions &opts) {
    s.validate();
    const ScenarioConfig cfg = s.to_config();
    const BasisIndex minus = all_minus(s.n);
    GhzResult out;
    auto record = [&](double t, Complex a, Complex b, double leak) {
        GhzSample g;
        g.t = t;
        g.p_plus = std::norm(a);
        g.p_minus = std::norm(b);
        const double sum = std::abs(a) + std::abs(b);
        g.ghz_fidelity = 0.5 * sum * sum;
        g.leakage = leak;
        out.max_leakage = std::max(out.max_leakage, leak);
        out.samples.push_back(g);
    };
    if (s.n <= kDenseCap) {
        const auto props = propagate_grid(cfg, opts.propagator);
        const StateVector psi0 = initial_state_vector(cfg);
        for (int i = 0; i <= cfg.time.steps; ++i) {
            const StateVector psi = props[static_cast<std::size_t>(i)].apply(psi0);
            const Complex a = psi(0);
            const Complex b = psi(static_cast<Eigen::Index>(minus));
            const double leak =
                std::max(0.0, psi.squaredNorm() - std::norm(a) - std::norm(b));
            record(cfg.time.at(i), a, b, leak);
        }
    } else {
        const auto traj = propagate_two_level(SubspaceLabel::all_plus(s.n), cfg,
                                              TwoLevelState(1, 0), opts.propagator);
        for (std::size_t i = 0; i < traj.states.size(); ++i) {
            record(traj.times[i], traj.states[i](0), traj.states[i](1), 0.0);
        }
    }
    out.steps = grid_step_count(cfg, opts.propagator);
    if (const auto *c = std::get_if<ConstantDriver>(&s.omega1); c && c->value == 0.0) {
        out.expected_p_minus = s.target == GhzTarget::half ? 0.5 : 1.0;
    }
    if (opts.oracle && s.n <= kDenseCap) {
        out.oracle_max_gap = oracle::compare(cfg, opts.propagator).max_gap;
    }
    return out;
}

const char *to_string(CoolingMode mode) {
    return mode == CoolingMode::odd_exact ? "odd-exact" : "even-rwa";
}

void CoolingScenario::validate() const {
    if (n < 2) {
        throw UsageError("cooling needs n >= 2");
    }
    if (mode == CoolingMode::odd_exact && n % 2 == 0) {
        throw UsageError("parity: odd-exact cooling requires odd n (got n=" +
                         std::to_string(n) + ")");
    }
    if (mode == CoolingMode::even_rwa && n % 2 == 1) {
        throw UsageError("parity: even-rwa cooling requires even n (got n=" +
                         std::to_string(n) + ")");
    }
    if (n > kDensityCap) {
        throw CapacityError("cooling evolves a density matrix; n <= " +
                            std::to_string(kDensityCap));
    }
    if (omega.size() != static_cast<std::size_t>(n)) {
        throw UsageError("cooling needs one omega per spin");
    }
    for (double w : omega) {
        if (!finite(w)) {
            throw UsageError("cooling omega must be finite");
        }
    }
    if (!finite(gamma) || gamma < 0.0) {
        throw UsageError("cooling gamma must be finite and >= 0");
    }
    if (!finite(nu)) {
        throw UsageError("cooling nu must be finite");
    }
    if (weights.size() != dimension(n - 1)) {
        throw UsageError("cooling needs 2^(n-1) = " + std::to_string(dimension(n - 1)) +
                         " weights (got " + std::to_string(weights.size()) + ")");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!finite(w) || w < 0.0) {
            throw UsageError("cooling weights must be finite and >= 0");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw UsageError("normalization: cooling weights sum to " + std::to_string(total) +
                         ", expected 1");
    }
    if (duration) {
        if (!finite(*duration) || *duration < 0.0) {
            throw UsageError("cooling duration must be finite and >= 0");
        }
    } else if (gamma == 0.0) {
        throw UsageError("pi-pulse is undefined for gamma = 0; give a duration");
    }
    if (steps < 1) {
        throw UsageError("cooling steps must be >= 1");
    }
}

double CoolingScenario::rabi_rate() const {
    return mode == CoolingMode::odd_exact ? gamma : 0.5 * gamma;
}

double CoolingScenario::pi_pulse() const {
    const double rate = rabi_rate();
    if (rate == 0.0) {
        throw UsageError("pi-pulse is undefined for gamma = 0");
    }
    return kPi / rate;
}

double CoolingScenario::freezing_ratio() const {
    if (gamma == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    double lo = std::numeric_limits<double>::infinity();
    for (double w : omega) {
        lo = std::min(lo, std::abs(w));
    }
    return lo / gamma;
}

FieldSchedule CoolingScenario::splittings() const {
    FieldSchedule f;
    for (double w : omega) {
        f.omega.emplace_back(ConstantDriver{w});
    }
    return f;
}

ScenarioConfig CoolingScenario::to_config() const {
    ScenarioConfig cfg;
    cfg.n = n;
    for (double w : omega) {
        cfg.fields.omega.emplace_back(ConstantDriver{0.5 * w});
    }
    cfg.couplings.x = CosineDriver{0.5 * gamma, nu, 0.0};
    if (mode == CoolingMode::odd_exact) {
        cfg.couplings.y = SineDriver{0.5 * gamma, nu, 0.0};
    }
    cfg.time = TimeGrid{0.0, pulse_duration(), steps};
    DiagonalMixtureInit mix;
    mix.weights.assign(dimension(n), 0.0);
    std::copy(weights.begin(), weights.end(), mix.weights.begin());
    cfg.initial = mix;
    return cfg;
}

double resonant_nu(int n, const std::vector<double> &omega) {
    if (n < 2 || omega.size() != static_cast<std::size_t>(n)) {
        throw UsageError("resonant_nu needs n >= 2 and one omega per spin");
    }
    const double sum = std::accumulate(omega.begin(), omega.end(), 0.0);
    if (n % 2 == 0) {
        return sum;
    }
    return ((n - 1) / 2) % 2 == 0 ? sum : -sum;
}

SelectivityMap selectivity_map(const CoolingScenario &s, const PropagatorOptions &opts) {
    s.validate();
    SelectivityMap map;
    const double rate = s.rabi_rate();
    map.window = s.pulse_duration();
    if (rate > 0.0) {
        map.window = std::max(map.window, 2.0 * kPi / rate);
    }
    double fastest = rate;
    for (const auto &label : enumerate_labels(s.n)) {
        fastest = std::max(fastest, std::hypot(rate, label_detuning(s, label)));
    }
    ScenarioConfig cfg = s.to_config();
    const int samples = static_cast<int>(std::ceil(map.window * fastest / (2.0 * kPi) * 32.0));
    cfg.time = TimeGrid{0.0, map.window, std::max(s.steps, samples)};
    map.resonant = resonant_labels(s);
    for (const auto &label : enumerate_labels(s.n)) {
        LabelSelectivity row{label};
        row.detuning = label_detuning(s, label);
        row.predicted_ceiling = ceiling(rate, row.detuning);
        const auto traj = propagate_two_level(label, cfg, TwoLevelState(1, 0), opts);
        for (const auto &chi : traj.states) {
            row.observed_max = std::max(row.observed_max, std::norm(chi(1)));
        }
        map.labels.push_back(std::move(row));
    }
    return map;
}

CoolingReport run_cooling(const CoolingScenario &s, const RunOptions &opts) {
    const auto started = std::chrono::steady_clock::now();
    s.validate();
    const ScenarioConfig cfg = s.to_config();
    CoolingReport rep;
    rep.pulse = s.pulse_duration();
    rep.pi_pulse = s.gamma > 0.0 ? s.pi_pulse() : std::numeric_limits<double>::infinity();
    rep.freezing_ratio = s.freezing_ratio();
    rep.resonant = resonant_labels(s);
    rep.resonance_as_intended = rep.resonant.size() == 1 && rep.resonant[0] == 0;

    const auto props = propagate_grid(cfg, opts.propagator);
    rep.steps = grid_step_count(cfg, opts.propagator);
    const double rate = s.rabi_rate();
    rep.min_margin = std::numeric_limits<double>::infinity();
    const auto labels = enumerate_labels(s.n);
    for (std::size_t l = 0; l < labels.size(); ++l) {
        LabelLeakage row{labels[l]};
        row.detuning = label_detuning(s, labels[l]);
        row.ceiling = ceiling(rate, row.detuning);
        for (const auto &p : props) {
            row.max_transition = std::max(row.max_transition, transition(p.blocks()[l]));
        }
        row.margin = 1.1 * row.ceiling - row.max_transition;
        const bool selected =
            std::find(rep.resonant.begin(), rep.resonant.end(), labels[l].index()) !=
            rep.resonant.end();
        if (!selected) {
            rep.max_leakage = std::max(rep.max_leakage, row.max_transition);
            rep.min_margin = std::min(rep.min_margin, row.margin);
        }
        rep.leakage.push_back(std::move(row));
    }
    if (!std::isfinite(rep.min_margin)) {
        rep.min_margin = 0.0;
    }

    const auto &mix = std::get<DiagonalMixtureInit>(cfg.initial);
    const DensityMatrix rho0 = DensityMatrix::diagonal(mix.weights);
    for (std::size_t i = 0; i < props.size(); ++i) {
        const DensityMatrix r = evolve_density(rho0, props[i]);
        const MeasurementOutcome o = measure_and_project(r, 1, -1);
        rep.samples.push_back({cfg.time.at(static_cast<int>(i)), o.probability,
                               o.possible() ? o.state->population(all_minus(s.n)) : 0.0});
    }
    const DensityMatrix rho = evolve_density(rho0, props.back());
    rep.pre_measurement = rho.matrix();
    const MeasurementOutcome outcome = measure_and_project(rho, 1, -1);
    rep.success_probability = outcome.probability;
    if (outcome.possible()) {
        rep.conditional_fidelity = outcome.state->population(all_minus(s.n));
    }

    if (opts.oracle && s.n <= kOracleDensityCap) {
        PropagatorOptions fine = opts.propagator;
        fine.steps_per_period *= oracle::kRefinement;
        const auto traj = oracle::dense_evolve(cfg, rho0, fine);
        const Eigen::MatrixXcd &dense = traj.densities.back();
        const Eigen::MatrixXcd herm = 0.5 * (dense + dense.adjoint());
        const DensityMatrix rho_oracle(herm, 1e-8);
        CoolingOracleCheck check;
        check.max_density_deviation = (herm - rho.matrix()).cwiseAbs().maxCoeff();
        const MeasurementOutcome o = measure_and_project(rho_oracle, 1, -1);
        check.success_probability = o.probability;
        if (o.possible()) {
            check.conditional_fidelity = o.state->population(all_minus(s.n));
        }
        rep.oracle = check;
    }
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return rep;
}

} // namespace nwise::protocols
