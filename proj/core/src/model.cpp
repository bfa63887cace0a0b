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

#include "nwise/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nwise/errors.hpp"

namespace nwise {

namespace {

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

std::string driver_kind(const Driver &d) {
    return std::visit(
        overloaded{
            [](const ConstantDriver &) { return std::string("constant"); },
            [](const CosineDriver &) { return std::string("cosine"); },
            [](const SineDriver &) { return std::string("sine"); },
            [](const LinearRampDriver &) { return std::string("linear-ramp"); },
            [](const SechPulseDriver &) { return std::string("sech-pulse"); },
            [](const TabulatedDriver &) { return std::string("tabulated"); },
        },
        d);
}

void validate_driver(const Driver &d) {
    auto finite = [](double v, const char *what) {
        if (!std::isfinite(v)) {
            throw UsageError(std::string("driver parameter '") + what +
                             "' is not finite");
        }
    };
    std::visit(
        overloaded{
            [&](const ConstantDriver &c) { finite(c.value, "value"); },
            [&](const CosineDriver &c) {
                finite(c.amplitude, "amplitude");
                finite(c.angular_frequency, "angular_frequency");
                finite(c.phase, "phase");
            },
            [&](const SineDriver &c) {
                finite(c.amplitude, "amplitude");
                finite(c.angular_frequency, "angular_frequency");
                finite(c.phase, "phase");
            },
            [&](const LinearRampDriver &c) {
                finite(c.slope, "slope");
                finite(c.offset, "offset");
            },
            [&](const SechPulseDriver &c) {
                finite(c.amplitude, "amplitude");
                finite(c.width, "width");
                finite(c.center, "center");
                if (!(c.width > 0.0)) {
                    throw UsageError("sech-pulse width must be > 0");
                }
            },
            [&](const TabulatedDriver &c) {
                if (c.times.size() != c.values.size()) {
                    throw UsageError("tabulated driver: times and values differ in length");
                }
                if (c.times.size() < 2) {
                    throw UsageError("tabulated driver needs at least two samples");
                }
                for (std::size_t i = 0; i < c.times.size(); ++i) {
                    finite(c.times[i], "times");
                    finite(c.values[i], "values");
                    if (i > 0 && !(c.times[i] > c.times[i - 1])) {
                        throw UsageError("tabulated driver times must be strictly increasing");
                    }
                }
            },
        },
        d);
}

double evaluate_driver(const Driver &d, double t) {
    return std::visit(
        overloaded{
            [](const ConstantDriver &c) { return c.value; },
            [t](const CosineDriver &c) {
                return c.amplitude * std::cos(c.angular_frequency * t + c.phase);
            },
            [t](const SineDriver &c) {
                return c.amplitude * std::sin(c.angular_frequency * t + c.phase);
            },
            [t](const LinearRampDriver &c) { return c.slope * t + c.offset; },
            [t](const SechPulseDriver &c) {
                return c.amplitude / std::cosh((t - c.center) / c.width);
            },
            [t](const TabulatedDriver &c) {
                if (t < c.times.front() || t > c.times.back()) {
                    throw DomainError("t = " + std::to_string(t) +
                                      " outside tabulated range [" +
                                      std::to_string(c.times.front()) + ", " +
                                      std::to_string(c.times.back()) + "]");
                }
                auto it = std::upper_bound(c.times.begin(), c.times.end(), t);
                if (it == c.times.end()) {
                    return c.values.back();
                }
                const auto hi = static_cast<std::size_t>(it - c.times.begin());
                const auto lo = hi - 1;
                const double w = (t - c.times[lo]) / (c.times[hi] - c.times[lo]);
                return c.values[lo] + w * (c.values[hi] - c.values[lo]);
            },
        },
        d);
}

double driver_bound(const Driver &d, double t0, double t1) {
    return std::visit(
        overloaded{
            [](const ConstantDriver &c) { return std::abs(c.value); },
            [](const CosineDriver &c) { return std::abs(c.amplitude); },
            [](const SineDriver &c) { return std::abs(c.amplitude); },
            [t0, t1](const LinearRampDriver &c) {
                return std::max(std::abs(c.slope * t0 + c.offset),
                                std::abs(c.slope * t1 + c.offset));
            },
            [](const SechPulseDriver &c) { return std::abs(c.amplitude); },
            [](const TabulatedDriver &c) {
                double m = 0.0;
                for (double v : c.values) {
                    m = std::max(m, std::abs(v));
                }
                return m;
            },
        },
        d);
}

double driver_rate(const Driver &d) {
    return std::visit(
        overloaded{
            [](const CosineDriver &c) { return std::abs(c.angular_frequency); },
            [](const SineDriver &c) { return std::abs(c.angular_frequency); },
            [](const SechPulseDriver &c) { return 1.0 / c.width; },
            [](const auto &) { return 0.0; },
        },
        d);
}

double TimeGrid::at(int i) const {
    if (i == steps) {
        return t1;
    }
    return t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(steps);
}

void ScenarioConfig::validate() const {
    if (n < 2) {
        throw UsageError("spin count n must be >= 2 (got " + std::to_string(n) + ")");
    }
    if (n > kMaxSpins) {
        throw UsageError("spin count n must be <= " + std::to_string(kMaxSpins));
    }
    if (fields.omega.size() != static_cast<std::size_t>(n)) {
        throw UsageError("field schedule needs exactly n = " + std::to_string(n) +
                         " drivers (got " + std::to_string(fields.omega.size()) + ")");
    }
    for (const auto &d : fields.omega) {
        validate_driver(d);
    }
    validate_driver(couplings.x);
    validate_driver(couplings.y);
    validate_driver(couplings.z);
    if (time.steps < 1) {
        throw UsageError("time grid needs steps >= 1");
    }
    if (!std::isfinite(time.t0) || !std::isfinite(time.t1) || time.t1 < time.t0) {
        throw UsageError("time grid needs finite t0 <= t1");
    }
    const BasisIndex dim = dimension(n);
    std::visit(
        overloaded{
            [&](const BasisStateInit &b) {
                if (b.index >= dim) {
                    throw UsageError("initial basis index out of range");
                }
            },
            [&](const GhzPairInit &g) {
                if (g.index >= dim) {
                    throw UsageError("initial GHZ-pair index out of range");
                }
                if (!std::isfinite(g.phase)) {
                    throw UsageError("initial GHZ-pair phase is not finite");
                }
            },
            [&](const DiagonalMixtureInit &m) {
                if (m.weights.size() != dim) {
                    throw UsageError("mixture needs 2^n = " + std::to_string(dim) +
                                     " weights (got " +
                                     std::to_string(m.weights.size()) + ")");
                }
                double total = 0.0;
                for (double w : m.weights) {
                    if (!(w >= 0.0) || !std::isfinite(w)) {
                        throw UsageError("mixture weights must be finite and nonnegative");
                    }
                    total += w;
                }
                if (std::abs(total - 1.0) > 1e-12) {
                    throw UsageError("mixture weights must sum to 1 (sum = " +
                                     std::to_string(total) + ")");
                }
            },
        },
        initial);
}

ScheduleSample sample_schedules(const FieldSchedule &fields,
                                const CouplingSchedule &couplings, double t) {
    ScheduleSample s;
    s.omega.reserve(fields.omega.size());
    for (const auto &d : fields.omega) {
        s.omega.push_back(evaluate_driver(d, t));
    }
    s.gamma_x = evaluate_driver(couplings.x, t);
    s.gamma_y = evaluate_driver(couplings.y, t);
    s.gamma_z = evaluate_driver(couplings.z, t);
    return s;
}

OperatorSum build_full_hamiltonian(const ScheduleSample &sample) {
    const int n = static_cast<int>(sample.omega.size());
    OperatorSum h(n);
    for (int k = 1; k <= n; ++k) {
        h.add(sample.omega[static_cast<std::size_t>(k - 1)],
              PauliString::single(n, k, PauliLetter::Z));
    }
    h.add(sample.gamma_x, PauliString::uniform(n, PauliLetter::X));
    h.add(sample.gamma_y, PauliString::uniform(n, PauliLetter::Y));
    h.add(sample.gamma_z, PauliString::uniform(n, PauliLetter::Z));
    return h;
}

OperatorSum build_full_hamiltonian(const ScenarioConfig &cfg, double t) {
    return build_full_hamiltonian(sample_schedules(cfg.fields, cfg.couplings, t));
}

double characteristic_frequency(const ScenarioConfig &cfg) {
    const double t0 = cfg.time.t0;
    const double t1 = cfg.time.t1;
    double norm_bound = 0.0;
    double rate = 0.0;
    auto visit = [&](const Driver &d) {
        norm_bound += driver_bound(d, t0, t1);
        rate = std::max(rate, driver_rate(d));
    };
    for (const auto &d : cfg.fields.omega) {
        visit(d);
    }
    visit(cfg.couplings.x);
    visit(cfg.couplings.y);
    visit(cfg.couplings.z);
    return std::max(norm_bound, rate);
}

StateVector initial_state_vector(const ScenarioConfig &cfg) {
    const auto dim = static_cast<Eigen::Index>(dimension(cfg.n));
    StateVector psi = StateVector::Zero(dim);
    std::visit(
        overloaded{
            [&](const BasisStateInit &b) {
                psi(static_cast<Eigen::Index>(b.index)) = 1.0;
            },
            [&](const GhzPairInit &g) {
                const double s = 1.0 / std::sqrt(2.0);
                psi(static_cast<Eigen::Index>(g.index)) = s;
                psi(static_cast<Eigen::Index>(g.index ^ all_minus(cfg.n))) +=
                    s * std::polar(1.0, g.phase);
            },
            [&](const DiagonalMixtureInit &) {
                throw UsageError("initial state is a mixture, not a pure state");
            },
        },
        cfg.initial);
    return psi;
}

} // namespace nwise
