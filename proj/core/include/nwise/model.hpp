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

// Scenario description: spin count, time-dependent field and coupling
// schedules, time grid and initial state. Units: hbar = 1, fields are angular
// frequencies and couplings are energies.
//
//   H(t) = sum_k omega_k(t) Z_k + gx(t) X...X + gy(t) Y...Y + gz(t) Z...Z

#include <string>
#include <variant>
#include <vector>

#include "nwise/basis.hpp"
#include "nwise/pauli.hpp"

namespace nwise {

struct ConstantDriver {
    double value = 0.0;
    friend bool operator==(const ConstantDriver &, const ConstantDriver &) = default;
};

/// amplitude * cos(angular_frequency * t + phase)
struct CosineDriver {
    double amplitude = 0.0;
    double angular_frequency = 0.0;
    double phase = 0.0;
    friend bool operator==(const CosineDriver &, const CosineDriver &) = default;
};

/// amplitude * sin(angular_frequency * t + phase)
struct SineDriver {
    double amplitude = 0.0;
    double angular_frequency = 0.0;
    double phase = 0.0;
    friend bool operator==(const SineDriver &, const SineDriver &) = default;
};

/// slope * t + offset
struct LinearRampDriver {
    double slope = 0.0;
    double offset = 0.0;
    friend bool operator==(const LinearRampDriver &, const LinearRampDriver &) = default;
};

/// amplitude * sech((t - center) / width), width > 0
struct SechPulseDriver {
    double amplitude = 0.0;
    double width = 1.0;
    double center = 0.0;
    friend bool operator==(const SechPulseDriver &, const SechPulseDriver &) = default;
};

/// Piecewise-linear interpolation of (time, value) samples. Times strictly
/// increasing, at least two samples.
struct TabulatedDriver {
    std::vector<double> times;
    std::vector<double> values;
    friend bool operator==(const TabulatedDriver &, const TabulatedDriver &) = default;
};

using Driver = std::variant<ConstantDriver, CosineDriver, SineDriver,
                            LinearRampDriver, SechPulseDriver, TabulatedDriver>;

/// Name used by the scenario format: constant, cosine, sine, linear-ramp,
/// sech-pulse, tabulated.
std::string driver_kind(const Driver &d);

/// Throws UsageError if the driver violates its invariants.
void validate_driver(const Driver &d);

/// Evaluates d at t. Throws DomainError outside a tabulated range.
double evaluate_driver(const Driver &d, double t);

/// Upper bound on |d(t)| for t in [t0, t1].
double driver_bound(const Driver &d, double t0, double t1);

/// Fastest intrinsic angular rate of the waveform (0 for constant, ramp and
/// tabulated drivers).
double driver_rate(const Driver &d);

struct FieldSchedule {
    std::vector<Driver> omega; // omega[k-1] drives spin k
    friend bool operator==(const FieldSchedule &, const FieldSchedule &) = default;
};

struct CouplingSchedule {
    Driver x = ConstantDriver{};
    Driver y = ConstantDriver{};
    Driver z = ConstantDriver{};
    friend bool operator==(const CouplingSchedule &, const CouplingSchedule &) = default;
};

/// Output grid: steps + 1 sample points from t0 to t1 inclusive.
struct TimeGrid {
    double t0 = 0.0;
    double t1 = 1.0;
    int steps = 1;

    double at(int i) const;
    friend bool operator==(const TimeGrid &, const TimeGrid &) = default;
};

struct BasisStateInit {
    BasisIndex index = 0;
    friend bool operator==(const BasisStateInit &, const BasisStateInit &) = default;
};

/// (|index> + e^{i phase} |flip(index)>) / sqrt(2)
struct GhzPairInit {
    BasisIndex index = 0;
    double phase = 0.0;
    friend bool operator==(const GhzPairInit &, const GhzPairInit &) = default;
};

/// Diagonal density matrix sum_b weights[b] |b><b| over all 2^n basis states.
struct DiagonalMixtureInit {
    std::vector<double> weights;
    friend bool operator==(const DiagonalMixtureInit &, const DiagonalMixtureInit &) = default;
};

using InitialState = std::variant<BasisStateInit, GhzPairInit, DiagonalMixtureInit>;

struct ScenarioConfig {
    int n = 2;
    FieldSchedule fields;
    CouplingSchedule couplings;
    TimeGrid time;
    InitialState initial = BasisStateInit{};

    /// Throws UsageError naming the first violated invariant.
    void validate() const;

    friend bool operator==(const ScenarioConfig &, const ScenarioConfig &) = default;
};

/// All schedule values at one instant.
struct ScheduleSample {
    std::vector<double> omega;
    double gamma_x = 0.0;
    double gamma_y = 0.0;
    double gamma_z = 0.0;
};

ScheduleSample sample_schedules(const FieldSchedule &fields,
                                const CouplingSchedule &couplings, double t);

/// Raw (uncanonicalized) sum with exactly n + 3 terms.
OperatorSum build_full_hamiltonian(const ScheduleSample &sample);
OperatorSum build_full_hamiltonian(const ScenarioConfig &cfg, double t);

/// Fastest angular frequency present in the scenario over its time window:
/// the larger of the spectral-norm bound of H(t) and the intrinsic driver
/// rates. Step densities are expressed per 2*pi over this frequency.
double characteristic_frequency(const ScenarioConfig &cfg);

/// Initial pure state, or throws UsageError for a mixture.
StateVector initial_state_vector(const ScenarioConfig &cfg);

} // namespace nwise
