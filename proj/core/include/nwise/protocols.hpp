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

// GHZ generation and selective-interaction cooling.
//
// CoolingScenario works in the splitting convention: omega_k is the level
// splitting of spin k and gamma the Rabi frequency of the rotating coupling.
// to_config() maps these onto the Hamiltonian coefficients omega_k / 2 and
// gamma / 2.

#include <optional>
#include <string>
#include <vector>

#include "nwise/dynamics.hpp"
#include "nwise/model.hpp"
#include "nwise/subspace.hpp"

namespace nwise::protocols {

enum class GhzTarget { half, full };

const char *to_string(GhzTarget target);

/// pi / (4 gamma_x) for half, pi / (2 gamma_x) for full.
double ghz_target_time(GhzTarget target, double gamma_x);

struct GhzScenario {
    int n = 3;
    double gamma_x = 1.0;
    Driver omega1 = ConstantDriver{0.0};
    GhzTarget target = GhzTarget::full;
    TimeGrid time;

    void validate() const;
    /// Spins 2..n get omega = 0, only the x coupling is on, start in |+...+>.
    ScenarioConfig to_config() const;
};

struct GhzSample {
    double t = 0.0;
    double p_minus = 0.0;
    double p_plus = 0.0;
    /// Overlap with (|+...+> + e^{i phi}|-...->)/sqrt(2), maximized over phi.
    double ghz_fidelity = 0.0;
    /// Population outside span{|+...+>, |-...->}.
    double leakage = 0.0;
};

struct RunOptions {
    PropagatorOptions propagator;
    /// Also run the dense oracle (n <= kDenseCap) and report the gap.
    bool oracle = false;
};

struct GhzResult {
    std::vector<GhzSample> samples;
    double max_leakage = 0.0;
    /// Expected final P_minus (1/2 or 1) when omega1 is identically zero.
    std::optional<double> expected_p_minus;
    long long steps = 0;
    std::optional<double> oracle_max_gap;
};

GhzResult run_ghz(const GhzScenario &s, const RunOptions &opts = {});

enum class CoolingMode { odd_exact, even_rwa };

const char *to_string(CoolingMode mode);

struct CoolingScenario {
    int n = 3;
    /// Level splittings, one per spin.
    std::vector<double> omega;
    double gamma = 1.0;
    double nu = 0.0;
    /// Weights over the basis states of spins 2..n (index order, |+...+>
    /// first); spin 1 starts in |+>.
    std::vector<double> weights;
    CoolingMode mode = CoolingMode::odd_exact;
    /// Pulse length; the pi-pulse of the resonant label when empty.
    std::optional<double> duration;
    /// Output samples over the pulse.
    int steps = 200;

    /// Throws UsageError, including for a parity/mode mismatch.
    void validate() const;
    /// Rabi frequency of the resonant label: gamma (odd) or gamma / 2 (RWA).
    double rabi_rate() const;
    /// pi / rabi_rate().
    double pi_pulse() const;
    double pulse_duration() const { return duration ? *duration : pi_pulse(); }
    /// min_k omega_k / gamma.
    double freezing_ratio() const;
    ScenarioConfig to_config() const;
    /// The splittings as constant drivers.
    FieldSchedule splittings() const;
};

/// Coupling frequency that makes the all-plus label resonant:
/// (-1)^((n-1)/2) sum omega for odd n, sum omega for even n.
double resonant_nu(int n, const std::vector<double> &omega);

struct LabelSelectivity {
    SubspaceLabel label;
    double detuning = 0.0;
    /// rate^2 / (rate^2 + detuning^2)
    double predicted_ceiling = 0.0;
    double observed_max = 0.0;
};

struct SelectivityMap {
    std::vector<LabelSelectivity> labels;
    /// Indices of labels with |detuning| below 1e-9 of the frequency scale.
    std::vector<BasisIndex> resonant;
    double window = 0.0;
};

/// Per-label detuning, predicted and observed maximum transition over
/// max(pulse, 2 pi / rabi_rate). The even-RWA mode uses |Omega| - nu and the
/// RWA rate.
SelectivityMap selectivity_map(const CoolingScenario &s,
                               const PropagatorOptions &opts = {});

struct LabelLeakage {
    SubspaceLabel label;
    double detuning = 0.0;
    double ceiling = 0.0;
    /// Largest transition probability seen over the pulse.
    double max_transition = 0.0;
    /// 1.1 * ceiling - max_transition; negative means the frozen bound failed.
    double margin = 0.0;
};

struct CoolingOracleCheck {
    double success_probability = 0.0;
    double conditional_fidelity = 0.0;
    /// Largest entry of |rho_engine - rho_oracle| before the measurement.
    double max_density_deviation = 0.0;
};

struct CoolingSample {
    double t = 0.0;
    /// Probability of the spin-1 outcome - if measured at t.
    double p_success = 0.0;
    /// Fidelity of the post-measurement state with |-...->.
    double conditional_fidelity = 0.0;
};

struct CoolingReport {
    std::vector<CoolingSample> samples;
    double pulse = 0.0;
    double pi_pulse = 0.0;
    double freezing_ratio = 0.0;
    double success_probability = 0.0;
    /// <-...-| rho_post |-...->; 0 when the outcome is impossible.
    double conditional_fidelity = 0.0;
    std::vector<LabelLeakage> leakage;
    /// Over non-selected labels.
    double max_leakage = 0.0;
    double min_margin = 0.0;
    std::vector<BasisIndex> resonant;
    /// False when the resonant set is not exactly the all-plus label.
    bool resonance_as_intended = false;
    long long steps = 0;
    double wall_seconds = 0.0;
    /// rho just before the measurement.
    Eigen::MatrixXcd pre_measurement;
    std::optional<CoolingOracleCheck> oracle;
};

CoolingReport run_cooling(const CoolingScenario &s, const RunOptions &opts = {});

} // namespace nwise::protocols
