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

// Seeded scenario draws. Only the raw 64-bit output of std::mt19937_64 is
// used, so a seed gives the same scenario on every platform.

#include <cstdint>
#include <random>

#include "nwise/model.hpp"

namespace nwise {

class ScenarioSampler {
  public:
    explicit ScenarioSampler(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform integer in [0, count).
    std::uint64_t below(std::uint64_t count);

    /// Constant fields and couplings in [-2, 2), time [0, 1], basis initial
    /// state.
    ScenarioConfig constant_scenario(int n);

    /// Time-dependent scenario over a window of length 1 to 3. Driver kinds
    /// rotate with `draw`, so any six consecutive draws use all of them on
    /// every schedule slot. Initial state alternates between basis states and
    /// GHZ pairs.
    ScenarioConfig dynamic_scenario(int n, int draw);

    /// A driver of the given kind index (0..5 in driver_kind order) bounded
    /// by roughly `scale` on [t0, t1].
    Driver driver(int kind, double scale, double t0, double t1);

  private:
    std::mt19937_64 engine_;
};

} // namespace nwise
