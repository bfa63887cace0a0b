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

#include "nwise/sampling.hpp"

#include <numbers>

#include "nwise/errors.hpp"

namespace nwise {

double ScenarioSampler::uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

std::uint64_t ScenarioSampler::below(std::uint64_t count) {
    if (count == 0) {
        throw UsageError("below(0)");
    }
    return engine_() % count;
}

ScenarioConfig ScenarioSampler::constant_scenario(int n) {
    ScenarioConfig cfg;
    cfg.n = n;
    for (int k = 0; k < n; ++k) {
        cfg.fields.omega.emplace_back(ConstantDriver{uniform(-2.0, 2.0)});
    }
    cfg.couplings.x = ConstantDriver{uniform(-2.0, 2.0)};
    cfg.couplings.y = ConstantDriver{uniform(-2.0, 2.0)};
    cfg.couplings.z = ConstantDriver{uniform(-2.0, 2.0)};
    cfg.time = TimeGrid{0.0, 1.0, 1};
    cfg.initial = BasisStateInit{below(dimension(n))};
    return cfg;
}

Driver ScenarioSampler::driver(int kind, double scale, double t0, double t1) {
    const double span = t1 - t0;
    switch (kind % 6) {
    case 0:
        return ConstantDriver{uniform(-scale, scale)};
    case 1:
        return CosineDriver{uniform(-scale, scale), uniform(0.5, 3.0),
                            uniform(0.0, 2.0 * std::numbers::pi)};
    case 2:
        return SineDriver{uniform(-scale, scale), uniform(0.5, 3.0),
                          uniform(0.0, 2.0 * std::numbers::pi)};
    case 3: {
        const double slope = uniform(-scale, scale) / span;
        return LinearRampDriver{slope, -slope * (t0 + 0.5 * span)};
    }
    case 4:
        return SechPulseDriver{uniform(-scale, scale), uniform(0.2, 0.6) * span,
                               t0 + uniform(0.2, 0.8) * span};
    default: {
        TabulatedDriver d;
        constexpr int kPoints = 7;
        for (int i = 0; i < kPoints; ++i) {
            d.times.push_back(i + 1 == kPoints ? t1 : t0 + span * i / (kPoints - 1));
            d.values.push_back(uniform(-scale, scale));
        }
        return d;
    }
    }
}

ScenarioConfig ScenarioSampler::dynamic_scenario(int n, int draw) {
    ScenarioConfig cfg;
    cfg.n = n;
    const double t0 = uniform(-0.5, 0.5);
    const double t1 = t0 + uniform(1.0, 3.0);
    for (int k = 0; k < n; ++k) {
        cfg.fields.omega.push_back(driver(draw + k, 2.0, t0, t1));
    }
    cfg.couplings.x = driver(draw + n, 1.5, t0, t1);
    cfg.couplings.y = driver(draw + n + 1, 1.5, t0, t1);
    cfg.couplings.z = driver(draw + n + 2, 1.5, t0, t1);
    cfg.time = TimeGrid{t0, t1, 10};
    const BasisIndex b = below(dimension(n));
    if (draw % 2 == 0) {
        cfg.initial = BasisStateInit{b};
    } else {
        cfg.initial = GhzPairInit{b, uniform(0.0, 2.0 * std::numbers::pi)};
    }
    return cfg;
}

} // namespace nwise
