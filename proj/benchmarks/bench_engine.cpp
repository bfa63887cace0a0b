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

#include <benchmark/benchmark.h>

#include "nwise/dynamics.hpp"
#include "nwise/oracle.hpp"
#include "nwise/protocols.hpp"
#include "nwise/sampling.hpp"
#include "nwise/transform.hpp"

namespace {

using namespace nwise;

ScenarioConfig bench_scenario(int n) {
    ScenarioSampler s(2026);
    return s.dynamic_scenario(n, 0);
}

void BM_DecomposedPropagator(benchmark::State &state) {
    const auto cfg = bench_scenario(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_propagator(cfg, cfg.time.t0, cfg.time.t1));
    }
}
BENCHMARK(BM_DecomposedPropagator)->DenseRange(2, 10, 2)->Unit(benchmark::kMillisecond);

void BM_DenseOracle(benchmark::State &state) {
    const auto cfg = bench_scenario(static_cast<int>(state.range(0)));
    const StateVector psi = initial_state_vector(cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::dense_evolve(cfg, psi));
    }
}
BENCHMARK(BM_DenseOracle)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_PermuteIndex(benchmark::State &state) {
    const ChainUnitary u(static_cast<int>(state.range(0)));
    const BasisIndex mask = dimension(u.spins()) - 1;
    BasisIndex b = 0;
    for (auto _ : state) {
        b = u.permute_index((b * 6364136223846793005ULL + 1442695040888963407ULL) & mask);
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(BM_PermuteIndex)->Arg(8)->Arg(20)->Arg(40)->Arg(62);

void BM_GhzLargeRegister(benchmark::State &state) {
    protocols::GhzScenario g;
    g.n = static_cast<int>(state.range(0));
    g.time = TimeGrid{0.0, protocols::ghz_target_time(g.target, g.gamma_x), 200};
    for (auto _ : state) {
        benchmark::DoNotOptimize(protocols::run_ghz(g));
    }
}
BENCHMARK(BM_GhzLargeRegister)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_CoolingN5(benchmark::State &state) {
    protocols::CoolingScenario s;
    s.n = 5;
    s.omega = {9, 7, 5, 4, 3};
    s.nu = protocols::resonant_nu(5, s.omega);
    s.weights.assign(16, 0.04);
    s.weights[0] = 0.4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(protocols::run_cooling(s));
    }
}
BENCHMARK(BM_CoolingN5)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
