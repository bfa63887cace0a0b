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

// Run reports: JSON documents with sorted keys holding the resolved
// scenario, the engine settings, the results and a SHA-256 of the inputs.
// Nothing time- or host-dependent is written, so identical inputs give
// byte-identical reports.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nwise/dynamics.hpp"
#include "nwise/oracle.hpp"
#include "nwise/protocols.hpp"
#include "nwise/scenario_io.hpp"
#include "nwise/subspace.hpp"

namespace nwise::io {

inline constexpr const char *kVersion = "0.1.0";

std::string sha256_hex(std::string_view data);

struct EngineInfo {
    PropagatorOptions options;
    long long steps = 0;
};

struct TrajectoryInfo {
    std::string path;
    std::string format;
    long long rows = 0;
    long long clamped = 0;
};

std::string ghz_report(const Scenario &s, const EngineInfo &engine,
                       const protocols::GhzResult &result, const TrajectoryInfo &trajectory);

std::string cooling_report(const Scenario &s, const EngineInfo &engine,
                           const protocols::CoolingReport &result,
                           const protocols::SelectivityMap &map);

std::string spectrum_report(const Scenario &s, double t, const std::vector<Eigenpair> &pairs);

std::string compare_report(const Scenario &s, const EngineInfo &engine,
                           const oracle::CompareReport &result, double tolerance);

struct TransformRun {
    int n = 2;
    ChainOrdering ordering = ChainOrdering::forward;
    int draws = 0;
    std::uint64_t seed = 0;
    double tolerance = 1e-10;
    std::vector<oracle::BlockStructureReport> reports;
};

std::string transform_report(const TransformRun &run);

} // namespace nwise::io
