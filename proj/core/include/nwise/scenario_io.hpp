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

// Scenario files are JSON documents with the sections
//
//   system     {"n": 3}
//   fields     [driver, ...]                 one per spin
//   couplings  {"x": driver, "y": driver, "z": driver}
//   time       {"t0": 0, "t1": 1, "steps": 100}
//   initial    {"kind": "basis" | "ghz-pair" | "mixture", ...}
//   protocol   {"kind": "ghz" | "cooling", ...}            optional
//
// A driver is {"kind": "constant" | "cosine" | "sine" | "linear-ramp" |
// "sech-pulse" | "tabulated", ...parameters}. With a protocol section the
// fields, couplings and initial sections (and time for cooling) follow from
// the protocol and may be omitted; when present they must agree with it.
// Unknown keys are rejected.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nwise/model.hpp"
#include "nwise/protocols.hpp"

namespace nwise::io {

using ProtocolSpec =
    std::variant<std::monostate, protocols::GhzScenario, protocols::CoolingScenario>;

struct Scenario {
    ScenarioConfig config;
    ProtocolSpec protocol;
};

/// Throws ParseError with the JSON path (or line and column for syntax
/// errors) and the violated rule.
Scenario parse_scenario_text(std::string_view text);

/// Throws IoError when the file cannot be read.
Scenario parse_scenario(const std::filesystem::path &path);

/// Fully materialized scenario as pretty-printed JSON with sorted keys.
/// parse_scenario_text(echo_scenario(s)) reproduces s.
std::string echo_scenario(const Scenario &s);

std::string read_file(const std::filesystem::path &path);
/// Writes atomically enough for a CLI: truncates, writes, checks the stream.
void write_file(const std::filesystem::path &path, std::string_view content);

enum class SeriesFormat { csv, json };

SeriesFormat parse_series_format(std::string_view text);

struct TimeSeriesRecord {
    double t = 0.0;
    std::optional<double> tau;
    std::map<std::string, double> observables;
};

/// Columns named P_*, *fidelity or *leakage are probabilities.
bool is_probability_column(std::string_view name);

struct SeriesText {
    std::string text;
    /// Probability values that had to be clamped into [0, 1] for display.
    long long clamped = 0;
};

/// CSV: header t[,tau],observables sorted by name; 17 significant digits;
/// LF line endings. JSON: array of objects with the same keys. Every record
/// must carry the same observable names and the same tau presence. Throws
/// UsageError for an empty record list.
SeriesText format_timeseries(const std::vector<TimeSeriesRecord> &records,
                             SeriesFormat format);

/// format_timeseries() written to path; IoError when the path is unwritable.
long long emit_timeseries(const std::vector<TimeSeriesRecord> &records,
                          SeriesFormat format, const std::filesystem::path &path);

/// "%.17g" rendering used by every text output.
std::string format_real(double x);

} // namespace nwise::io
