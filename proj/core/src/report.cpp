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

#include "nwise/report.hpp"

#include <array>
#include <cmath>
#include <cstdio>

#include <openssl/evp.h>

#include "json.hpp"

#include "json_codec.hpp"
#include "nwise/errors.hpp"

namespace nwise::io {

using json = nlohmann::json;

namespace {

json engine_json(const EngineInfo &e) {
    return {{"method", to_string(e.options.method)},
            {"steps_per_period", e.options.steps_per_period},
            {"norm_tolerance", e.options.norm_tolerance},
            {"integration_steps", e.steps}};
}

// Infinite or NaN values are not representable in JSON; they are written as
// strings.
json real(double x) {
    if (std::isfinite(x)) {
        return x;
    }
    if (std::isnan(x)) {
        return "nan";
    }
    return x > 0 ? "inf" : "-inf";
}

std::string finish(const std::string &command, json scenario, json engine, json results) {
    json inputs = {{"command", command}, {"version", kVersion}, {"scenario", scenario},
                   {"engine", engine}};
    // Integration step counts are outputs, not inputs.
    if (inputs["engine"].is_object()) {
        inputs["engine"].erase("integration_steps");
    }
    json out;
    out["tool"] = "nwise";
    out["version"] = kVersion;
    out["command"] = command;
    out["scenario"] = std::move(scenario);
    out["engine"] = std::move(engine);
    out["results"] = std::move(results);
    out["input_hash"] = sha256_hex(inputs.dump());
    return out.dump(2) + "\n";
}

json labels_json(const std::vector<BasisIndex> &v) {
    json out = json::array();
    for (auto x : v) {
        out.push_back(x);
    }
    return out;
}

} // namespace

std::string sha256_hex(std::string_view data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw NumericalError("SHA-256 computation failed");
    }
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

std::string ghz_report(const Scenario &s, const EngineInfo &engine,
                       const protocols::GhzResult &result, const TrajectoryInfo &trajectory) {
    json r;
    const auto &last = result.samples.back();
    r["final"] = {{"t", last.t},
                  {"P_minus", last.p_minus},
                  {"P_plus", last.p_plus},
                  {"ghz_fidelity", last.ghz_fidelity},
                  {"leakage", last.leakage}};
    r["max_leakage"] = result.max_leakage;
    r["expected_P_minus"] =
        result.expected_p_minus ? json(*result.expected_p_minus) : json(nullptr);
    r["oracle_max_gap"] = result.oracle_max_gap ? json(*result.oracle_max_gap) : json(nullptr);
    r["trajectory"] = {{"path", trajectory.path},
                       {"format", trajectory.format},
                       {"rows", trajectory.rows},
                       {"display_clamps", trajectory.clamped}};
    return finish("run-ghz", scenario_to_json(s), engine_json(engine), std::move(r));
}

std::string cooling_report(const Scenario &s, const EngineInfo &engine,
                           const protocols::CoolingReport &result,
                           const protocols::SelectivityMap &map) {
    json r;
    r["pulse"] = result.pulse;
    r["pi_pulse"] = real(result.pi_pulse);
    r["freezing_ratio"] = real(result.freezing_ratio);
    r["success_probability"] = result.success_probability;
    r["conditional_fidelity"] = result.conditional_fidelity;
    r["max_leakage"] = result.max_leakage;
    r["min_frozen_margin"] = result.min_margin;
    r["resonant_labels"] = labels_json(result.resonant);
    r["resonance_as_intended"] = result.resonance_as_intended;
    json leak = json::array();
    for (const auto &row : result.leakage) {
        leak.push_back({{"label", row.label.str()},
                        {"detuning", row.detuning},
                        {"ceiling", row.ceiling},
                        {"max_transition", row.max_transition},
                        {"margin", row.margin}});
    }
    r["labels"] = std::move(leak);
    json sel = json::array();
    for (const auto &row : map.labels) {
        sel.push_back({{"label", row.label.str()},
                       {"detuning", row.detuning},
                       {"predicted_ceiling", row.predicted_ceiling},
                       {"observed_max", row.observed_max}});
    }
    r["selectivity"] = {{"window", map.window}, {"labels", std::move(sel)}};
    if (result.oracle) {
        r["oracle"] = {{"success_probability", result.oracle->success_probability},
                       {"conditional_fidelity", result.oracle->conditional_fidelity},
                       {"max_density_deviation", result.oracle->max_density_deviation}};
    } else {
        r["oracle"] = nullptr;
    }
    return finish("run-cooling", scenario_to_json(s), engine_json(engine), std::move(r));
}

std::string spectrum_report(const Scenario &s, double t, const std::vector<Eigenpair> &pairs) {
    json rows = json::array();
    for (const auto &p : pairs) {
        rows.push_back({{"energy", p.energy},
                        {"label", p.label.str()},
                        {"support", {p.support.first, p.support.second}},
                        {"amplitudes",
                         {{p.amplitudes(0).real(), p.amplitudes(0).imag()},
                          {p.amplitudes(1).real(), p.amplitudes(1).imag()}}}});
    }
    json r = {{"t", t}, {"eigenpairs", std::move(rows)}};
    return finish("spectrum", scenario_to_json(s), json::object(), std::move(r));
}

std::string compare_report(const Scenario &s, const EngineInfo &engine,
                           const oracle::CompareReport &result, double tolerance) {
    json r;
    r["times"] = result.times;
    r["gaps"] = result.gaps;
    r["max_gap"] = result.max_gap;
    r["tolerance"] = tolerance;
    r["within_tolerance"] = result.max_gap < tolerance;
    r["sub_resolution"] = result.sub_resolution;
    r["engine_steps_per_period"] = result.engine_steps_per_period;
    r["oracle_steps_per_period"] = result.oracle_steps_per_period;
    r["engine_steps"] = result.engine_steps;
    r["oracle_steps"] = result.oracle_steps;
    return finish("compare", scenario_to_json(s), engine_json(engine), std::move(r));
}

std::string transform_report(const TransformRun &run) {
    json draws = json::array();
    double worst = 0.0;
    for (const auto &rep : run.reports) {
        draws.push_back({{"t", rep.t},
                         {"commutator_residuals", rep.commutator_residuals},
                         {"max_off_block", rep.max_off_block},
                         {"max_block_mismatch", rep.max_block_mismatch}});
        worst = std::max(worst, rep.worst());
    }
    json inputs = {{"n", run.n},
                   {"ordering", to_string(run.ordering)},
                   {"draws", run.draws},
                   {"seed", run.seed},
                   {"tolerance", run.tolerance}};
    json r = {{"draws", std::move(draws)},
              {"worst_residual", worst},
              {"passed", worst < run.tolerance}};
    return finish("verify-transform", inputs, json::object(), std::move(r));
}

} // namespace nwise::io
