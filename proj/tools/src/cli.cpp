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

#include "nwise_cli/cli.hpp"

#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "nwise/errors.hpp"
#include "nwise/oracle.hpp"
#include "nwise/protocols.hpp"
#include "nwise/report.hpp"
#include "nwise/sampling.hpp"
#include "nwise/scenario_io.hpp"

namespace nwise::cli {

namespace {

struct CommonFlags {
    std::string scenario;
    std::string out;
    std::string format = "csv";
    bool oracle = false;
    double tol = 1e-7;
    int steps_per_period = 256;
};

PropagatorOptions propagator(const CommonFlags &f) {
    PropagatorOptions o;
    o.steps_per_period = f.steps_per_period;
    o.validate();
    return o;
}

std::string fmt(double x) { return io::format_real(x); }

// Writes a report to path, or to out when path is empty.
void deliver(const std::string &path, const std::string &report, std::ostream &out) {
    if (path.empty()) {
        out << report;
    } else {
        io::write_file(path, report);
        out << "report: " << path << "\n";
    }
}

int run_ghz(const CommonFlags &f, std::ostream &out) {
    const io::Scenario sc = io::parse_scenario(f.scenario);
    const auto *ghz = std::get_if<protocols::GhzScenario>(&sc.protocol);
    if (ghz == nullptr) {
        throw UsageError("run-ghz needs a scenario with a ghz protocol section");
    }
    const io::SeriesFormat format = io::parse_series_format(f.format);
    protocols::RunOptions opts{propagator(f), f.oracle};
    const auto result = protocols::run_ghz(*ghz, opts);

    std::vector<io::TimeSeriesRecord> rows;
    for (const auto &s : result.samples) {
        io::TimeSeriesRecord r;
        r.t = s.t;
        r.tau = ghz->gamma_x * s.t;
        r.observables = {{"P_minus", s.p_minus},
                         {"P_plus", s.p_plus},
                         {"ghz_fidelity", s.ghz_fidelity},
                         {"leakage", s.leakage}};
        rows.push_back(std::move(r));
    }
    io::TrajectoryInfo traj{f.out, f.format, static_cast<long long>(rows.size()), 0};
    const auto series = io::format_timeseries(rows, format);
    traj.clamped = series.clamped;
    const auto &last = result.samples.back();
    out << "P_minus(final): " << fmt(last.p_minus) << "\n"
        << "ghz_fidelity(final): " << fmt(last.ghz_fidelity) << "\n"
        << "max_leakage: " << fmt(result.max_leakage) << "\n";
    if (result.oracle_max_gap) {
        out << "oracle_max_gap: " << fmt(*result.oracle_max_gap) << "\n";
    }
    const std::string report =
        io::ghz_report(sc, {opts.propagator, result.steps}, result, traj);
    if (f.out.empty()) {
        out << series.text << report;
        return kExitOk;
    }
    io::write_file(f.out, series.text);
    out << "trajectory: " << f.out << "\n";
    deliver(f.out + ".report.json", report, out);
    return kExitOk;
}

int run_cooling(const CommonFlags &f, std::ostream &out) {
    const io::Scenario sc = io::parse_scenario(f.scenario);
    const auto *cool = std::get_if<protocols::CoolingScenario>(&sc.protocol);
    if (cool == nullptr) {
        throw UsageError("run-cooling needs a scenario with a cooling protocol section");
    }
    const io::SeriesFormat format = io::parse_series_format(f.format);
    protocols::RunOptions opts{propagator(f), f.oracle};
    const auto result = protocols::run_cooling(*cool, opts);
    const auto map = protocols::selectivity_map(*cool, opts.propagator);

    std::vector<io::TimeSeriesRecord> rows;
    for (const auto &s : result.samples) {
        io::TimeSeriesRecord r;
        r.t = s.t;
        r.observables = {{"P_success", s.p_success},
                         {"conditional_fidelity", s.conditional_fidelity}};
        rows.push_back(std::move(r));
    }
    out << "success_probability: " << fmt(result.success_probability) << "\n"
        << "conditional_fidelity: " << fmt(result.conditional_fidelity) << "\n"
        << "max_leakage: " << fmt(result.max_leakage) << "\n"
        << "resonance_as_intended: " << (result.resonance_as_intended ? "yes" : "no")
        << "\n"
        << "wall_seconds: " << fmt(result.wall_seconds) << "\n";
    if (result.oracle) {
        out << "oracle_success_probability: " << fmt(result.oracle->success_probability)
            << "\n"
            << "oracle_conditional_fidelity: " << fmt(result.oracle->conditional_fidelity)
            << "\n";
    }
    const std::string report =
        io::cooling_report(sc, {opts.propagator, result.steps}, result, map);
    const auto series = io::format_timeseries(rows, format);
    if (f.out.empty()) {
        out << series.text << report;
        return kExitOk;
    }
    io::write_file(f.out, series.text);
    out << "trajectory: " << f.out << "\n";
    deliver(f.out + ".report.json", report, out);
    return kExitOk;
}

int run_spectrum(const CommonFlags &f, double at, std::ostream &out) {
    const io::Scenario sc = io::parse_scenario(f.scenario);
    const auto pairs = static_spectrum(sc.config, at);
    deliver(f.out, io::spectrum_report(sc, at, pairs), out);
    return kExitOk;
}

int run_compare(const CommonFlags &f, std::ostream &out) {
    const io::Scenario sc = io::parse_scenario(f.scenario);
    const PropagatorOptions opts = propagator(f);
    const auto rep = oracle::compare(sc.config, opts);
    out << "max_gap: " << fmt(rep.max_gap) << "\n"
        << "tolerance: " << fmt(f.tol) << "\n";
    if (rep.sub_resolution) {
        out << "warning: sub-resolution grid (" << rep.engine_steps_per_period
            << " steps per period < " << oracle::kMinResolvedStepsPerPeriod << ")\n";
    }
    deliver(f.out, io::compare_report(sc, {opts, rep.engine_steps}, rep, f.tol), out);
    if (!(rep.max_gap < f.tol)) {
        throw NumericalError("engine/oracle gap " + fmt(rep.max_gap) + " exceeds tolerance " +
                             fmt(f.tol));
    }
    return kExitOk;
}

int run_verify(int n, const std::string &ordering_text, int draws, std::uint64_t seed,
               double tol, const std::string &out_path, std::ostream &out) {
    if (n < 2 || n > kDenseCap) {
        throw UsageError("verify-transform needs 2 <= n <= " + std::to_string(kDenseCap));
    }
    if (draws < 1) {
        throw UsageError("verify-transform needs --draws >= 1");
    }
    ChainOrdering ordering;
    if (ordering_text == "forward") {
        ordering = ChainOrdering::forward;
    } else if (ordering_text == "reverse") {
        ordering = ChainOrdering::reverse;
    } else {
        throw UsageError("unknown ordering '" + ordering_text + "' (forward or reverse)");
    }
    io::TransformRun run{n, ordering, draws, seed, tol, {}};
    ScenarioSampler sampler(seed);
    char line[160];
    std::snprintf(line, sizeof line, "%5s %14s %14s %14s\n", "draw", "commutator",
                  "off_block", "block_error");
    out << line;
    for (int d = 0; d < draws; ++d) {
        const ScenarioConfig cfg = sampler.constant_scenario(n);
        const auto rep = oracle::verify_block_structure(cfg, 0.0, ordering);
        std::snprintf(line, sizeof line, "%5d %14.3e %14.3e %14.3e\n", d,
                      rep.max_commutator_residual, rep.max_off_block, rep.max_block_mismatch);
        out << line;
        run.reports.push_back(rep);
    }
    double worst = 0.0;
    for (const auto &r : run.reports) {
        worst = std::max(worst, r.worst());
    }
    out << "worst_residual: " << fmt(worst) << " (tolerance " << fmt(tol) << ")\n";
    if (!out_path.empty()) {
        deliver(out_path, io::transform_report(run), out);
    }
    if (!(worst < tol)) {
        throw NumericalError("chain ordering '" + ordering_text +
                             "' does not block-diagonalize H (residual " + fmt(worst) + ")");
    }
    return kExitOk;
}

void error_line(std::ostream &err, const char *kind, int code, const std::string &message) {
    nlohmann::json j = {{"error", {{"kind", kind}, {"exit_code", code}, {"message", message}}}};
    err << j.dump() << "\n";
}

} // namespace

int exit_code_for(const std::exception &e) {
    if (dynamic_cast<const IoError *>(&e) != nullptr) {
        return kExitIo;
    }
    if (dynamic_cast<const NumericalError *>(&e) != nullptr) {
        return kExitNumerical;
    }
    return kExitValidation;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Uniform N-wise spin interaction simulator"};
    app.set_version_flag("--version", std::string(io::kVersion));
    app.require_subcommand(1);

    CommonFlags ghz_f;
    CommonFlags cool_f;
    CommonFlags spec_f;
    CommonFlags cmp_f;
    auto add_common = [](CLI::App *sub, CommonFlags &f, bool series) {
        sub->add_option("--scenario", f.scenario, "Scenario file (JSON)")->required();
        sub->add_option("--out", f.out, "Output path (stdout when omitted)");
        if (series) {
            sub->add_option("--format", f.format, "Time-series format")
                ->check(CLI::IsMember({"csv", "json"}));
        }
        sub->add_flag("--oracle", f.oracle, "Cross-check against the dense oracle");
        sub->add_option("--tol", f.tol, "Tolerance")->capture_default_str();
        sub->add_option("--steps-per-period", f.steps_per_period,
                        "Integration steps per characteristic period")
            ->capture_default_str();
    };

    auto *ghz = app.add_subcommand("run-ghz", "GHZ generation / full inversion");
    add_common(ghz, ghz_f, true);
    auto *cool = app.add_subcommand("run-cooling", "Selective-interaction cooling");
    add_common(cool, cool_f, true);
    auto *spec = app.add_subcommand("spectrum", "Instantaneous spectrum of H(t)");
    add_common(spec, spec_f, false);
    double at = 0.0;
    spec->add_option("--at", at, "Time at which H is diagonalized")->capture_default_str();
    auto *cmp = app.add_subcommand("compare", "Decomposed engine vs dense oracle");
    add_common(cmp, cmp_f, false);

    auto *ver = app.add_subcommand("verify-transform",
                                   "Check that the chain unitary block-diagonalizes H");
    int n = 3;
    std::string ordering = "forward";
    int draws = 20;
    std::uint64_t seed = 1;
    double vtol = 1e-10;
    std::string vout;
    ver->add_option("--n", n, "Spin count")->required();
    ver->add_option("--ordering", ordering, "forward or reverse")->capture_default_str();
    ver->add_option("--draws", draws, "Random parameter draws")->capture_default_str();
    ver->add_option("--seed", seed, "Random seed")->capture_default_str();
    ver->add_option("--tol", vtol, "Residual tolerance")->capture_default_str();
    ver->add_option("--out", vout, "Report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion &) {
        out << io::kVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        error_line(err, "usage", kExitValidation, e.what());
        return kExitValidation;
    }

    try {
        if (ghz->parsed()) {
            return run_ghz(ghz_f, out);
        }
        if (cool->parsed()) {
            return run_cooling(cool_f, out);
        }
        if (spec->parsed()) {
            return run_spectrum(spec_f, at, out);
        }
        if (cmp->parsed()) {
            return run_compare(cmp_f, out);
        }
        return run_verify(n, ordering, draws, seed, vtol, vout, out);
    } catch (const Error &e) {
        const int code = exit_code_for(e);
        error_line(err, e.kind(), code, e.what());
        return code;
    } catch (const std::exception &e) {
        error_line(err, "internal", kExitNumerical, e.what());
        return kExitNumerical;
    }
}

} // namespace nwise::cli
