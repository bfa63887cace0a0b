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

#include "nwise/scenario_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

#include "nwise/errors.hpp"
#include "json_codec.hpp"

namespace nwise::io {

using json = nlohmann::json;

namespace {

constexpr int kDefaultSteps = 200;

[[noreturn]] void fail(const std::string &path, const std::string &message) {
    throw ParseError((path.empty() ? std::string("/") : path) + ": " + message);
}

void expect_keys(const json &j, const std::string &path,
                 std::initializer_list<const char *> allowed) {
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto &[key, value] : j.items()) {
        if (!ok.contains(key)) {
            fail(path + "/" + key, "unknown key");
        }
    }
}

const json *find(const json &j, const char *key) {
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double real_at(const json &j, const std::string &path, const char *key,
               std::optional<double> fallback = std::nullopt) {
    const json *v = find(j, key);
    if (v == nullptr) {
        if (!fallback) {
            fail(path + "/" + key, "missing required number");
        }
        return *fallback;
    }
    if (!v->is_number()) {
        fail(path + "/" + key, "expected a number");
    }
    const double x = v->get<double>();
    if (!std::isfinite(x)) {
        fail(path + "/" + key, "must be finite");
    }
    return x;
}

std::int64_t integer_at(const json &j, const std::string &path, const char *key,
                        std::optional<std::int64_t> fallback = std::nullopt) {
    const json *v = find(j, key);
    if (v == nullptr) {
        if (!fallback) {
            fail(path + "/" + key, "missing required integer");
        }
        return *fallback;
    }
    if (!v->is_number_integer()) {
        fail(path + "/" + key, "expected an integer");
    }
    return v->get<std::int64_t>();
}

std::string string_at(const json &j, const std::string &path, const char *key,
                      std::optional<std::string> fallback = std::nullopt) {
    const json *v = find(j, key);
    if (v == nullptr) {
        if (!fallback) {
            fail(path + "/" + key, "missing required string");
        }
        return *fallback;
    }
    if (!v->is_string()) {
        fail(path + "/" + key, "expected a string");
    }
    return v->get<std::string>();
}

std::vector<double> reals_at(const json &j, const std::string &path, const char *key) {
    const json *v = find(j, key);
    if (v == nullptr) {
        fail(path + "/" + key, "missing required array");
    }
    if (!v->is_array()) {
        fail(path + "/" + key, "expected an array of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
        const json &e = (*v)[i];
        if (!e.is_number() || !std::isfinite(e.get<double>())) {
            fail(path + "/" + key + "/" + std::to_string(i), "expected a finite number");
        }
        out.push_back(e.get<double>());
    }
    return out;
}

int small_int(std::int64_t v, const std::string &path, std::int64_t lo, std::int64_t hi) {
    if (v < lo || v > hi) {
        fail(path, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return static_cast<int>(v);
}

// Runs a validate() call and maps its usage or capacity error to a parse
// error at path.
template <typename F>
void checked(const std::string &path, F &&f) {
    try {
        f();
    } catch (const UsageError &e) {
        fail(path, e.what());
    } catch (const CapacityError &e) {
        fail(path, e.what());
    } catch (const DomainError &e) {
        fail(path, e.what());
    }
}

} // namespace

Driver parse_driver(const json &j, const std::string &path) {
    if (!j.is_object()) {
        fail(path, "expected a driver object");
    }
    const std::string kind = string_at(j, path, "kind");
    Driver d;
    if (kind == "constant") {
        expect_keys(j, path, {"kind", "value"});
        d = ConstantDriver{real_at(j, path, "value")};
    } else if (kind == "cosine" || kind == "sine") {
        expect_keys(j, path, {"kind", "amplitude", "angular_frequency", "phase"});
        const double a = real_at(j, path, "amplitude");
        const double w = real_at(j, path, "angular_frequency");
        const double p = real_at(j, path, "phase", 0.0);
        if (kind == "cosine") {
            d = CosineDriver{a, w, p};
        } else {
            d = SineDriver{a, w, p};
        }
    } else if (kind == "linear-ramp") {
        expect_keys(j, path, {"kind", "slope", "offset"});
        d = LinearRampDriver{real_at(j, path, "slope"), real_at(j, path, "offset", 0.0)};
    } else if (kind == "sech-pulse") {
        expect_keys(j, path, {"kind", "amplitude", "width", "center"});
        d = SechPulseDriver{real_at(j, path, "amplitude"), real_at(j, path, "width"),
                            real_at(j, path, "center", 0.0)};
    } else if (kind == "tabulated") {
        expect_keys(j, path, {"kind", "times", "values"});
        d = TabulatedDriver{reals_at(j, path, "times"), reals_at(j, path, "values")};
    } else {
        fail(path + "/kind", "unknown driver kind '" + kind + "'");
    }
    checked(path, [&] { validate_driver(d); });
    return d;
}

json driver_to_json(const Driver &d) {
    return std::visit(
        [](const auto &v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ConstantDriver>) {
                return {{"kind", "constant"}, {"value", v.value}};
            } else if constexpr (std::is_same_v<T, CosineDriver>) {
                return {{"kind", "cosine"},
                        {"amplitude", v.amplitude},
                        {"angular_frequency", v.angular_frequency},
                        {"phase", v.phase}};
            } else if constexpr (std::is_same_v<T, SineDriver>) {
                return {{"kind", "sine"},
                        {"amplitude", v.amplitude},
                        {"angular_frequency", v.angular_frequency},
                        {"phase", v.phase}};
            } else if constexpr (std::is_same_v<T, LinearRampDriver>) {
                return {{"kind", "linear-ramp"}, {"slope", v.slope}, {"offset", v.offset}};
            } else if constexpr (std::is_same_v<T, SechPulseDriver>) {
                return {{"kind", "sech-pulse"},
                        {"amplitude", v.amplitude},
                        {"width", v.width},
                        {"center", v.center}};
            } else {
                return {{"kind", "tabulated"}, {"times", v.times}, {"values", v.values}};
            }
        },
        d);
}

namespace {

FieldSchedule parse_fields(const json &j, const std::string &path, int n) {
    if (!j.is_array()) {
        fail(path, "expected an array of drivers");
    }
    if (j.size() != static_cast<std::size_t>(n)) {
        fail(path, "expected " + std::to_string(n) + " drivers, one per spin (got " +
                       std::to_string(j.size()) + ")");
    }
    FieldSchedule f;
    for (std::size_t i = 0; i < j.size(); ++i) {
        f.omega.push_back(parse_driver(j[i], path + "/" + std::to_string(i)));
    }
    return f;
}

CouplingSchedule parse_couplings(const json &j, const std::string &path) {
    expect_keys(j, path, {"x", "y", "z"});
    CouplingSchedule c;
    if (const json *v = find(j, "x")) {
        c.x = parse_driver(*v, path + "/x");
    }
    if (const json *v = find(j, "y")) {
        c.y = parse_driver(*v, path + "/y");
    }
    if (const json *v = find(j, "z")) {
        c.z = parse_driver(*v, path + "/z");
    }
    return c;
}

TimeGrid parse_time(const json &j, const std::string &path) {
    expect_keys(j, path, {"t0", "t1", "steps"});
    TimeGrid g;
    g.t0 = real_at(j, path, "t0");
    g.t1 = real_at(j, path, "t1");
    g.steps = small_int(integer_at(j, path, "steps"), path + "/steps", 1, 100000000);
    if (g.t1 < g.t0) {
        fail(path, "t1 must be >= t0");
    }
    return g;
}

BasisIndex parse_index(const json &j, const std::string &path, int n) {
    const json *v = find(j, "index");
    if (v == nullptr) {
        fail(path + "/index", "missing required integer");
    }
    if (!v->is_number_unsigned()) {
        fail(path + "/index", "expected a non-negative integer");
    }
    const auto idx = v->get<std::uint64_t>();
    if (idx >= dimension(n)) {
        fail(path + "/index", "basis index out of range for n=" + std::to_string(n));
    }
    return idx;
}

InitialState parse_initial(const json &j, const std::string &path, int n) {
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    const std::string kind = string_at(j, path, "kind");
    if (kind == "basis") {
        expect_keys(j, path, {"kind", "index"});
        return BasisStateInit{parse_index(j, path, n)};
    }
    if (kind == "ghz-pair") {
        expect_keys(j, path, {"kind", "index", "phase"});
        return GhzPairInit{parse_index(j, path, n), real_at(j, path, "phase", 0.0)};
    }
    if (kind == "mixture") {
        expect_keys(j, path, {"kind", "weights"});
        DiagonalMixtureInit m{reals_at(j, path, "weights")};
        if (m.weights.size() != dimension(n)) {
            fail(path + "/weights", "expected 2^n = " + std::to_string(dimension(n)) +
                                        " weights (got " + std::to_string(m.weights.size()) +
                                        ")");
        }
        double total = 0.0;
        for (double w : m.weights) {
            if (w < 0.0) {
                fail(path + "/weights", "weights must be nonnegative");
            }
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-12) {
            fail(path + "/weights", "normalization: weights sum to " + format_real(total) +
                                        ", expected 1 within 1e-12");
        }
        return m;
    }
    fail(path + "/kind", "unknown initial-state kind '" + kind + "'");
}

json initial_to_json(const InitialState &s) {
    return std::visit(
        [](const auto &v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BasisStateInit>) {
                return {{"kind", "basis"}, {"index", v.index}};
            } else if constexpr (std::is_same_v<T, GhzPairInit>) {
                return {{"kind", "ghz-pair"}, {"index", v.index}, {"phase", v.phase}};
            } else {
                return {{"kind", "mixture"}, {"weights", v.weights}};
            }
        },
        s);
}

json time_to_json(const TimeGrid &g) {
    return {{"t0", g.t0}, {"t1", g.t1}, {"steps", g.steps}};
}

json couplings_to_json(const CouplingSchedule &c) {
    return {{"x", driver_to_json(c.x)}, {"y", driver_to_json(c.y)}, {"z", driver_to_json(c.z)}};
}

json fields_to_json(const FieldSchedule &f) {
    json out = json::array();
    for (const auto &d : f.omega) {
        out.push_back(driver_to_json(d));
    }
    return out;
}

protocols::GhzScenario parse_ghz(const json &j, const std::string &path, int n,
                                 const json *time) {
    expect_keys(j, path, {"kind", "gamma_x", "omega1", "target"});
    protocols::GhzScenario s;
    s.n = n;
    s.gamma_x = real_at(j, path, "gamma_x");
    if (const json *v = find(j, "omega1")) {
        s.omega1 = parse_driver(*v, path + "/omega1");
    }
    const std::string target = string_at(j, path, "target", std::string("full"));
    if (target == "half") {
        s.target = protocols::GhzTarget::half;
    } else if (target == "full") {
        s.target = protocols::GhzTarget::full;
    } else {
        fail(path + "/target", "expected 'half' or 'full'");
    }
    if (time != nullptr) {
        s.time = parse_time(*time, "/time");
    } else {
        double t1 = 0.0;
        checked(path + "/gamma_x", [&] { t1 = protocols::ghz_target_time(s.target, s.gamma_x); });
        s.time = TimeGrid{0.0, t1, kDefaultSteps};
    }
    checked(path, [&] { s.validate(); });
    return s;
}

protocols::CoolingScenario parse_cooling(const json &j, const std::string &path, int n) {
    expect_keys(j, path,
                {"kind", "mode", "omega", "gamma", "nu", "weights", "duration", "steps"});
    protocols::CoolingScenario s;
    s.n = n;
    const std::string mode = string_at(j, path, "mode");
    if (mode == "odd-exact") {
        s.mode = protocols::CoolingMode::odd_exact;
    } else if (mode == "even-rwa") {
        s.mode = protocols::CoolingMode::even_rwa;
    } else {
        fail(path + "/mode", "expected 'odd-exact' or 'even-rwa'");
    }
    s.omega = reals_at(j, path, "omega");
    s.gamma = real_at(j, path, "gamma");
    s.weights = reals_at(j, path, "weights");
    s.steps = small_int(integer_at(j, path, "steps", kDefaultSteps), path + "/steps", 1,
                        100000000);
    if (const json *v = find(j, "duration"); v != nullptr && !v->is_string()) {
        s.duration = real_at(j, path, "duration");
    } else if (v != nullptr && v->get<std::string>() != "pi-pulse") {
        fail(path + "/duration", "expected a number or 'pi-pulse'");
    }
    const json *nu = find(j, "nu");
    const bool resonant = nu != nullptr && nu->is_string();
    if (resonant && nu->get<std::string>() != "resonant") {
        fail(path + "/nu", "expected a number or 'resonant'");
    }
    if (!resonant) {
        s.nu = real_at(j, path, "nu");
    }
    checked(path, [&] {
        if (resonant) {
            s.nu = protocols::resonant_nu(n, s.omega);
        }
        s.validate();
    });
    return s;
}

json protocol_to_json(const ProtocolSpec &p) {
    if (const auto *g = std::get_if<protocols::GhzScenario>(&p)) {
        return {{"kind", "ghz"},
                {"gamma_x", g->gamma_x},
                {"omega1", driver_to_json(g->omega1)},
                {"target", protocols::to_string(g->target)}};
    }
    const auto &c = std::get<protocols::CoolingScenario>(p);
    json out = {{"kind", "cooling"},
                {"mode", protocols::to_string(c.mode)},
                {"omega", c.omega},
                {"gamma", c.gamma},
                {"nu", c.nu},
                {"weights", c.weights},
                {"steps", c.steps}};
    if (c.duration) {
        out["duration"] = *c.duration;
    } else {
        out["duration"] = "pi-pulse";
    }
    return out;
}

} // namespace

json scenario_to_json(const Scenario &s) {
    json out;
    out["system"] = {{"n", s.config.n}};
    out["fields"] = fields_to_json(s.config.fields);
    out["couplings"] = couplings_to_json(s.config.couplings);
    out["time"] = time_to_json(s.config.time);
    out["initial"] = initial_to_json(s.config.initial);
    if (!std::holds_alternative<std::monostate>(s.protocol)) {
        out["protocol"] = protocol_to_json(s.protocol);
    }
    return out;
}

Scenario parse_scenario_text(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("syntax: ") + e.what());
    }
    expect_keys(root, "", {"system", "fields", "couplings", "time", "initial", "protocol"});
    const json *system = find(root, "system");
    if (system == nullptr) {
        fail("/system", "missing required section");
    }
    expect_keys(*system, "/system", {"n"});
    const int n = small_int(integer_at(*system, "/system", "n"), "/system/n", 2, kMaxSpins);

    Scenario s;
    const json *protocol = find(root, "protocol");
    if (protocol != nullptr) {
        if (!protocol->is_object()) {
            fail("/protocol", "expected an object");
        }
        const std::string kind = string_at(*protocol, "/protocol", "kind");
        if (kind == "ghz") {
            const auto g = parse_ghz(*protocol, "/protocol", n, find(root, "time"));
            s.config = g.to_config();
            s.protocol = g;
        } else if (kind == "cooling") {
            const auto c = parse_cooling(*protocol, "/protocol", n);
            s.config = c.to_config();
            s.protocol = c;
        } else {
            fail("/protocol/kind", "unknown protocol '" + kind + "'");
        }
        auto agree = [&](const char *key, auto parsed, const auto &expected) {
            if (parsed != expected) {
                fail(std::string("/") + key, "disagrees with the " + kind + " protocol");
            }
        };
        if (const json *v = find(root, "fields")) {
            agree("fields", parse_fields(*v, "/fields", n), s.config.fields);
        }
        if (const json *v = find(root, "couplings")) {
            agree("couplings", parse_couplings(*v, "/couplings"), s.config.couplings);
        }
        if (const json *v = find(root, "initial")) {
            agree("initial", parse_initial(*v, "/initial", n), s.config.initial);
        }
        if (const json *v = find(root, "time"); v != nullptr && kind == "cooling") {
            agree("time", parse_time(*v, "/time"), s.config.time);
        }
        return s;
    }

    for (const char *key : {"fields", "couplings", "time", "initial"}) {
        if (find(root, key) == nullptr) {
            fail(std::string("/") + key, "missing required section");
        }
    }
    s.config.n = n;
    s.config.fields = parse_fields(root["fields"], "/fields", n);
    s.config.couplings = parse_couplings(root["couplings"], "/couplings");
    s.config.time = parse_time(root["time"], "/time");
    s.config.initial = parse_initial(root["initial"], "/initial", n);
    checked("/", [&] { s.config.validate(); });
    return s;
}

Scenario parse_scenario(const std::filesystem::path &path) {
    const std::string text = read_file(path);
    try {
        return parse_scenario_text(text);
    } catch (const ParseError &e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::string echo_scenario(const Scenario &s) { return scenario_to_json(s).dump(2) + "\n"; }

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("error while reading '" + path.string() + "'");
    }
    return buf.str();
}

void write_file(const std::filesystem::path &path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
        throw IoError("error while writing '" + path.string() + "'");
    }
}

SeriesFormat parse_series_format(std::string_view text) {
    if (text == "csv") {
        return SeriesFormat::csv;
    }
    if (text == "json") {
        return SeriesFormat::json;
    }
    throw UsageError("unknown format '" + std::string(text) + "' (expected csv or json)");
}

bool is_probability_column(std::string_view name) {
    return name.starts_with("P_") || name.ends_with("fidelity") || name.ends_with("leakage");
}

std::string format_real(double x) {
    if (x == 0.0) {
        return "0";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

SeriesText format_timeseries(const std::vector<TimeSeriesRecord> &records,
                             SeriesFormat format) {
    if (records.empty()) {
        throw UsageError("time series is empty; refusing to write an empty file");
    }
    const bool has_tau = records.front().tau.has_value();
    std::vector<std::string> names;
    for (const auto &[name, value] : records.front().observables) {
        names.push_back(name);
    }
    SeriesText out;
    auto shown = [&](const std::string &name, double v) {
        if (is_probability_column(name) && (v < 0.0 || v > 1.0)) {
            ++out.clamped;
            return std::clamp(v, 0.0, 1.0);
        }
        return v;
    };
    for (const auto &r : records) {
        if (r.tau.has_value() != has_tau || r.observables.size() != names.size() ||
            !std::equal(names.begin(), names.end(), r.observables.begin(),
                        [](const std::string &a, const auto &kv) { return a == kv.first; })) {
            throw UsageError("time series records disagree on their columns");
        }
    }
    if (format == SeriesFormat::csv) {
        std::string text = "t";
        if (has_tau) {
            text += ",tau";
        }
        for (const auto &name : names) {
            text += "," + name;
        }
        text += "\n";
        for (const auto &r : records) {
            text += format_real(r.t);
            if (has_tau) {
                text += "," + format_real(*r.tau);
            }
            for (const auto &[name, value] : r.observables) {
                text += "," + format_real(shown(name, value));
            }
            text += "\n";
        }
        out.text = std::move(text);
        return out;
    }
    json arr = json::array();
    for (const auto &r : records) {
        json row;
        row["t"] = r.t;
        if (has_tau) {
            row["tau"] = *r.tau;
        }
        for (const auto &[name, value] : r.observables) {
            row[name] = shown(name, value);
        }
        arr.push_back(std::move(row));
    }
    out.text = arr.dump(2) + "\n";
    return out;
}

long long emit_timeseries(const std::vector<TimeSeriesRecord> &records, SeriesFormat format,
                          const std::filesystem::path &path) {
    const SeriesText s = format_timeseries(records, format);
    write_file(path, s.text);
    return s.clamped;
}

} // namespace nwise::io
