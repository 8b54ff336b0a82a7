/*
 * Copyright 2026 The rssiloc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "rssiloc/scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "rssiloc/errors.hpp"

namespace rssiloc {

using nlohmann::json;

ScenarioParseError::ScenarioParseError(std::string field, const std::string& message, int line)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string{}) +
                         (field.empty() ? std::string{} : field + ": ") + message),
      field_(std::move(field)),
      message_(message),
      line_(line) {}

namespace {

// Reads one JSON object, remembering which keys were consumed so that any
// leftover key can be rejected.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            fail("", "expected an object");
        }
    }

    std::string path_of(const std::string& key) const { return path_ + "/" + key; }

    [[noreturn]] void fail(const std::string& key, const std::string& message) const {
        throw ScenarioParseError(key.empty() ? (path_.empty() ? "/" : path_) : path_of(key), message);
    }

    const json* find(const std::string& key) {
        seen_.insert(key);
        const auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    const json& require(const std::string& key) {
        const json* v = find(key);
        if (v == nullptr) {
            fail(key, "required field is missing");
        }
        return *v;
    }

    double number(const std::string& key, double fallback) {
        const json* v = find(key);
        return v == nullptr ? fallback : as_number(*v, key);
    }

    double required_number(const std::string& key) { return as_number(require(key), key); }

    long long integer(const std::string& key, long long fallback) {
        const json* v = find(key);
        return v == nullptr ? fallback : as_integer(*v, key);
    }

    long long required_integer(const std::string& key) { return as_integer(require(key), key); }

    double as_number(const json& v, const std::string& key) const {
        if (!v.is_number()) {
            fail(key, "expected a number");
        }
        return v.get<double>();
    }

    long long as_integer(const json& v, const std::string& key) const {
        if (!v.is_number_integer()) {
            fail(key, "expected an integer");
        }
        if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(
                                                                    std::numeric_limits<long long>::max())) {
            fail(key, "integer out of range");
        }
        return v.get<long long>();
    }

    void finish() const {
        for (const auto& item : j_.items()) {
            if (!seen_.contains(item.key())) {
                fail(item.key(), "unknown field");
            }
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

const json& require_array(const json& v, const std::string& path) {
    if (!v.is_array()) {
        throw ScenarioParseError(path, "expected an array");
    }
    return v;
}

template <typename Fn>
auto wrap_domain(const std::string& path, Fn&& fn) {
    try {
        return fn();
    } catch (const DomainError& e) {
        throw ScenarioParseError(path, e.what());
    }
}

std::size_t as_count(long long v, const std::string& path, long long min) {
    if (v < min) {
        throw ScenarioParseError(path, "must be >= " + std::to_string(min));
    }
    return static_cast<std::size_t>(v);
}

Rect parse_roi(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    Rect roi;
    roi.x_min = r.required_number("x_min_m");
    roi.y_min = r.required_number("y_min_m");
    roi.x_max = r.required_number("x_max_m");
    roi.y_max = r.required_number("y_max_m");
    r.finish();
    wrap_domain(path, [&] {
        roi.validate();
        return 0;
    });
    return roi;
}

std::vector<AnchorNode> parse_beacons(const json& j, const std::string& path) {
    std::vector<AnchorNode> out;
    const auto& arr = require_array(j, path);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        ObjectReader r(arr[i], p);
        const long long id = r.required_integer("id");
        if (id < 0 || id > std::numeric_limits<std::uint32_t>::max()) {
            r.fail("id", "node id must be a non-negative 32-bit integer");
        }
        AnchorNode a{NodeId{static_cast<std::uint32_t>(id)}, {r.required_number("x_m"), r.required_number("y_m")}};
        r.finish();
        out.push_back(a);
    }
    return out;
}

std::vector<AnchorNode> parse_deployment(const json& j, const std::string& path, const Rect& roi) {
    ObjectReader r(j, path);
    const double range = r.required_number("range_m");
    const double safety = r.number("safety", 0.9);
    r.finish();
    const auto plan = wrap_domain(path, [&] { return plan_square_grid_deployment(roi, range, safety); });
    std::vector<AnchorNode> out;
    out.reserve(plan.beacons.size());
    for (std::size_t i = 0; i < plan.beacons.size(); ++i) {
        out.push_back({NodeId{static_cast<std::uint32_t>(i)}, plan.beacons[i]});
    }
    return out;
}

std::vector<Point2D> parse_trajectory(const json& j, const std::string& path) {
    std::vector<Point2D> out;
    const auto& arr = require_array(j, path);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        ObjectReader r(arr[i], p);
        const Point2D pt{r.required_number("x_m"), r.required_number("y_m")};
        const std::size_t steps = as_count(r.integer("steps", 1), p + "/steps", 1);
        r.finish();
        if (steps > 100'000'000) {
            r.fail("steps", "too many steps");
        }
        out.insert(out.end(), steps, pt);
    }
    return out;
}

InterfererProfile parse_interferer(ObjectReader& r, const std::string& path) {
    const long long ch = r.required_integer("wifi_channel");
    const WifiChannel w = wrap_domain(path + "/wifi_channel", [&] {
        return WifiChannel(ch < WifiChannel::kFirst || ch > WifiChannel::kLast ? 0 : static_cast<int>(ch));
    });
    InterfererProfile p{w, Dbm{r.required_number("rx_power_dbm")}, r.number("duty_cycle", 1.0)};
    wrap_domain(path, [&] {
        p.validate();
        return 0;
    });
    return p;
}

ChannelEnvironment parse_environment(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    ChannelEnvironment env;
    env.noise_floor = Dbm{r.number("noise_floor_dbm", env.noise_floor.value)};
    if (const json* arr = r.find("interferers")) {
        require_array(*arr, path + "/interferers");
        for (std::size_t i = 0; i < arr->size(); ++i) {
            const std::string p = path + "/interferers/" + std::to_string(i);
            ObjectReader ir((*arr)[i], p);
            env.interferers.push_back(parse_interferer(ir, p));
            ir.finish();
        }
    }
    r.finish();
    return env;
}

std::vector<InterferenceEvent> parse_schedule(const json& j, const std::string& path) {
    std::vector<InterferenceEvent> out;
    const auto& arr = require_array(j, path);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        ObjectReader r(arr[i], p);
        const std::size_t step = as_count(r.required_integer("step"), p + "/step", 0);
        out.push_back({step, parse_interferer(r, p)});
        r.finish();
    }
    return out;
}

template <int Rows, int Cols>
Eigen::Matrix<double, Rows, Cols> parse_matrix(const json& j, const std::string& path) {
    Eigen::Matrix<double, Rows, Cols> m;
    const auto& rows = require_array(j, path);
    if (rows.size() != static_cast<std::size_t>(Rows)) {
        throw ScenarioParseError(path, "expected " + std::to_string(Rows) + " rows");
    }
    for (int i = 0; i < Rows; ++i) {
        const auto& row = require_array(rows[static_cast<std::size_t>(i)], path + "/" + std::to_string(i));
        if (row.size() != static_cast<std::size_t>(Cols)) {
            throw ScenarioParseError(path + "/" + std::to_string(i),
                                     "expected " + std::to_string(Cols) + " columns");
        }
        for (int k = 0; k < Cols; ++k) {
            const auto& v = row[static_cast<std::size_t>(k)];
            if (!v.is_number()) {
                throw ScenarioParseError(path + "/" + std::to_string(i) + "/" + std::to_string(k),
                                         "expected a number");
            }
            m(i, k) = v.get<double>();
        }
    }
    return m;
}

KalmanConfig parse_kalman(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    KalmanConfig cfg;
    if (const json* v = r.find("state_transition")) {
        cfg.state_transition = parse_matrix<2, 2>(*v, r.path_of("state_transition"));
    }
    if (const json* v = r.find("control_m")) {
        const auto& arr = require_array(*v, r.path_of("control_m"));
        if (arr.size() != 2 || !arr[0].is_number() || !arr[1].is_number()) {
            r.fail("control_m", "expected two numbers");
        }
        cfg.control = Vec2{arr[0].get<double>(), arr[1].get<double>()};
    }
    if (const json* v = r.find("process_noise_m2")) {
        cfg.process_noise = v->is_number() ? Mat2(v->get<double>() * Mat2::Identity())
                                           : parse_matrix<2, 2>(*v, r.path_of("process_noise_m2"));
    }
    const json* sigma = r.find("range_sigma_m");
    const json* full = r.find("measurement_noise_m2");
    if (sigma != nullptr && full != nullptr) {
        r.fail("measurement_noise_m2", "give either range_sigma_m or measurement_noise_m2, not both");
    }
    if (sigma != nullptr) {
        const double s = r.as_number(*sigma, "range_sigma_m");
        cfg.measurement_noise = s * s * Mat3::Identity();
    } else if (full != nullptr) {
        cfg.measurement_noise = parse_matrix<3, 3>(*full, r.path_of("measurement_noise_m2"));
    }
    r.finish();
    wrap_domain(path, [&] {
        cfg.validate();
        return 0;
    });
    return cfg;
}

int line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Best effort: the line of the first occurrence of the last key in the path.
int line_of_field(std::string_view text, const std::string& field) {
    const auto slash = field.find_last_of('/');
    if (slash == std::string::npos || slash + 1 >= field.size()) {
        return 0;
    }
    std::string key = field.substr(slash + 1);
    if (std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return 0;
    }
    const auto pos = text.find("\"" + key + "\"");
    return pos == std::string_view::npos ? 0 : line_of_offset(text, pos);
}

Scenario parse_document(const json& doc) {
    ObjectReader r(doc, "");
    Scenario s;

    const json& seed = r.require("seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
        r.fail("seed", "expected a non-negative 64-bit integer");
    }
    s.seed = seed.get<std::uint64_t>();

    s.roi = parse_roi(r.require("roi"), "/roi");

    const json* beacons = r.find("beacons");
    const json* deployment = r.find("deployment");
    if ((beacons == nullptr) == (deployment == nullptr)) {
        r.fail("beacons", "exactly one of 'beacons' or 'deployment' is required");
    }
    s.beacons = beacons != nullptr ? parse_beacons(*beacons, "/beacons")
                                   : parse_deployment(*deployment, "/deployment", s.roi);

    s.trajectory = parse_trajectory(r.require("trajectory"), "/trajectory");

    if (const json* v = r.find("path_loss")) {
        ObjectReader pr(*v, "/path_loss");
        s.path_loss.rssi_at_ref = Dbm{pr.number("rssi_at_ref_dbm", s.path_loss.rssi_at_ref.value)};
        s.path_loss.ref_distance_m = pr.number("ref_distance_m", s.path_loss.ref_distance_m);
        s.path_loss.exponent = pr.number("exponent", s.path_loss.exponent);
        pr.finish();
        wrap_domain("/path_loss", [&] {
            s.path_loss.validate();
            return 0;
        });
    }
    if (const json* v = r.find("radio")) {
        ObjectReader rr(*v, "/radio");
        s.radio.tx_power = Dbm{rr.number("tx_power_dbm", s.radio.tx_power.value)};
        s.radio.sensitivity = Dbm{rr.number("sensitivity_dbm", s.radio.sensitivity.value)};
        s.radio.max_range_m = rr.number("max_range_m", s.radio.max_range_m);
        rr.finish();
        wrap_domain("/radio", [&] {
            s.radio.validate();
            return 0;
        });
    }
    if (const json* v = r.find("shadowing")) {
        ObjectReader sr(*v, "/shadowing");
        s.shadowing.sigma_db = sr.number("sigma_db", s.shadowing.sigma_db);
        sr.finish();
        wrap_domain("/shadowing", [&] {
            s.shadowing.validate();
            return 0;
        });
    }
    if (const json* v = r.find("environment")) {
        s.environment = parse_environment(*v, "/environment");
    }
    if (const json* v = r.find("interference_schedule")) {
        s.interference_schedule = parse_schedule(*v, "/interference_schedule");
    }
    if (const json* v = r.find("scan")) {
        ObjectReader sr(*v, "/scan");
        s.scan.samples_per_channel =
            static_cast<int>(as_count(sr.integer("samples_per_channel", s.scan.samples_per_channel),
                                      "/scan/samples_per_channel", 1));
        s.scan.sample_interval_ms = sr.number("sample_interval_ms", s.scan.sample_interval_ms);
        sr.finish();
        wrap_domain("/scan", [&] {
            s.scan.validate();
            return 0;
        });
    }
    if (const json* v = r.find("monitor")) {
        ObjectReader mr(*v, "/monitor");
        s.monitor.window = as_count(mr.integer("window_packets", static_cast<long long>(s.monitor.window)),
                                    "/monitor/window_packets", 1);
        s.monitor.failure_threshold = mr.number("failure_threshold", s.monitor.failure_threshold);
        mr.finish();
        wrap_domain("/monitor", [&] {
            s.monitor.validate();
            return 0;
        });
    }
    if (const json* v = r.find("kalman")) {
        s.kalman = parse_kalman(*v, "/kalman");
    }
    const long long window = r.integer("aggregation_window_samples", s.aggregation_window);
    if (window < 1 || window > 1'000'000) {
        r.fail("aggregation_window_samples", "must lie in [1, 1000000]");
    }
    s.aggregation_window = static_cast<int>(window);
    r.finish();

    wrap_domain("/", [&] {
        s.validate();
        return 0;
    });
    return s;
}

json point_json(const Point2D& p) { return {{"x_m", p.x}, {"y_m", p.y}}; }

template <typename M>
json matrix_json(const M& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < m.cols(); ++k) {
            row.push_back(m(i, k));
        }
        rows.push_back(row);
    }
    return rows;
}

json interferer_json(const InterfererProfile& p) {
    return {{"wifi_channel", p.wifi_channel.index()},
            {"rx_power_dbm", p.rx_power.value},
            {"duty_cycle", p.duty_cycle}};
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ScenarioParseError("", e.what(), line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0));
    }
    try {
        return parse_document(doc);
    } catch (const ScenarioParseError& e) {
        if (e.line() > 0) {
            throw;
        }
        throw ScenarioParseError(e.field(), e.message(), line_of_field(text, e.field()));
    }
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ScenarioParseError("", "cannot open scenario file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

json scenario_to_json(const Scenario& s) {
    json j;
    j["seed"] = s.seed;
    j["roi"] = {{"x_min_m", s.roi.x_min}, {"y_min_m", s.roi.y_min}, {"x_max_m", s.roi.x_max}, {"y_max_m", s.roi.y_max}};

    json beacons = json::array();
    for (const auto& b : s.beacons) {
        beacons.push_back({{"id", b.id.value}, {"x_m", b.position.x}, {"y_m", b.position.y}});
    }
    j["beacons"] = beacons;

    // Run-length encode repeated waypoints.
    json traj = json::array();
    for (std::size_t i = 0; i < s.trajectory.size();) {
        std::size_t k = i + 1;
        while (k < s.trajectory.size() && s.trajectory[k] == s.trajectory[i]) {
            ++k;
        }
        json p = point_json(s.trajectory[i]);
        if (k - i > 1) {
            p["steps"] = k - i;
        }
        traj.push_back(p);
        i = k;
    }
    j["trajectory"] = traj;

    j["path_loss"] = {{"rssi_at_ref_dbm", s.path_loss.rssi_at_ref.value},
                      {"ref_distance_m", s.path_loss.ref_distance_m},
                      {"exponent", s.path_loss.exponent}};
    j["radio"] = {{"tx_power_dbm", s.radio.tx_power.value},
                  {"sensitivity_dbm", s.radio.sensitivity.value},
                  {"max_range_m", s.radio.max_range_m}};
    j["shadowing"] = {{"sigma_db", s.shadowing.sigma_db}};

    json interferers = json::array();
    for (const auto& i : s.environment.interferers) {
        interferers.push_back(interferer_json(i));
    }
    j["environment"] = {{"noise_floor_dbm", s.environment.noise_floor.value}, {"interferers", interferers}};

    json schedule = json::array();
    for (const auto& ev : s.interference_schedule) {
        json e = interferer_json(ev.interferer);
        e["step"] = ev.step;
        schedule.push_back(e);
    }
    j["interference_schedule"] = schedule;

    j["scan"] = {{"samples_per_channel", s.scan.samples_per_channel},
                 {"sample_interval_ms", s.scan.sample_interval_ms}};
    j["monitor"] = {{"window_packets", s.monitor.window}, {"failure_threshold", s.monitor.failure_threshold}};
    j["kalman"] = {{"state_transition", matrix_json(s.kalman.state_transition)},
                   {"control_m", {s.kalman.control.x(), s.kalman.control.y()}},
                   {"process_noise_m2", matrix_json(s.kalman.process_noise)},
                   {"measurement_noise_m2", matrix_json(s.kalman.measurement_noise)}};
    j["aggregation_window_samples"] = s.aggregation_window;
    return j;
}

}  // namespace rssiloc
