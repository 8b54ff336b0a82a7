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

#include "rssiloc/result_io.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace rssiloc {

using nlohmann::json;

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) {
        return "nan";
    }
    return std::string(buf.data(), end);
}

namespace {

void put_optional(std::ostream& os, const std::optional<Point2D>& p) {
    if (p) {
        os << ',' << format_double(p->x) << ',' << format_double(p->y);
    } else {
        os << ",,";
    }
}

void put_error(std::ostream& os, const StepRecord& rec, EstimateFlavor flavor) {
    os << ',';
    if (const auto est = estimate_of(rec, flavor)) {
        os << format_double(euclidean_distance(*est, rec.truth));
    }
}

json optional_point(const std::optional<Point2D>& p) {
    if (!p) {
        return nullptr;
    }
    return {{"x_m", p->x}, {"y_m", p->y}};
}

json optional_error(const StepRecord& rec, EstimateFlavor flavor) {
    const auto est = estimate_of(rec, flavor);
    if (!est) {
        return nullptr;
    }
    return euclidean_distance(*est, rec.truth);
}

}  // namespace

void write_steps_csv(std::ostream& os, const RunResult& result) {
    os << "step,true_x,true_y,raw_x,raw_y,avg_x,avg_y,kf_x,kf_y,channel,resolved\n";
    for (const auto& rec : result.steps) {
        os << rec.step << ',' << format_double(rec.truth.x) << ',' << format_double(rec.truth.y);
        put_optional(os, rec.raw);
        put_optional(os, rec.averaged);
        put_optional(os, rec.kalman);
        os << ',' << rec.channel << ',' << (rec.resolved ? 1 : 0) << '\n';
    }
}

json steps_to_json(const RunResult& result) {
    json steps = json::array();
    for (const auto& rec : result.steps) {
        json aggregated = json::array();
        for (const auto& a : rec.aggregated) {
            aggregated.push_back({{"id", a.anchor.id.value}, {"rssi_dbm", a.rssi.value}});
        }
        steps.push_back({{"step", rec.step},
                         {"truth", {{"x_m", rec.truth.x}, {"y_m", rec.truth.y}}},
                         {"raw", optional_point(rec.raw)},
                         {"averaged", optional_point(rec.averaged)},
                         {"kalman", optional_point(rec.kalman)},
                         {"channel", rec.channel},
                         {"resolved", rec.resolved},
                         {"aggregated_rssi", aggregated}});
    }
    return steps;
}

void write_compare_csv(std::ostream& os, const RunResult& result) {
    os << "step,error_raw_m,error_avg_m,error_kf_m\n";
    for (const auto& rec : result.steps) {
        os << rec.step;
        put_error(os, rec, EstimateFlavor::raw);
        put_error(os, rec, EstimateFlavor::averaged);
        put_error(os, rec, EstimateFlavor::kalman);
        os << '\n';
    }
}

json compare_steps_to_json(const RunResult& result) {
    json rows = json::array();
    for (const auto& rec : result.steps) {
        rows.push_back({{"step", rec.step},
                        {"error_raw_m", optional_error(rec, EstimateFlavor::raw)},
                        {"error_avg_m", optional_error(rec, EstimateFlavor::averaged)},
                        {"error_kf_m", optional_error(rec, EstimateFlavor::kalman)}});
    }
    return rows;
}

void write_scan_csv(std::ostream& os, const ScanReport& report) {
    os << "channel,center_mhz,mean_dbm,variance_db2\n";
    for (const auto& r : report.records) {
        os << r.channel.index() << ',' << format_double(r.channel.center_mhz()) << ','
           << format_double(r.mean_energy.value) << ',' << format_double(r.variance_db2) << '\n';
    }
}

void write_beacons_csv(std::ostream& os, std::span<const AnchorNode> beacons) {
    os << "id,x,y\n";
    for (const auto& b : beacons) {
        os << b.id.value << ',' << format_double(b.position.x) << ',' << format_double(b.position.y) << '\n';
    }
}

json metrics_to_json(const Metrics& m) {
    return {{"rmse_m", m.rmse},
            {"mean_error_m", m.mean_error},
            {"max_error_m", m.max_error},
            {"resolved_steps", m.resolved_steps},
            {"unresolved_steps", m.unresolved_steps},
            {"error_cdf_m", m.error_cdf}};
}

json comparison_to_json(const PipelineComparison& c) {
    return {{"raw", metrics_to_json(c.raw)},
            {"averaged", metrics_to_json(c.averaged)},
            {"kalman", metrics_to_json(c.kalman)}};
}

}  // namespace rssiloc
