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

#include "rssiloc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "rssiloc/errors.hpp"

namespace rssiloc {

namespace {

// A target sitting exactly on a beacon still gets a finite reading.
constexpr double kMinLinkDistance = 1e-3;

struct HeardBeacon {
    AnchorNode anchor;
    Dbm first;
    Dbm aggregated;
};

std::optional<Point2D> try_trilaterate(const std::array<AnchorNode, 3>& anchors,
                                       const std::array<double, 3>& ranges) {
    try {
        return least_squares_multilaterate(anchors, ranges).position;
    } catch (const DegenerateGeometryError&) {
        return std::nullopt;
    }
}

}  // namespace

void MonitorConfig::validate() const {
    if (window == 0) {
        throw DomainError("monitor: window must be >= 1");
    }
    if (!(failure_threshold > 0.0 && failure_threshold <= 1.0)) {
        throw DomainError("monitor: failure threshold must lie in (0, 1]");
    }
}

void Scenario::validate() const {
    roi.validate();
    std::set<std::uint32_t> ids;
    for (const auto& b : beacons) {
        if (!ids.insert(b.id.value).second) {
            throw DomainError("scenario: duplicate beacon id " + std::to_string(b.id.value));
        }
        if (!is_finite(b.position)) {
            throw DomainError("scenario: non-finite beacon position");
        }
    }
    if (trajectory.empty()) {
        throw DomainError("scenario: trajectory is empty");
    }
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        if (!is_finite(trajectory[i]) || !roi.contains(trajectory[i])) {
            throw DomainError("scenario: trajectory point " + std::to_string(i) + " lies outside the roi");
        }
    }
    path_loss.validate();
    radio.validate();
    shadowing.validate();
    environment.validate();
    for (const auto& ev : interference_schedule) {
        ev.interferer.validate();
    }
    scan.validate();
    monitor.validate();
    kalman.validate();
    if (aggregation_window < 1) {
        throw DomainError("scenario: aggregation window must be >= 1");
    }
}

const char* to_string(EstimateFlavor flavor) noexcept {
    switch (flavor) {
        case EstimateFlavor::raw:
            return "raw";
        case EstimateFlavor::averaged:
            return "averaged";
        case EstimateFlavor::kalman:
            return "kalman";
    }
    return "unknown";
}

std::vector<Point2D> uncovered_trajectory_points(const Scenario& s) {
    std::vector<Point2D> out;
    for (const Point2D& p : s.trajectory) {
        const auto in_range = std::count_if(s.beacons.begin(), s.beacons.end(), [&](const AnchorNode& b) {
            return euclidean_distance(p, b.position) <= s.radio.max_range_m;
        });
        if (in_range < 3 && std::find(out.begin(), out.end(), p) == out.end()) {
            out.push_back(p);
        }
    }
    return out;
}

RunResult run_scenario(const Scenario& s) {
    s.validate();
    Rng rng = make_rng(s.seed);
    ChannelEnvironment env = s.environment;

    RunResult result;
    result.steps.reserve(s.trajectory.size());
    ChannelMonitor monitor(select_channel(scan_all_channels(env, s.scan, rng)), s.monitor.window,
                           s.monitor.failure_threshold);
    result.scans = 1;

    std::optional<KalmanState> filter;
    std::vector<Dbm> window;
    window.reserve(static_cast<std::size_t>(s.aggregation_window));

    for (std::size_t step = 0; step < s.trajectory.size(); ++step) {
        for (const auto& ev : s.interference_schedule) {
            if (ev.step == step) {
                env.interferers.push_back(ev.interferer);
            }
        }

        StepRecord rec;
        rec.step = step;
        rec.truth = s.trajectory[step];

        std::vector<HeardBeacon> heard;
        for (const AnchorNode& beacon : s.beacons) {
            const double d = std::max(euclidean_distance(rec.truth, beacon.position), kMinLinkDistance);
            window.clear();
            for (int j = 0; j < s.aggregation_window; ++j) {
                const bool delivered = packet_success(env, monitor.active_channel(), rng);
                ++result.packets_sent;
                monitor.record(delivered);
                if (!delivered) {
                    ++result.packets_lost;
                } else if (auto r = sample_measured_rssi(s.path_loss, s.radio, d, s.shadowing, rng)) {
                    window.push_back(*r);
                }
                if (should_rescan(monitor)) {
                    monitor.reset(select_channel(scan_all_channels(env, s.scan, rng)));
                    ++result.scans;
                }
            }
            if (!window.empty()) {
                heard.push_back({beacon, window.front(), aggregate_rssi(window)});
            }
        }
        rec.channel = monitor.active_channel().index();

        std::vector<AnchorReading> readings;
        readings.reserve(heard.size());
        for (const auto& h : heard) {
            readings.push_back({h.anchor, h.aggregated});
        }
        rec.aggregated = readings;

        if (readings.size() >= 3) {
            const auto top = select_anchors(readings, 3);
            std::array<AnchorNode, 3> anchors{top[0].anchor, top[1].anchor, top[2].anchor};
            std::array<double, 3> avg_ranges{};
            std::array<double, 3> raw_ranges{};
            for (std::size_t i = 0; i < 3; ++i) {
                const auto it = std::find_if(heard.begin(), heard.end(), [&](const HeardBeacon& h) {
                    return h.anchor.id == anchors[i].id;
                });
                avg_ranges[i] = distance_from_rssi(s.path_loss, it->aggregated);
                raw_ranges[i] = distance_from_rssi(s.path_loss, it->first);
            }
            rec.averaged = try_trilaterate(anchors, avg_ranges);
            rec.raw = try_trilaterate(anchors, raw_ranges);

            if (rec.averaged && rec.raw) {
                if (!filter) {
                    filter = KalmanState{Vec2{rec.averaged->x, rec.averaged->y}, Mat2::Zero()};
                }
                const RangeMeasurement meas{anchors, avg_ranges};
                try {
                    filter = filter_step(*filter, meas, s.kalman);
                } catch (const SingularGeometryError&) {
                    // Estimate on top of an anchor: coast on the prediction.
                    filter = predict(*filter, s.kalman);
                }
                rec.kalman = Point2D{filter->position.x(), filter->position.y()};
                rec.resolved = true;
            } else {
                rec.raw.reset();
                rec.averaged.reset();
            }
        }
        result.steps.push_back(std::move(rec));
    }
    return result;
}

std::optional<Point2D> estimate_of(const StepRecord& rec, EstimateFlavor flavor) noexcept {
    switch (flavor) {
        case EstimateFlavor::raw:
            return rec.raw;
        case EstimateFlavor::averaged:
            return rec.averaged;
        case EstimateFlavor::kalman:
            return rec.kalman;
    }
    return std::nullopt;
}

Metrics compute_metrics(const RunResult& result, EstimateFlavor flavor, std::size_t from_step) {
    Metrics m;
    for (const auto& rec : result.steps) {
        if (rec.step < from_step) {
            continue;
        }
        const auto est = estimate_of(rec, flavor);
        if (!est) {
            ++m.unresolved_steps;
            continue;
        }
        m.error_cdf.push_back(euclidean_distance(*est, rec.truth));
    }
    if (m.error_cdf.empty()) {
        throw EmptyResultError(std::string("compute_metrics: no resolved ") + to_string(flavor) +
                               " estimates");
    }
    std::sort(m.error_cdf.begin(), m.error_cdf.end());
    m.resolved_steps = m.error_cdf.size();
    const auto n = static_cast<double>(m.resolved_steps);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double e : m.error_cdf) {
        sum += e;
        sum_sq += e * e;
    }
    m.mean_error = sum / n;
    m.rmse = std::sqrt(sum_sq / n);
    m.max_error = m.error_cdf.back();
    return m;
}

PipelineComparison compare_pipelines(const RunResult& result, std::size_t from_step) {
    return {compute_metrics(result, EstimateFlavor::raw, from_step),
            compute_metrics(result, EstimateFlavor::averaged, from_step),
            compute_metrics(result, EstimateFlavor::kalman, from_step)};
}

PipelineComparison compare_pipelines(const Scenario& s) { return compare_pipelines(run_scenario(s)); }

}  // namespace rssiloc
