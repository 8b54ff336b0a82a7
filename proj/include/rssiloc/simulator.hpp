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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rssiloc/channel.hpp"
#include "rssiloc/deployment.hpp"
#include "rssiloc/kalman.hpp"
#include "rssiloc/localization.hpp"
#include "rssiloc/radio.hpp"
#include "rssiloc/spectrum.hpp"

namespace rssiloc {

struct MonitorConfig {
    std::size_t window = ChannelMonitor::kDefaultWindow;
    double failure_threshold = ChannelMonitor::kDefaultThreshold;

    void validate() const;
};

// Interferer that switches on at the start of the given step and stays on.
struct InterferenceEvent {
    std::size_t step;
    InterfererProfile interferer;
};

struct Scenario {
    Rect roi;
    std::vector<AnchorNode> beacons;
    std::vector<Point2D> trajectory;
    PathLossParams path_loss;
    RadioSpec radio;
    ShadowingModel shadowing;
    ChannelEnvironment environment;
    std::vector<InterferenceEvent> interference_schedule;
    ScanConfig scan;
    MonitorConfig monitor;
    KalmanConfig kalman;
    int aggregation_window = 10;
    std::uint64_t seed = 0;

    /// Throws DomainError on any broken invariant (ids, roi, parameters).
    void validate() const;
};

enum class EstimateFlavor { raw, averaged, kalman };

const char* to_string(EstimateFlavor flavor) noexcept;

struct StepRecord {
    std::size_t step = 0;
    Point2D truth;
    std::optional<Point2D> raw;
    std::optional<Point2D> averaged;
    std::optional<Point2D> kalman;
    int channel = ZigbeeChannel::kFirst;
    std::vector<AnchorReading> aggregated;  // every beacon heard this step
    bool resolved = false;
};

struct RunResult {
    std::vector<StepRecord> steps;
    std::size_t scans = 0;  // including the initial one
    std::size_t packets_sent = 0;
    std::size_t packets_lost = 0;
};

struct Metrics {
    double rmse = 0.0;
    double mean_error = 0.0;
    double max_error = 0.0;
    std::vector<double> error_cdf;  // sorted ascending
    std::size_t resolved_steps = 0;
    std::size_t unresolved_steps = 0;
};

struct PipelineComparison {
    Metrics raw;
    Metrics averaged;
    Metrics kalman;
};

/// Trajectory points farther than max_range_m from all but two beacons.
std::vector<Point2D> uncovered_trajectory_points(const Scenario& s);

RunResult run_scenario(const Scenario& s);

/// Metrics over steps [from_step, end). Throws EmptyResultError when no step
/// in that range resolved.
Metrics compute_metrics(const RunResult& result, EstimateFlavor flavor, std::size_t from_step = 0);

PipelineComparison compare_pipelines(const RunResult& result, std::size_t from_step = 0);
PipelineComparison compare_pipelines(const Scenario& s);

std::optional<Point2D> estimate_of(const StepRecord& rec, EstimateFlavor flavor) noexcept;

}  // namespace rssiloc
