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
#include <deque>
#include <vector>

#include "rssiloc/spectrum.hpp"

namespace rssiloc {

struct ScanConfig {
    int samples_per_channel = 10;
    // Bookkeeping only; scans run in virtual time.
    double sample_interval_ms = 100.0;

    void validate() const;
};

struct ChannelRecord {
    ZigbeeChannel channel;
    Dbm mean_energy;
    double variance_db2;
};

// One record per ZigBee channel, ascending index.
struct ScanReport {
    std::vector<ChannelRecord> records;
};

ScanReport scan_all_channels(const ChannelEnvironment& env, const ScanConfig& cfg, Rng& rng);

/// Lowest mean energy wins; ties go to the lowest channel index.
ZigbeeChannel select_channel(const ScanReport& report);

/// Sliding window of packet outcomes on the active channel.
class ChannelMonitor {
public:
    static constexpr std::size_t kDefaultWindow = 20;
    static constexpr double kDefaultThreshold = 0.2;

    explicit ChannelMonitor(ZigbeeChannel active, std::size_t window = kDefaultWindow,
                            double failure_threshold = kDefaultThreshold);

    void record(bool success);

    // Switch to a freshly selected channel and forget the old history.
    void reset(ZigbeeChannel active);

    ZigbeeChannel active_channel() const noexcept { return active_; }
    std::size_t window() const noexcept { return window_; }
    double failure_threshold() const noexcept { return threshold_; }
    std::size_t size() const noexcept { return outcomes_.size(); }
    bool full() const noexcept { return outcomes_.size() == window_; }
    std::size_t failures() const noexcept { return failures_; }
    double failure_ratio() const noexcept;
    const std::deque<bool>& outcomes() const noexcept { return outcomes_; }

private:
    ZigbeeChannel active_;
    std::size_t window_;
    double threshold_;
    std::deque<bool> outcomes_;
    std::size_t failures_ = 0;
};

ChannelMonitor record_packet_outcome(ChannelMonitor mon, bool success);

/// True only for a full window whose failure ratio strictly exceeds the threshold.
bool should_rescan(const ChannelMonitor& mon) noexcept;

}  // namespace rssiloc
