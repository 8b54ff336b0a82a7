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

#include "rssiloc/channel.hpp"

#include <cmath>

#include "rssiloc/errors.hpp"

namespace rssiloc {

void ScanConfig::validate() const {
    if (samples_per_channel < 1) {
        throw DomainError("scan: samples_per_channel must be >= 1");
    }
    if (!(sample_interval_ms > 0.0) || !std::isfinite(sample_interval_ms)) {
        throw DomainError("scan: sample interval must be > 0");
    }
}

ScanReport scan_all_channels(const ChannelEnvironment& env, const ScanConfig& cfg, Rng& rng) {
    cfg.validate();
    ScanReport report;
    report.records.reserve(ZigbeeChannel::kCount);
    const auto n = static_cast<double>(cfg.samples_per_channel);
    std::vector<double> samples(static_cast<std::size_t>(cfg.samples_per_channel));
    for (const ZigbeeChannel c : all_zigbee_channels()) {
        double sum = 0.0;
        for (double& s : samples) {
            s = channel_energy_sample(env, c, rng).value;
            sum += s;
        }
        const double mean = sum / n;
        double ss = 0.0;
        for (double s : samples) {
            ss += (s - mean) * (s - mean);
        }
        // Population variance; a single-sample scan reports zero spread.
        report.records.push_back({c, Dbm{mean}, ss / n});
    }
    return report;
}

ZigbeeChannel select_channel(const ScanReport& report) {
    if (report.records.empty()) {
        throw DomainError("select_channel: empty scan report");
    }
    const ChannelRecord* best = &report.records.front();
    for (const auto& r : report.records) {
        if (r.mean_energy < best->mean_energy ||
            (r.mean_energy == best->mean_energy && r.channel < best->channel)) {
            best = &r;
        }
    }
    return best->channel;
}

ChannelMonitor::ChannelMonitor(ZigbeeChannel active, std::size_t window, double failure_threshold)
    : active_(active), window_(window), threshold_(failure_threshold) {
    if (window_ == 0) {
        throw DomainError("monitor: window must be >= 1");
    }
    if (!(threshold_ > 0.0 && threshold_ <= 1.0)) {
        throw DomainError("monitor: failure threshold must lie in (0, 1]");
    }
}

void ChannelMonitor::record(bool success) {
    if (outcomes_.size() == window_) {
        if (!outcomes_.front()) {
            --failures_;
        }
        outcomes_.pop_front();
    }
    outcomes_.push_back(success);
    if (!success) {
        ++failures_;
    }
}

void ChannelMonitor::reset(ZigbeeChannel active) {
    active_ = active;
    outcomes_.clear();
    failures_ = 0;
}

double ChannelMonitor::failure_ratio() const noexcept {
    if (outcomes_.empty()) {
        return 0.0;
    }
    return static_cast<double>(failures_) / static_cast<double>(outcomes_.size());
}

ChannelMonitor record_packet_outcome(ChannelMonitor mon, bool success) {
    mon.record(success);
    return mon;
}

bool should_rescan(const ChannelMonitor& mon) noexcept {
    return mon.full() && mon.failure_ratio() > mon.failure_threshold();
}

}  // namespace rssiloc
