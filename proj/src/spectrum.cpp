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

#include "rssiloc/spectrum.hpp"

#include <cmath>
#include <string>

#include "rssiloc/errors.hpp"

namespace rssiloc {

ZigbeeChannel::ZigbeeChannel(int index) : index_(index) {
    if (index < kFirst || index > kLast) {
        throw DomainError("ZigBee channel out of range [11, 26]: " + std::to_string(index));
    }
}

WifiChannel::WifiChannel(int index) : index_(index) {
    if (index < kFirst || index > kLast) {
        throw DomainError("WiFi channel out of range [1, 13]: " + std::to_string(index));
    }
}

std::vector<ZigbeeChannel> all_zigbee_channels() {
    std::vector<ZigbeeChannel> out;
    out.reserve(ZigbeeChannel::kCount);
    for (int i = ZigbeeChannel::kFirst; i <= ZigbeeChannel::kLast; ++i) {
        out.emplace_back(i);
    }
    return out;
}

bool channels_overlap(ZigbeeChannel z, WifiChannel w) noexcept {
    constexpr double kHalfSpan = (ZigbeeChannel::kBandwidthMhz + WifiChannel::kBandwidthMhz) / 2.0;
    return std::abs(z.center_mhz() - w.center_mhz()) < kHalfSpan;
}

void InterfererProfile::validate() const {
    if (!std::isfinite(rx_power.value)) {
        throw DomainError("interferer: rx power must be finite");
    }
    if (!(duty_cycle >= 0.0 && duty_cycle <= 1.0)) {
        throw DomainError("interferer: duty cycle must lie in [0, 1]");
    }
}

void ChannelEnvironment::validate() const {
    if (!std::isfinite(noise_floor.value)) {
        throw DomainError("environment: noise floor must be finite");
    }
    for (const auto& i : interferers) {
        i.validate();
    }
}

Dbm channel_energy_sample(const ChannelEnvironment& env, ZigbeeChannel z, Rng& rng) {
    double total_mw = dbm_to_milliwatts(env.noise_floor);
    bool any_active = false;
    for (const auto& i : env.interferers) {
        if (!channels_overlap(z, i.wifi_channel)) {
            continue;
        }
        if (draw_bernoulli(rng, i.duty_cycle)) {
            total_mw += dbm_to_milliwatts(i.rx_power);
            any_active = true;
        }
    }
    // Exactly the floor when idle; avoids a log10(10^x) round trip.
    return any_active ? milliwatts_to_dbm(total_mw) : env.noise_floor;
}

bool packet_success(const ChannelEnvironment& env, ZigbeeChannel z, Rng& rng) {
    bool success = true;
    for (const auto& i : env.interferers) {
        if (channels_overlap(z, i.wifi_channel) && draw_bernoulli(rng, i.duty_cycle)) {
            success = false;
        }
    }
    return success;
}

}  // namespace rssiloc
