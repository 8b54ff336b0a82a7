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

#include <compare>
#include <vector>

#include "rssiloc/geometry.hpp"
#include "rssiloc/random.hpp"

namespace rssiloc {

/// 802.15.4 channel in the 2.4 GHz band, indices 11..26, 5 MHz apart.
class ZigbeeChannel {
public:
    static constexpr int kFirst = 11;
    static constexpr int kLast = 26;
    static constexpr int kCount = kLast - kFirst + 1;
    static constexpr double kBandwidthMhz = 2.0;

    explicit ZigbeeChannel(int index);

    int index() const noexcept { return index_; }
    double center_mhz() const noexcept { return 2405.0 + 5.0 * (index_ - kFirst); }

    friend auto operator<=>(const ZigbeeChannel&, const ZigbeeChannel&) = default;

private:
    int index_;
};

/// 802.11 channel, indices 1..13 (2412..2472 MHz), 22 MHz wide.
class WifiChannel {
public:
    static constexpr int kFirst = 1;
    static constexpr int kLast = 13;
    static constexpr double kBandwidthMhz = 22.0;

    explicit WifiChannel(int index);

    int index() const noexcept { return index_; }
    double center_mhz() const noexcept { return 2412.0 + 5.0 * (index_ - kFirst); }

    friend auto operator<=>(const WifiChannel&, const WifiChannel&) = default;

private:
    int index_;
};

inline double zigbee_center_mhz(ZigbeeChannel c) noexcept { return c.center_mhz(); }
inline double wifi_center_mhz(WifiChannel w) noexcept { return w.center_mhz(); }

std::vector<ZigbeeChannel> all_zigbee_channels();

// Spectra intersect when the center gap is strictly below the half-width sum.
bool channels_overlap(ZigbeeChannel z, WifiChannel w) noexcept;

struct InterfererProfile {
    WifiChannel wifi_channel;
    Dbm rx_power;       // as seen at the sensing node
    double duty_cycle;  // probability of being on air during a sample or packet

    void validate() const;
};

struct ChannelEnvironment {
    std::vector<InterfererProfile> interferers;
    Dbm noise_floor{-100.0};

    void validate() const;
};

/// One energy-detect reading: noise floor plus every overlapping interferer
/// that happens to be active, summed in linear power.
Dbm channel_energy_sample(const ChannelEnvironment& env, ZigbeeChannel z, Rng& rng);

/// A packet survives only if no overlapping interferer is active while it is
/// on air.
bool packet_success(const ChannelEnvironment& env, ZigbeeChannel z, Rng& rng);

}  // namespace rssiloc
