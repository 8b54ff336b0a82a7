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

#include <optional>

#include "rssiloc/geometry.hpp"
#include "rssiloc/random.hpp"

namespace rssiloc {

// Log-distance model: RSSI(d) = RSSI(d0) - 10 n log10(d / d0).
struct PathLossParams {
    Dbm rssi_at_ref{-45.0};
    double ref_distance_m = 1.0;
    double exponent = 2.0;

    void validate() const;
};

struct RadioSpec {
    Dbm tx_power{20.0};
    Dbm sensitivity{-107.0};
    // 200 ft indoor range of the reference module.
    double max_range_m = feet_to_meters(200.0);

    void validate() const;
};

// Zero-mean Gaussian shadowing in the dB domain.
struct ShadowingModel {
    double sigma_db = 2.0;

    void validate() const;
};

Dbm rssi_at_distance(const PathLossParams& params, double distance_m);

double distance_from_rssi(const PathLossParams& params, Dbm rssi);

// Noisy link reading. Empty when the receiver would not hear the packet.
std::optional<Dbm> sample_measured_rssi(const PathLossParams& params, const RadioSpec& spec,
                                        double distance_m, const ShadowingModel& shadow, Rng& rng);

}  // namespace rssiloc
