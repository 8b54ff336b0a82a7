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

#include "rssiloc/radio.hpp"

#include <cmath>

#include "rssiloc/errors.hpp"

namespace rssiloc {

void PathLossParams::validate() const {
    if (!std::isfinite(rssi_at_ref.value)) {
        throw DomainError("path loss: reference RSSI must be finite");
    }
    if (!(ref_distance_m > 0.0) || !std::isfinite(ref_distance_m)) {
        throw DomainError("path loss: reference distance must be > 0");
    }
    if (!(exponent > 0.0) || !std::isfinite(exponent)) {
        throw DomainError("path loss: exponent must be > 0");
    }
}

void RadioSpec::validate() const {
    if (!std::isfinite(tx_power.value) || !std::isfinite(sensitivity.value)) {
        throw DomainError("radio: powers must be finite");
    }
    if (!(sensitivity < tx_power)) {
        throw DomainError("radio: sensitivity must be below transmit power");
    }
    if (!(max_range_m > 0.0) || !std::isfinite(max_range_m)) {
        throw DomainError("radio: max range must be > 0");
    }
}

void ShadowingModel::validate() const {
    if (!(sigma_db >= 0.0) || !std::isfinite(sigma_db)) {
        throw DomainError("shadowing: sigma must be >= 0");
    }
}

Dbm rssi_at_distance(const PathLossParams& params, double distance_m) {
    if (!(distance_m > 0.0)) {
        throw DomainError("rssi_at_distance: distance must be > 0");
    }
    return Dbm{params.rssi_at_ref.value -
               10.0 * params.exponent * std::log10(distance_m / params.ref_distance_m)};
}

double distance_from_rssi(const PathLossParams& params, Dbm rssi) {
    if (!std::isfinite(rssi.value)) {
        throw DomainError("distance_from_rssi: RSSI must be finite");
    }
    return params.ref_distance_m *
           std::pow(10.0, (params.rssi_at_ref.value - rssi.value) / (10.0 * params.exponent));
}

std::optional<Dbm> sample_measured_rssi(const PathLossParams& params, const RadioSpec& spec,
                                        double distance_m, const ShadowingModel& shadow, Rng& rng) {
    const Dbm mean = rssi_at_distance(params, distance_m);
    const Dbm measured{draw_normal(rng, mean.value, shadow.sigma_db)};
    if (measured < spec.sensitivity) {
        return std::nullopt;
    }
    return measured;
}

}  // namespace rssiloc
