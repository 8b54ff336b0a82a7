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
#include <span>
#include <vector>

#include "rssiloc/geometry.hpp"

namespace rssiloc {

struct RssiObservation {
    AnchorNode anchor;
    std::vector<Dbm> samples;  // one aggregation window
};

struct AnchorReading {
    AnchorNode anchor;
    Dbm rssi;
};

struct TrilaterationProblem {
    std::vector<AnchorNode> anchors;
    std::vector<double> ranges_m;
};

struct PositionEstimate {
    Point2D position;
};

/// Mean of the readings in dBm. Throws DomainError on an empty window.
Dbm aggregate_rssi(std::span<const Dbm> samples);
Dbm aggregate_rssi(const RssiObservation& obs);

/// The k strongest readings, strongest first, ties to the lower NodeId.
/// Throws InsufficientAnchorsError when fewer than k are available.
std::vector<AnchorReading> select_anchors(std::span<const AnchorReading> readings, std::size_t k = 3);

/// Closed-form three-anchor solve, P = (A^T A)^-1 A^T B with rows relative to
/// the first anchor. Requires exactly three anchors.
PositionEstimate trilaterate(const TrilaterationProblem& problem);

/// Same linearization for k >= 3 anchors (k - 1 rows).
PositionEstimate least_squares_multilaterate(std::span<const AnchorNode> anchors,
                                             std::span<const double> ranges_m);

}  // namespace rssiloc
