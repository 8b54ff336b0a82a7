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

#include "rssiloc/localization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rssiloc/errors.hpp"

namespace rssiloc {

Dbm aggregate_rssi(std::span<const Dbm> samples) {
    if (samples.empty()) {
        throw DomainError("aggregate_rssi: empty sample window");
    }
    double sum = 0.0;
    for (const Dbm s : samples) {
        sum += s.value;
    }
    return Dbm{sum / static_cast<double>(samples.size())};
}

Dbm aggregate_rssi(const RssiObservation& obs) { return aggregate_rssi(std::span<const Dbm>(obs.samples)); }

std::vector<AnchorReading> select_anchors(std::span<const AnchorReading> readings, std::size_t k) {
    if (readings.size() < k) {
        throw InsufficientAnchorsError("select_anchors: need " + std::to_string(k) +
                                       " readings, got " + std::to_string(readings.size()));
    }
    std::vector<AnchorReading> sorted(readings.begin(), readings.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const AnchorReading& a, const AnchorReading& b) {
        if (a.rssi != b.rssi) {
            return a.rssi > b.rssi;
        }
        return a.anchor.id < b.anchor.id;
    });
    sorted.resize(k);
    return sorted;
}

namespace {

void check_anchor_set(std::span<const AnchorNode> anchors, std::span<const double> ranges_m) {
    if (anchors.size() != ranges_m.size()) {
        throw DomainError("trilateration: anchor and range counts differ");
    }
    if (anchors.size() < 3) {
        throw InsufficientAnchorsError("trilateration: at least three anchors required, got " +
                                       std::to_string(anchors.size()));
    }
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        if (!is_finite(anchors[i].position)) {
            throw DomainError("trilateration: non-finite anchor position");
        }
        if (!(ranges_m[i] > 0.0) || !std::isfinite(ranges_m[i])) {
            throw DomainError("trilateration: ranges must be positive and finite");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (anchors[i].position == anchors[j].position) {
                throw DegenerateGeometryError("trilateration: coincident anchors");
            }
        }
    }
}

}  // namespace

PositionEstimate least_squares_multilaterate(std::span<const AnchorNode> anchors,
                                             std::span<const double> ranges_m) {
    check_anchor_set(anchors, ranges_m);

    // Solved in a frame with the first anchor at the origin, where
    // x1 = y1 = 0 and B reduces to d1^2 - di^2 + xi^2 + yi^2. A^T A and A^T B
    // are accumulated directly; the system is only ever 2x2.
    const Point2D p1 = anchors[0].position;
    const double d1 = ranges_m[0];
    double ata_xx = 0.0, ata_xy = 0.0, ata_yy = 0.0;
    double atb_x = 0.0, atb_y = 0.0;
    for (std::size_t i = 1; i < anchors.size(); ++i) {
        const Point2D rel = anchors[i].position - p1;
        const double ax = 2.0 * rel.x;
        const double ay = 2.0 * rel.y;
        const double b = d1 * d1 - ranges_m[i] * ranges_m[i] + (rel.x * rel.x + rel.y * rel.y);
        ata_xx += ax * ax;
        ata_xy += ax * ay;
        ata_yy += ay * ay;
        atb_x += ax * b;
        atb_y += ay * b;
    }

    const double det = ata_xx * ata_yy - ata_xy * ata_xy;
    const double scale = ata_xx + ata_yy;
    if (!(det > 1e-12 * scale * scale)) {
        throw DegenerateGeometryError("trilateration: anchors are collinear");
    }
    // Explicit 2x2 inverse.
    const double inv_xx = ata_yy / det;
    const double inv_xy = -ata_xy / det;
    const double inv_yy = ata_xx / det;
    const Point2D local{inv_xx * atb_x + inv_xy * atb_y, inv_xy * atb_x + inv_yy * atb_y};
    return PositionEstimate{local + p1};
}

PositionEstimate trilaterate(const TrilaterationProblem& problem) {
    if (problem.anchors.size() > 3) {
        throw DomainError("trilaterate: exactly three anchors expected; use least_squares_multilaterate");
    }
    return least_squares_multilaterate(problem.anchors, problem.ranges_m);
}

}  // namespace rssiloc
