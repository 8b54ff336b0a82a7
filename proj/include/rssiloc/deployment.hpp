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

struct Rect {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double width() const noexcept { return x_max - x_min; }
    double height() const noexcept { return y_max - y_min; }
    bool contains(const Point2D& p) const noexcept {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }

    // Throws DomainError unless finite with positive width and height.
    void validate() const;

    friend bool operator==(const Rect&, const Rect&) = default;
};

struct DeploymentPlan {
    std::vector<Point2D> beacons;  // row-major, bottom row first
    double spacing_x_m = 0.0;
    double spacing_y_m = 0.0;
    std::size_t columns = 0;
    std::size_t rows = 0;
};

struct CoverageReport {
    bool covered = false;
    std::vector<Point2D> uncovered;
    std::size_t samples = 0;
};

inline constexpr std::size_t kMaxPlannedBeacons = 1'000'000;

/// Square lattice over roi with spacing at most safety * range / sqrt(2), so
/// every cell point is within range of its four corners. Boundary rows and
/// columns are always included.
DeploymentPlan plan_square_grid_deployment(const Rect& roi, double radio_range_m,
                                           double safety = 0.9);

/// Brute-force check on a grid_step lattice (plus the far edges) that every
/// sample has at least three beacons within radio_range_m (closed ball).
CoverageReport verify_three_coverage(std::span<const Point2D> beacons, const Rect& roi,
                                     double radio_range_m, double grid_step_m = 0.25);
CoverageReport verify_three_coverage(const DeploymentPlan& plan, const Rect& roi,
                                     double radio_range_m, double grid_step_m = 0.25);

}  // namespace rssiloc
