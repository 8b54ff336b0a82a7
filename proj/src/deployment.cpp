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

#include "rssiloc/deployment.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "rssiloc/errors.hpp"

namespace rssiloc {

void Rect::validate() const {
    if (!std::isfinite(x_min) || !std::isfinite(y_min) || !std::isfinite(x_max) || !std::isfinite(y_max)) {
        throw DomainError("roi: non-finite bound");
    }
    if (!(width() > 0.0) || !(height() > 0.0)) {
        throw DomainError("roi: width and height must be positive");
    }
}

namespace {

// Lattice positions from lo to hi inclusive, both ends exact.
std::vector<double> axis_positions(double lo, double hi, std::size_t count) {
    std::vector<double> out(count);
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = lo + step * static_cast<double>(i);
    }
    out.back() = hi;
    return out;
}

std::vector<double> sample_positions(double lo, double hi, double step) {
    std::vector<double> out;
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    out.reserve(n + 2);
    for (std::size_t i = 0; i <= n; ++i) {
        out.push_back(lo + step * static_cast<double>(i));
    }
    if (hi - out.back() > 1e-9 * (1.0 + std::abs(hi))) {
        out.push_back(hi);
    }
    return out;
}

struct CellKey {
    long long cx;
    long long cy;
    bool operator==(const CellKey&) const = default;
};

struct CellHash {
    std::size_t operator()(const CellKey& k) const noexcept {
        return std::hash<long long>{}(k.cx * 73856093LL ^ k.cy * 19349663LL);
    }
};

}  // namespace

DeploymentPlan plan_square_grid_deployment(const Rect& roi, double radio_range_m, double safety) {
    roi.validate();
    if (!(radio_range_m > 0.0) || !std::isfinite(radio_range_m)) {
        throw DomainError("deployment: radio range must be > 0");
    }
    if (!(safety > 0.0 && safety <= 1.0)) {
        throw DomainError("deployment: safety factor must lie in (0, 1]");
    }

    const double max_spacing = safety * radio_range_m / std::sqrt(2.0);
    const double cols_f = std::ceil(roi.width() / max_spacing) + 1.0;
    const double rows_f = std::ceil(roi.height() / max_spacing) + 1.0;
    if (cols_f * rows_f > static_cast<double>(kMaxPlannedBeacons)) {
        throw CapacityError("deployment: plan would need more than " +
                            std::to_string(kMaxPlannedBeacons) + " beacons");
    }

    DeploymentPlan plan;
    plan.columns = static_cast<std::size_t>(cols_f);
    plan.rows = static_cast<std::size_t>(rows_f);
    plan.spacing_x_m = roi.width() / static_cast<double>(plan.columns - 1);
    plan.spacing_y_m = roi.height() / static_cast<double>(plan.rows - 1);

    const auto xs = axis_positions(roi.x_min, roi.x_max, plan.columns);
    const auto ys = axis_positions(roi.y_min, roi.y_max, plan.rows);
    plan.beacons.reserve(plan.columns * plan.rows);
    for (double y : ys) {
        for (double x : xs) {
            plan.beacons.push_back({x, y});
        }
    }
    return plan;
}

CoverageReport verify_three_coverage(std::span<const Point2D> beacons, const Rect& roi,
                                     double radio_range_m, double grid_step_m) {
    roi.validate();
    if (!(grid_step_m > 0.0) || !std::isfinite(grid_step_m)) {
        throw DomainError("coverage: grid step must be > 0");
    }
    if (!(radio_range_m > 0.0) || !std::isfinite(radio_range_m)) {
        throw DomainError("coverage: radio range must be > 0");
    }

    // Bucket beacons into range-sized cells so each sample only looks at the
    // 3x3 neighbourhood around it.
    const double limit = radio_range_m * (1.0 + 1e-12);
    const double cell = limit * (1.0 + 1e-9);
    auto key_of = [cell](double x, double y) {
        return CellKey{static_cast<long long>(std::floor(x / cell)),
                       static_cast<long long>(std::floor(y / cell))};
    };
    std::unordered_map<CellKey, std::vector<Point2D>, CellHash> buckets;
    for (const Point2D& b : beacons) {
        buckets[key_of(b.x, b.y)].push_back(b);
    }

    CoverageReport report;
    const auto xs = sample_positions(roi.x_min, roi.x_max, grid_step_m);
    const auto ys = sample_positions(roi.y_min, roi.y_max, grid_step_m);
    report.samples = xs.size() * ys.size();
    for (double y : ys) {
        for (double x : xs) {
            const CellKey home = key_of(x, y);
            int hits = 0;
            for (long long dy = -1; dy <= 1 && hits < 3; ++dy) {
                for (long long dx = -1; dx <= 1 && hits < 3; ++dx) {
                    const auto it = buckets.find({home.cx + dx, home.cy + dy});
                    if (it == buckets.end()) {
                        continue;
                    }
                    for (const Point2D& b : it->second) {
                        if (std::hypot(b.x - x, b.y - y) <= limit && ++hits >= 3) {
                            break;
                        }
                    }
                }
            }
            if (hits < 3) {
                report.uncovered.push_back({x, y});
            }
        }
    }
    report.covered = report.uncovered.empty();
    return report;
}

CoverageReport verify_three_coverage(const DeploymentPlan& plan, const Rect& roi,
                                     double radio_range_m, double grid_step_m) {
    return verify_three_coverage(std::span<const Point2D>(plan.beacons), roi, radio_range_m, grid_step_m);
}

}  // namespace rssiloc
