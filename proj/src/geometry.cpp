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

#include "rssiloc/geometry.hpp"

#include <cmath>

#include "rssiloc/errors.hpp"

namespace rssiloc {

bool is_finite(const Point2D& p) noexcept { return std::isfinite(p.x) && std::isfinite(p.y); }

double euclidean_distance(const Point2D& a, const Point2D& b) {
    if (!is_finite(a) || !is_finite(b)) {
        throw DomainError("euclidean_distance: non-finite coordinate");
    }
    return std::hypot(a.x - b.x, a.y - b.y);
}

double dbm_to_milliwatts(Dbm p) { return std::pow(10.0, p.value / 10.0); }

Dbm milliwatts_to_dbm(double milliwatts) {
    if (!(milliwatts > 0.0) || !std::isfinite(milliwatts)) {
        throw DomainError("milliwatts_to_dbm: power must be positive and finite");
    }
    return Dbm{10.0 * std::log10(milliwatts)};
}

}  // namespace rssiloc
