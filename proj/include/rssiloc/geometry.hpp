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
#include <cstdint>

namespace rssiloc {

// Internal units: meters, dBm, MHz. Conversions happen only at I/O edges.

struct Point2D {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2D&, const Point2D&) = default;
};

bool is_finite(const Point2D& p) noexcept;

inline Point2D operator+(Point2D a, Point2D b) noexcept { return {a.x + b.x, a.y + b.y}; }
inline Point2D operator-(Point2D a, Point2D b) noexcept { return {a.x - b.x, a.y - b.y}; }

struct Dbm {
    double value = 0.0;

    friend auto operator<=>(const Dbm&, const Dbm&) = default;
};

struct NodeId {
    std::uint32_t value = 0;

    friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

struct AnchorNode {
    NodeId id;
    Point2D position;

    friend bool operator==(const AnchorNode&, const AnchorNode&) = default;
};

/// Straight-line distance in meters. Throws DomainError on non-finite input.
double euclidean_distance(const Point2D& a, const Point2D& b);

double dbm_to_milliwatts(Dbm p);

/// Throws DomainError when milliwatts <= 0.
Dbm milliwatts_to_dbm(double milliwatts);

constexpr double feet_to_meters(double feet) noexcept { return feet * 0.3048; }

}  // namespace rssiloc
