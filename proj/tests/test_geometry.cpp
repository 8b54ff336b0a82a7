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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "rssiloc/errors.hpp"
#include "rssiloc/geometry.hpp"

using namespace rssiloc;

TEST_CASE("euclidean_distance examples") {
    CHECK(euclidean_distance({0, 0}, {0, 0}) == 0.0);
    CHECK(euclidean_distance({0, 0}, {3, 4}) == 5.0);
    // sqrt(1125)
    CHECK(euclidean_distance({0, 0}, {15, 30}) == doctest::Approx(33.541019662496845).epsilon(1e-12));
}

TEST_CASE("euclidean_distance rejects non-finite points") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(euclidean_distance({nan, 0}, {0, 0}), DomainError);
    CHECK_THROWS_AS(euclidean_distance({0, 0}, {std::numeric_limits<double>::infinity(), 0}), DomainError);
}

TEST_CASE("euclidean_distance is symmetric and obeys the triangle inequality") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1000.0, 1000.0);
    for (int i = 0; i < 10000; ++i) {
        const Point2D a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
        const double ab = euclidean_distance(a, b);
        CHECK(ab == euclidean_distance(b, a));
        CHECK(ab >= 0.0);
        CHECK(ab <= euclidean_distance(a, c) + euclidean_distance(c, b) + 1e-9);
    }
}

TEST_CASE("dBm and milliwatt conversions") {
    CHECK(dbm_to_milliwatts(Dbm{0.0}) == 1.0);
    CHECK(dbm_to_milliwatts(Dbm{-30.0}) == doctest::Approx(0.001).epsilon(1e-14));
    CHECK(dbm_to_milliwatts(milliwatts_to_dbm(2.5)) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK_THROWS_AS(milliwatts_to_dbm(0.0), DomainError);
    CHECK_THROWS_AS(milliwatts_to_dbm(-1.0), DomainError);
}

TEST_CASE("dBm round trip over [1e-12, 1e3] mW") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> exponent(-12.0, 3.0);
    for (int i = 0; i < 10000; ++i) {
        const double mw = std::pow(10.0, exponent(rng));
        const double back = dbm_to_milliwatts(milliwatts_to_dbm(mw));
        CHECK(std::abs(back - mw) <= 1e-12 * mw);
    }
}

TEST_CASE("feet conversion of the indoor range") {
    CHECK(feet_to_meters(200.0) == doctest::Approx(60.96).epsilon(1e-12));
}
