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

#include <array>

#include <Eigen/Dense>

#include "rssiloc/geometry.hpp"

namespace rssiloc {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat32 = Eigen::Matrix<double, 3, 2>;
using Mat23 = Eigen::Matrix<double, 2, 3>;

struct KalmanConfig {
    static constexpr double kDefaultProcessNoise = 0.01;  // m^2
    static constexpr double kDefaultRangeSigma = 1.0;     // m

    Mat2 state_transition = Mat2::Identity();
    Vec2 control = Vec2::Zero();
    Mat2 process_noise = kDefaultProcessNoise * Mat2::Identity();
    Mat3 measurement_noise = kDefaultRangeSigma * kDefaultRangeSigma * Mat3::Identity();

    /// Q = q I, R = sigma_r^2 I.
    static KalmanConfig isotropic(double process_noise_m2, double range_sigma_m);

    // Q symmetric PSD, R symmetric PD.
    void validate() const;
};

struct KalmanState {
    Vec2 position = Vec2::Zero();
    Mat2 covariance = Mat2::Zero();
};

struct RangeMeasurement {
    std::array<AnchorNode, 3> anchors;
    std::array<double, 3> ranges_m;
};

KalmanState predict(const KalmanState& state, const KalmanConfig& cfg);

/// Jacobian of the range map h(P) = (|P - a_i|)_i at the given position; each
/// row is the unit vector from anchor i towards P.
Mat32 observation_jacobian(const Vec2& predicted, const std::array<AnchorNode, 3>& anchors);

Eigen::Vector3d predicted_ranges(const Vec2& position, const std::array<AnchorNode, 3>& anchors);

/// K = E H^T (H E H^T + R)^-1 for any measurement dimension.
Eigen::MatrixXd gain(const Mat2& covariance, const Eigen::MatrixXd& observation,
                     const Eigen::MatrixXd& measurement_noise);

/// Correction with the measured ranges as z and h(predicted) as the expected
/// measurement. Covariance becomes (I - K H) E, then symmetrized.
KalmanState update(const KalmanState& predicted, const RangeMeasurement& meas,
                   const KalmanConfig& cfg);

KalmanState filter_step(const KalmanState& state, const RangeMeasurement& meas,
                        const KalmanConfig& cfg);

}  // namespace rssiloc
