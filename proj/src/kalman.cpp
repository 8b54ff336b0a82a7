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

#include "rssiloc/kalman.hpp"

#include <cmath>

#include "rssiloc/errors.hpp"

namespace rssiloc {

namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kCoincidenceTolerance = 1e-9;

bool nearly_symmetric(const Eigen::MatrixXd& m) {
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= kSymmetryTolerance * (1.0 + m.cwiseAbs().maxCoeff());
}

}  // namespace

KalmanConfig KalmanConfig::isotropic(double process_noise_m2, double range_sigma_m) {
    KalmanConfig cfg;
    cfg.process_noise = process_noise_m2 * Mat2::Identity();
    cfg.measurement_noise = range_sigma_m * range_sigma_m * Mat3::Identity();
    return cfg;
}

void KalmanConfig::validate() const {
    if (!state_transition.allFinite() || !control.allFinite() || !process_noise.allFinite() ||
        !measurement_noise.allFinite()) {
        throw DomainError("kalman: non-finite configuration entry");
    }
    if (!nearly_symmetric(process_noise) || !nearly_symmetric(measurement_noise)) {
        throw DomainError("kalman: Q and R must be symmetric");
    }
    const Eigen::SelfAdjointEigenSolver<Mat2> q_eig(process_noise);
    if (q_eig.eigenvalues().minCoeff() < -1e-12) {
        throw DomainError("kalman: Q must be positive semidefinite");
    }
    const Eigen::LLT<Mat3> r_llt(measurement_noise);
    if (r_llt.info() != Eigen::Success) {
        throw DomainError("kalman: R must be positive definite");
    }
}

KalmanState predict(const KalmanState& state, const KalmanConfig& cfg) {
    const Mat2& st = cfg.state_transition;
    return KalmanState{st * state.position + cfg.control,
                       st * state.covariance * st.transpose() + cfg.process_noise};
}

Mat32 observation_jacobian(const Vec2& predicted, const std::array<AnchorNode, 3>& anchors) {
    Mat32 h;
    for (int i = 0; i < 3; ++i) {
        const auto& a = anchors[static_cast<std::size_t>(i)].position;
        const Vec2 delta{predicted.x() - a.x, predicted.y() - a.y};
        const double r = delta.norm();
        if (!(r > kCoincidenceTolerance)) {
            throw SingularGeometryError("observation_jacobian: position coincides with an anchor");
        }
        h.row(i) = (delta / r).transpose();
    }
    return h;
}

Eigen::Vector3d predicted_ranges(const Vec2& position, const std::array<AnchorNode, 3>& anchors) {
    Eigen::Vector3d out;
    for (int i = 0; i < 3; ++i) {
        out(i) = euclidean_distance({position.x(), position.y()},
                                    anchors[static_cast<std::size_t>(i)].position);
    }
    return out;
}

Eigen::MatrixXd gain(const Mat2& covariance, const Eigen::MatrixXd& observation,
                     const Eigen::MatrixXd& measurement_noise) {
    if (observation.cols() != 2 || measurement_noise.rows() != observation.rows() ||
        measurement_noise.cols() != observation.rows()) {
        throw DomainError("gain: inconsistent matrix dimensions");
    }
    const Eigen::MatrixXd eht = covariance * observation.transpose();
    const Eigen::MatrixXd innovation_cov = observation * eht + measurement_noise;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(innovation_cov);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
        (ldlt.vectorD().array() <= 0.0).any()) {
        throw NumericalError("gain: innovation covariance is not invertible");
    }
    // K = E H^T S^-1  <=>  K^T = S^-1 (E H^T)^T, S symmetric.
    return ldlt.solve(eht.transpose()).transpose();
}

KalmanState update(const KalmanState& predicted, const RangeMeasurement& meas,
                   const KalmanConfig& cfg) {
    for (double r : meas.ranges_m) {
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw DomainError("update: measured ranges must be positive and finite");
        }
    }
    const Mat32 h = observation_jacobian(predicted.position, meas.anchors);
    const Mat23 k = gain(predicted.covariance, h, cfg.measurement_noise);
    const Eigen::Vector3d z{meas.ranges_m[0], meas.ranges_m[1], meas.ranges_m[2]};
    const Eigen::Vector3d innovation = z - predicted_ranges(predicted.position, meas.anchors);

    KalmanState out;
    out.position = predicted.position + k * innovation;
    const Mat2 cov = (Mat2::Identity() - k * h) * predicted.covariance;
    out.covariance = 0.5 * (cov + cov.transpose());
    return out;
}

KalmanState filter_step(const KalmanState& state, const RangeMeasurement& meas,
                        const KalmanConfig& cfg) {
    return update(predict(state, cfg), meas, cfg);
}

}  // namespace rssiloc
