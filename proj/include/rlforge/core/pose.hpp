// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <numbers>

namespace rlforge {

inline constexpr double kSpeedOfLight = 299792458.0;

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

// Six degree-of-freedom pose in the global frame (x east, y north, z up).
//
// Body axes are x forward, y left, z up. The orientation is applied as
// R = Rz(yaw) * Ry(pitch) * Rx(roll). With z up and y left, a positive pitch
// lowers the nose: pitch = 90 deg points the body x axis straight down.
// Sensors look along body +x (radar boresight, camera optical axis).
struct RigPose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double yaw_deg = 0.0;
  double pitch_deg = 0.0;
  double roll_deg = 0.0;
  double timestamp = 0.0;  // s, UTC

  Eigen::Matrix3d world_from_body() const;

  // Planar transforms using yaw only; used for the horizontal radar plane.
  Eigen::Vector2d to_body_2d(const Eigen::Vector2d& world) const;
  Eigen::Vector2d to_world_2d(const Eigen::Vector2d& body) const;
};

}  // namespace rlforge
