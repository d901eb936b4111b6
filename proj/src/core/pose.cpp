// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/core/pose.hpp"

#include <Eigen/Geometry>

namespace rlforge {

Eigen::Matrix3d RigPose::world_from_body() const {
  const Eigen::AngleAxisd yaw(deg_to_rad(yaw_deg), Eigen::Vector3d::UnitZ());
  const Eigen::AngleAxisd pitch(deg_to_rad(pitch_deg), Eigen::Vector3d::UnitY());
  const Eigen::AngleAxisd roll(deg_to_rad(roll_deg), Eigen::Vector3d::UnitX());
  return (yaw * pitch * roll).toRotationMatrix();
}

Eigen::Vector2d RigPose::to_body_2d(const Eigen::Vector2d& world) const {
  const double c = std::cos(deg_to_rad(yaw_deg));
  const double s = std::sin(deg_to_rad(yaw_deg));
  const Eigen::Vector2d d = world - position.head<2>();
  return {c * d.x() + s * d.y(), -s * d.x() + c * d.y()};
}

Eigen::Vector2d RigPose::to_world_2d(const Eigen::Vector2d& body) const {
  const double c = std::cos(deg_to_rad(yaw_deg));
  const double s = std::sin(deg_to_rad(yaw_deg));
  return position.head<2>() + Eigen::Vector2d(c * body.x() - s * body.y(), s * body.x() + c * body.y());
}

}  // namespace rlforge
