// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

#include <Eigen/Core>

#include "rlforge/core/pose.hpp"
#include "rlforge/geometry/camera_model.hpp"

namespace rlforge::geometry {

// Ground-plane footprint of the image. Top/bottom follow image rows and
// left/right image columns.
struct GroundQuad {
  Eigen::Vector2d top_left = Eigen::Vector2d::Zero();
  Eigen::Vector2d top_right = Eigen::Vector2d::Zero();
  Eigen::Vector2d bottom_left = Eigen::Vector2d::Zero();
  Eigen::Vector2d bottom_right = Eigen::Vector2d::Zero();
  Eigen::Vector2d center = Eigen::Vector2d::Zero();

  // Counter-clockwise order when the quad is not mirrored: TL, BL, BR, TR.
  std::array<Eigen::Vector2d, 4> ring() const { return {top_left, bottom_left, bottom_right, top_right}; }
  bool is_simple() const;
  bool contains(const Eigen::Vector2d& p) const;
};

// Distances from c0 for level flight at altitude z:
//   l_T = z tan(alpha/2 + atan(h/2f)),  l_B = -l_T
//   l_L = z tan(beta/2 + atan(w/2f)),   l_R = -l_L
// Corners are (along-track, lateral) offsets relative to c0 = (0, 0), lateral
// positive to the left. Throws GeometryError when an angle reaches 90 deg.
struct ClosedFormExtents {
  double top, bottom, left, right;
};
ClosedFormExtents closed_form_extents(double z, const CameraModel& model);
GroundQuad ground_quad_closed_form(double z, const CameraModel& model);

// Camera whose pixel FoV equals the combined angles of the closed form
// (alpha + 2 atan(h/2f), beta + 2 atan(w/2f)), distortion-free. Ray casting
// it from a nadir pose reproduces ground_quad_closed_form.
CameraModel composite_angle_equivalent(const CameraModel& model);

// Intersects the rays through the four undistorted image corners (pixel
// edges) and the principal point with z = 0. Throws GeometryError naming
// the first corner whose ray does not hit the ground.
GroundQuad ray_cast_footprint(const RigPose& pose, const CameraModel& model);

// Pixel positions of the image corners in TL, TR, BL, BR order.
std::array<Eigen::Vector2d, 4> image_corners(const CameraModel& model);

}  // namespace rlforge::geometry
