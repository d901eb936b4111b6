// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include <Eigen/Core>

#include "rlforge/core/grid.hpp"
#include "rlforge/core/pose.hpp"
#include "rlforge/geometry/camera_model.hpp"
#include "rlforge/segmentation/panoptic.hpp"
#include "rlforge/sim/scene.hpp"

namespace rlforge::sim {

// Ground point seen through every observed pixel center of a camera at a
// fixed pose. Pixels looking above the horizon have none.
class PixelGroundMap {
 public:
  // Throws GeometryError when no pixel sees the ground.
  PixelGroundMap(const RigPose& pose, const geometry::CameraModel& model);

  std::optional<Eigen::Vector2d> at(int row, int col) const;
  const RigPose& pose() const { return pose_; }
  const geometry::CameraModel& model() const { return model_; }

 private:
  RigPose pose_;
  geometry::CameraModel model_;
  Grid2<Eigen::Vector2d> ground_;  // NaN where the ray misses the ground
};

bool point_in_polygon(const Eigen::Vector2d& p, const std::vector<Eigen::Vector2d>& polygon);

// Labels every pixel whose ground point falls inside a stuff region or an
// active object footprint. Objects are painted farthest first, so nearer
// ones win overlaps; instance id = object index + 1. The frame carries
// timestamp t and the given (true) pose.
segmentation::PanopticFrame render_aerial_labels(const Scene& scene, double t, const PixelGroundMap& ground);
segmentation::PanopticFrame render_aerial_labels(const Scene& scene, double t, const RigPose& uav_pose,
                                                 const geometry::CameraModel& camera);

}  // namespace rlforge::sim
