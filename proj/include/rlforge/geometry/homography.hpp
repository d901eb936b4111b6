// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "rlforge/core/pose.hpp"
#include "rlforge/geometry/camera_model.hpp"

namespace rlforge::geometry {

// Planar projective map, scaled so that m(2,2) = 1 whenever it is nonzero.
class Homography {
 public:
  Homography() : m_(Eigen::Matrix3d::Identity()) {}
  // Throws GeometryError if m is singular or not finite.
  explicit Homography(const Eigen::Matrix3d& m);

  static Homography translation(double tx, double ty);

  const Eigen::Matrix3d& matrix() const { return m_; }
  // nullopt when the point maps to infinity (w == 0).
  std::optional<Eigen::Vector2d> apply(const Eigen::Vector2d& p) const;
  Eigen::Vector3d apply_homogeneous(const Eigen::Vector2d& p) const { return m_ * p.homogeneous(); }
  Homography inverse() const;
  // (*this) after `first`: x -> this(first(x)).
  Homography compose(const Homography& first) const;

 private:
  Eigen::Matrix3d m_;
};

using Correspondence = std::pair<Eigen::Vector2d, Eigen::Vector2d>;  // (source, destination)

// Normalized DLT: both point sets are translated to their centroid and
// scaled to mean distance sqrt(2), the 2n x 9 system is solved by SVD and the
// result de-normalized. With more than 4 pairs this is the algebraic
// least-squares solution. Throws GeometryError for fewer than 4 pairs,
// three collinear source points (4 pairs) or a rank-deficient system.
Homography homography_from_correspondences(const std::vector<Correspondence>& pairs);

// Undistorted pixel -> world ground plane, from the four image corners and
// their ray-cast ground points.
Homography camera_homography(const RigPose& pose, const CameraModel& model);

}  // namespace rlforge::geometry
