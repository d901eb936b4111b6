// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rlforge/core/pose.hpp"

namespace rlforge::geometry {

// Brown-Conrady coefficients in the OpenCV convention, acting on normalized
// image coordinates.
struct Distortion {
  double k1 = 0.0, k2 = 0.0, k3 = 0.0;
  double p1 = 0.0, p2 = 0.0;

  bool is_zero() const { return k1 == 0 && k2 == 0 && k3 == 0 && p1 == 0 && p2 == 0; }
  Eigen::Vector2d apply(const Eigen::Vector2d& undistorted) const;
  Eigen::Matrix2d jacobian(const Eigen::Vector2d& undistorted) const;
};

// Pinhole camera. Pixel intrinsics follow from the field of view
// (fx = (W/2) / tan(beta/2), fy = (H/2) / tan(alpha/2)); the physical focal
// length and sensor size only enter the closed-form footprint.
//
// Pixel (u, v) = (column, row) with pixel centers at integer coordinates, so
// the image spans [-0.5, W-0.5] x [-0.5, H-0.5].
struct CameraModel {
  double focal_length_m = 3.04e-3;
  double sensor_width_m = 3.68e-3;
  double sensor_height_m = 2.76e-3;
  int width_px = 400;
  int height_px = 748;
  std::optional<Eigen::Vector2d> principal_point;  // default: image center
  double fov_v_deg = 115.0;  // alpha, along image rows
  double fov_h_deg = 80.0;   // beta, along image columns
  Distortion distortion;

  // Throws ConfigError when a field is out of range.
  void validate() const;
  // Disagreements between the FoV and the sensor geometry beyond
  // `relative_tolerance` (tan(alpha/2) vs h/2f, tan(beta/2) vs w/2f).
  std::vector<std::string> consistency_warnings(double relative_tolerance = 0.05) const;

  double fx() const;
  double fy() const;
  Eigen::Vector2d center() const;

  Eigen::Vector2d pixel_to_normalized(const Eigen::Vector2d& px) const;
  Eigen::Vector2d normalized_to_pixel(const Eigen::Vector2d& n) const;
  // Undistorted pixel -> observed (distorted) pixel.
  Eigen::Vector2d distort_pixel(const Eigen::Vector2d& px) const;
};

struct UndistortResult {
  Eigen::Vector2d pixel;
  bool converged = false;
};

// Inverse of distort_pixel by damped Newton iteration on the normalized
// coordinates (at most 50 iterations, tolerance 1e-12).
std::vector<UndistortResult> undistort_points(const std::vector<Eigen::Vector2d>& pixels, const CameraModel& model);
UndistortResult undistort_point(const Eigen::Vector2d& pixel, const CameraModel& model);

// Camera frame is x right, y down, z along the optical axis (body +x);
// x_cam = -y_body, y_cam = -z_body. With the camera pitched down the image
// top therefore points along the heading and image left is body +y.
Eigen::Matrix3d world_from_camera(const RigPose& pose);

// Projects a world point to an observed pixel; nullopt when it lies behind the camera.
std::optional<Eigen::Vector2d> project_to_pixel(const Eigen::Vector3d& world, const RigPose& pose,
                                                const CameraModel& model);

// World-frame direction of the ray through an undistorted pixel.
Eigen::Vector3d pixel_ray(const Eigen::Vector2d& undistorted_px, const RigPose& pose, const CameraModel& model);

// Intersection of a ray from the camera with the z = 0 plane.
std::optional<Eigen::Vector2d> intersect_ground(const Eigen::Vector3d& origin, const Eigen::Vector3d& direction);

}  // namespace rlforge::geometry
