// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/geometry/camera_model.hpp"

#include <cmath>

#include <Eigen/LU>
#include <fmt/format.h>

#include "rlforge/core/error.hpp"

namespace rlforge::geometry {

Eigen::Vector2d Distortion::apply(const Eigen::Vector2d& n) const {
  const double x = n.x(), y = n.y();
  const double r2 = x * x + y * y;
  const double radial = 1.0 + r2 * (k1 + r2 * (k2 + r2 * k3));
  return {x * radial + 2.0 * p1 * x * y + p2 * (r2 + 2.0 * x * x),
          y * radial + p1 * (r2 + 2.0 * y * y) + 2.0 * p2 * x * y};
}

Eigen::Matrix2d Distortion::jacobian(const Eigen::Vector2d& n) const {
  const double x = n.x(), y = n.y();
  const double r2 = x * x + y * y;
  const double radial = 1.0 + r2 * (k1 + r2 * (k2 + r2 * k3));
  const double g = 2.0 * k1 + r2 * (4.0 * k2 + 6.0 * k3 * r2);  // d(radial)/d(r2) * 2
  Eigen::Matrix2d j;
  j(0, 0) = radial + g * x * x + 2.0 * p1 * y + 6.0 * p2 * x;
  j(0, 1) = g * x * y + 2.0 * p1 * x + 2.0 * p2 * y;
  j(1, 0) = g * x * y + 2.0 * p1 * x + 2.0 * p2 * y;
  j(1, 1) = radial + g * y * y + 6.0 * p1 * y + 2.0 * p2 * x;
  return j;
}

void CameraModel::validate() const {
  auto require = [](bool ok, std::string_view what) {
    if (!ok) throw ConfigError(fmt::format("camera model: {}", what));
  };
  require(focal_length_m > 0 && sensor_width_m > 0 && sensor_height_m > 0, "f, w and h must be > 0");
  require(width_px >= 1 && height_px >= 1, "pixel dimensions must be >= 1");
  require(fov_v_deg > 0 && fov_v_deg < 180 && fov_h_deg > 0 && fov_h_deg < 180, "FoV angles must be in (0, 180) deg");
  const Distortion& d = distortion;
  require(std::isfinite(d.k1) && std::isfinite(d.k2) && std::isfinite(d.k3) && std::isfinite(d.p1) &&
              std::isfinite(d.p2),
          "distortion coefficients must be finite");
}

std::vector<std::string> CameraModel::consistency_warnings(double relative_tolerance) const {
  std::vector<std::string> out;
  auto check = [&](const char* name, double fov_deg, double sensor_m) {
    const double from_fov = std::tan(deg_to_rad(fov_deg) / 2.0);
    const double from_sensor = sensor_m / (2.0 * focal_length_m);
    if (std::abs(from_fov - from_sensor) > relative_tolerance * from_sensor) {
      out.push_back(fmt::format("{}: tan(fov/2) = {:.4f} but sensor/2f = {:.4f}", name, from_fov, from_sensor));
    }
  };
  check("vertical", fov_v_deg, sensor_height_m);
  check("horizontal", fov_h_deg, sensor_width_m);
  return out;
}

double CameraModel::fx() const { return 0.5 * width_px / std::tan(deg_to_rad(fov_h_deg) / 2.0); }
double CameraModel::fy() const { return 0.5 * height_px / std::tan(deg_to_rad(fov_v_deg) / 2.0); }

Eigen::Vector2d CameraModel::center() const {
  return principal_point.value_or(Eigen::Vector2d(0.5 * (width_px - 1), 0.5 * (height_px - 1)));
}

Eigen::Vector2d CameraModel::pixel_to_normalized(const Eigen::Vector2d& px) const {
  const Eigen::Vector2d c = center();
  return {(px.x() - c.x()) / fx(), (px.y() - c.y()) / fy()};
}

Eigen::Vector2d CameraModel::normalized_to_pixel(const Eigen::Vector2d& n) const {
  const Eigen::Vector2d c = center();
  return {n.x() * fx() + c.x(), n.y() * fy() + c.y()};
}

Eigen::Vector2d CameraModel::distort_pixel(const Eigen::Vector2d& px) const {
  if (distortion.is_zero()) return px;
  return normalized_to_pixel(distortion.apply(pixel_to_normalized(px)));
}

UndistortResult undistort_point(const Eigen::Vector2d& pixel, const CameraModel& model) {
  if (model.distortion.is_zero()) return {pixel, true};
  constexpr int kMaxIterations = 50;
  constexpr double kTolerance = 1e-12;
  const Eigen::Vector2d target = model.pixel_to_normalized(pixel);
  const Distortion& d = model.distortion;
  Eigen::Vector2d n = target;
  Eigen::Vector2d residual = d.apply(n) - target;
  for (int it = 0; it < kMaxIterations && residual.norm() > kTolerance; ++it) {
    const Eigen::Matrix2d j = d.jacobian(n);
    if (!(std::abs(j.determinant()) > 1e-300)) break;
    const Eigen::Vector2d step = j.partialPivLu().solve(residual);
    // Halve the step until the residual shrinks.
    double scale = 1.0;
    Eigen::Vector2d candidate = n - step;
    Eigen::Vector2d next = d.apply(candidate) - target;
    while (next.norm() >= residual.norm() && scale > 1e-6) {
      scale *= 0.5;
      candidate = n - scale * step;
      next = d.apply(candidate) - target;
    }
    if (next.norm() >= residual.norm()) break;
    n = candidate;
    residual = next;
  }
  return {model.normalized_to_pixel(n), residual.norm() <= kTolerance};
}

std::vector<UndistortResult> undistort_points(const std::vector<Eigen::Vector2d>& pixels, const CameraModel& model) {
  std::vector<UndistortResult> out;
  out.reserve(pixels.size());
  for (const auto& p : pixels) out.push_back(undistort_point(p, model));
  return out;
}

Eigen::Matrix3d world_from_camera(const RigPose& pose) {
  // Columns: camera x, y, z axes expressed in body coordinates.
  Eigen::Matrix3d body_from_camera;
  body_from_camera << 0, 0, 1,
                      -1, 0, 0,
                      0, -1, 0;
  return pose.world_from_body() * body_from_camera;
}

std::optional<Eigen::Vector2d> project_to_pixel(const Eigen::Vector3d& world, const RigPose& pose,
                                                const CameraModel& model) {
  const Eigen::Vector3d cam = world_from_camera(pose).transpose() * (world - pose.position);
  if (!(cam.z() > 0)) return std::nullopt;
  const Eigen::Vector2d n(cam.x() / cam.z(), cam.y() / cam.z());
  return model.normalized_to_pixel(model.distortion.is_zero() ? n : model.distortion.apply(n));
}

Eigen::Vector3d pixel_ray(const Eigen::Vector2d& undistorted_px, const RigPose& pose, const CameraModel& model) {
  const Eigen::Vector2d n = model.pixel_to_normalized(undistorted_px);
  return world_from_camera(pose) * Eigen::Vector3d(n.x(), n.y(), 1.0);
}

std::optional<Eigen::Vector2d> intersect_ground(const Eigen::Vector3d& origin, const Eigen::Vector3d& direction) {
  if (!(direction.z() < 0) || !(origin.z() > 0)) return std::nullopt;
  const double t = -origin.z() / direction.z();
  const Eigen::Vector3d hit = origin + t * direction;
  return Eigen::Vector2d(hit.x(), hit.y());
}

}  // namespace rlforge::geometry
