// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/geometry/footprint.hpp"

#include <cmath>

#include <fmt/format.h>

#include "rlforge/core/error.hpp"

namespace rlforge::geometry {
namespace {

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                    const Eigen::Vector2d& d) {
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

}  // namespace

bool GroundQuad::is_simple() const {
  const auto r = ring();
  return !segments_cross(r[0], r[1], r[2], r[3]) && !segments_cross(r[1], r[2], r[3], r[0]);
}

bool GroundQuad::contains(const Eigen::Vector2d& p) const {
  const auto r = ring();
  bool inside = false;
  for (std::size_t i = 0, j = r.size() - 1; i < r.size(); j = i++) {
    if ((r[i].y() > p.y()) != (r[j].y() > p.y())) {
      const double x = r[j].x() + (p.y() - r[j].y()) * (r[i].x() - r[j].x()) / (r[i].y() - r[j].y());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

ClosedFormExtents closed_form_extents(double z, const CameraModel& model) {
  model.validate();
  if (!(z > 0)) throw GeometryError("closed-form footprint needs altitude z > 0");
  const double vertical = deg_to_rad(model.fov_v_deg) / 2.0 + std::atan(model.sensor_height_m / (2.0 * model.focal_length_m));
  const double horizontal = deg_to_rad(model.fov_h_deg) / 2.0 + std::atan(model.sensor_width_m / (2.0 * model.focal_length_m));
  for (const auto& [name, angle] : {std::pair{"top/bottom", vertical}, std::pair{"left/right", horizontal}}) {
    if (angle >= deg_to_rad(90.0)) {
      throw GeometryError(fmt::format("unbounded footprint: {} angle {:.3f} deg reaches the horizon", name,
                                      rad_to_deg(angle)));
    }
  }
  const double lt = z * std::tan(vertical);
  const double ll = z * std::tan(horizontal);
  return {lt, -lt, ll, -ll};
}

GroundQuad ground_quad_closed_form(double z, const CameraModel& model) {
  const ClosedFormExtents e = closed_form_extents(z, model);
  GroundQuad q;
  q.top_left = {e.top, e.left};
  q.top_right = {e.top, e.right};
  q.bottom_left = {e.bottom, e.left};
  q.bottom_right = {e.bottom, e.right};
  q.center = Eigen::Vector2d::Zero();
  return q;
}

CameraModel composite_angle_equivalent(const CameraModel& model) {
  CameraModel eq = model;
  eq.fov_v_deg = model.fov_v_deg + 2.0 * rad_to_deg(std::atan(model.sensor_height_m / (2.0 * model.focal_length_m)));
  eq.fov_h_deg = model.fov_h_deg + 2.0 * rad_to_deg(std::atan(model.sensor_width_m / (2.0 * model.focal_length_m)));
  eq.principal_point.reset();
  eq.distortion = {};
  return eq;
}

std::array<Eigen::Vector2d, 4> image_corners(const CameraModel& model) {
  const double l = -0.5, t = -0.5;
  const double r = model.width_px - 0.5, b = model.height_px - 0.5;
  return {Eigen::Vector2d(l, t), Eigen::Vector2d(r, t), Eigen::Vector2d(l, b), Eigen::Vector2d(r, b)};
}

GroundQuad ray_cast_footprint(const RigPose& pose, const CameraModel& model) {
  model.validate();
  static constexpr const char* kNames[] = {"top-left", "top-right", "bottom-left", "bottom-right"};
  const auto corners = image_corners(model);
  Eigen::Vector2d hits[4];
  for (int i = 0; i < 4; ++i) {
    const auto hit = intersect_ground(pose.position, pixel_ray(corners[i], pose, model));
    if (!hit) throw GeometryError(fmt::format("{} corner ray does not intersect the ground plane", kNames[i]));
    hits[i] = *hit;
  }
  const auto center = intersect_ground(pose.position, pixel_ray(model.center(), pose, model));
  if (!center) throw GeometryError("optical axis does not intersect the ground plane");
  return {hits[0], hits[1], hits[2], hits[3], *center};
}

}  // namespace rlforge::geometry
