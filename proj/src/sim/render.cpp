// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/sim/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rlforge/core/error.hpp"

namespace rlforge::sim {

using segmentation::ClassId;

PixelGroundMap::PixelGroundMap(const RigPose& pose, const geometry::CameraModel& model)
    : pose_(pose), model_(model) {
  model_.validate();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  ground_ = Grid2<Eigen::Vector2d>(model.height_px, model.width_px, Eigen::Vector2d(nan, nan));
  const Eigen::Vector3d origin = pose.position;
  const bool distorted = !model.distortion.is_zero();
  bool any = false;
  for (int r = 0; r < model.height_px; ++r) {
    for (int c = 0; c < model.width_px; ++c) {
      Eigen::Vector2d px(c, r);
      if (distorted) {
        const geometry::UndistortResult u = geometry::undistort_point(px, model);
        if (!u.converged) continue;
        px = u.pixel;
      }
      if (const auto g = geometry::intersect_ground(origin, geometry::pixel_ray(px, pose, model))) {
        ground_(r, c) = *g;
        any = true;
      }
    }
  }
  if (!any) throw GeometryError("camera does not see the ground plane");
}

std::optional<Eigen::Vector2d> PixelGroundMap::at(int row, int col) const {
  const Eigen::Vector2d& g = ground_(row, col);
  if (std::isnan(g.x())) return std::nullopt;
  return g;
}

bool point_in_polygon(const Eigen::Vector2d& p, const std::vector<Eigen::Vector2d>& polygon) {
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Eigen::Vector2d& a = polygon[i];
    const Eigen::Vector2d& b = polygon[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

namespace {

struct PixelBox {
  int r0, r1, c0, c1;  // inclusive
};

// Pixel window that certainly contains the projection of `polygon`; the full
// image when any densified edge point does not project.
PixelBox pixel_window(const std::vector<Eigen::Vector2d>& polygon, const PixelGroundMap& ground) {
  const auto& m = ground.model();
  const PixelBox full{0, m.height_px - 1, 0, m.width_px - 1};
  double u0 = std::numeric_limits<double>::infinity(), u1 = -u0, v0 = u0, v1 = -u0;
  constexpr int kSteps = 8;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Eigen::Vector2d& a = polygon[i];
    const Eigen::Vector2d& b = polygon[(i + 1) % polygon.size()];
    for (int s = 0; s < kSteps; ++s) {
      const Eigen::Vector2d p = a + (b - a) * (static_cast<double>(s) / kSteps);
      const auto px = geometry::project_to_pixel({p.x(), p.y(), 0.0}, ground.pose(), m);
      if (!px) return full;
      u0 = std::min(u0, px->x());
      u1 = std::max(u1, px->x());
      v0 = std::min(v0, px->y());
      v1 = std::max(v1, px->y());
    }
  }
  constexpr double kPad = 2.0;
  PixelBox box{static_cast<int>(std::floor(v0 - kPad)), static_cast<int>(std::ceil(v1 + kPad)),
               static_cast<int>(std::floor(u0 - kPad)), static_cast<int>(std::ceil(u1 + kPad))};
  box.r0 = std::max(box.r0, 0);
  box.c0 = std::max(box.c0, 0);
  box.r1 = std::min(box.r1, full.r1);
  box.c1 = std::min(box.c1, full.c1);
  return box;
}

template <typename Paint>
void fill_polygon(const std::vector<Eigen::Vector2d>& polygon, const PixelGroundMap& ground, Paint&& paint) {
  const PixelBox box = pixel_window(polygon, ground);
  for (int r = box.r0; r <= box.r1; ++r) {
    for (int c = box.c0; c <= box.c1; ++c) {
      const auto g = ground.at(r, c);
      if (g && point_in_polygon(*g, polygon)) paint(r, c);
    }
  }
}

}  // namespace

segmentation::PanopticFrame render_aerial_labels(const Scene& scene, double t, const PixelGroundMap& ground) {
  segmentation::PanopticFrame frame(ground.model().height_px, ground.model().width_px);
  frame.timestamp = t;
  frame.camera_pose = ground.pose();
  frame.camera_pose.timestamp = t;

  for (const StuffRegion& region : scene.stuff) {
    const auto cls = static_cast<std::uint8_t>(region.cls);
    fill_polygon(region.polygon, ground, [&](int r, int c) { frame.class_map(r, c) = cls; });
  }

  const Eigen::Vector2d below = ground.pose().position.head<2>();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < scene.objects.size(); ++i) {
    if (scene.objects[i].trajectory.active(t)) order.push_back(i);
  }
  // Farthest first; index breaks ties so the order is total.
  std::vector<double> dist(scene.objects.size(), 0.0);
  for (std::size_t i : order) dist[i] = (scene.objects[i].trajectory.position(t) - below).norm();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });

  for (std::size_t i : order) {
    const SceneObject& o = scene.objects[i];
    const auto cls = static_cast<std::uint8_t>(o.cls);
    const auto id = static_cast<std::uint16_t>(i + 1);
    fill_polygon(o.footprint(t), ground, [&](int r, int c) {
      frame.class_map(r, c) = cls;
      frame.instance_map(r, c) = id;
    });
  }
  return frame;
}

segmentation::PanopticFrame render_aerial_labels(const Scene& scene, double t, const RigPose& uav_pose,
                                                 const geometry::CameraModel& camera) {
  return render_aerial_labels(scene, t, PixelGroundMap(uav_pose, camera));
}

}  // namespace rlforge::sim
