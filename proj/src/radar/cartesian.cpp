// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/radar/cartesian.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "rlforge/core/error.hpp"

namespace rlforge::radar {
namespace {

struct Bracket {
  int lo;
  double t;
};

// Index lo and weight t so that x = axis[lo] + t (axis[lo+1] - axis[lo]).
std::optional<Bracket> bracket(const std::vector<double>& axis, double x) {
  if (axis.size() < 2 || x < axis.front() || x > axis.back()) return std::nullopt;
  auto it = std::upper_bound(axis.begin(), axis.end(), x);
  int hi = static_cast<int>(it - axis.begin());
  if (hi >= static_cast<int>(axis.size())) hi = static_cast<int>(axis.size()) - 1;
  const int lo = hi - 1;
  return Bracket{lo, (x - axis[lo]) / (axis[hi] - axis[lo])};
}

}  // namespace

PolarPoint world_to_polar(const Eigen::Vector2d& world, const RigPose& radar_pose) {
  const Eigen::Vector2d body = radar_pose.to_body_2d(world);
  return {body.norm(), rad_to_deg(std::atan2(body.y(), body.x()))};
}

Eigen::Vector2d polar_to_world(double range_m, double azimuth_deg, const RigPose& radar_pose) {
  const double az = deg_to_rad(azimuth_deg);
  return radar_pose.to_world_2d(Eigen::Vector2d(range_m * std::cos(az), range_m * std::sin(az)));
}

WorldRaster polar_to_cartesian(const RaImage& ra, const WorldGridSpec& grid, const RigPose& radar_pose,
                               double fill_value) {
  grid.validate();
  if (ra.db.rows() != static_cast<int>(ra.range_axis.size()) ||
      ra.db.cols() != static_cast<int>(ra.azimuth_axis.size())) {
    throw ConfigError("RA image dimensions do not match its axes");
  }
  WorldRaster out;
  out.grid = grid;
  out.fill_value = fill_value;
  out.values = Grid2<double>(grid.ny, grid.nx, fill_value);
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const PolarPoint p = world_to_polar(grid.cell_center(ix, iy), radar_pose);
      const auto rb = bracket(ra.range_axis, p.range_m);
      const auto ab = bracket(ra.azimuth_axis, p.azimuth_deg);
      if (!rb || !ab) continue;
      const double v00 = ra.db(rb->lo, ab->lo);
      const double v01 = ra.db(rb->lo, ab->lo + 1);
      const double v10 = ra.db(rb->lo + 1, ab->lo);
      const double v11 = ra.db(rb->lo + 1, ab->lo + 1);
      const double top = v00 + ab->t * (v01 - v00);
      const double bottom = v10 + ab->t * (v11 - v10);
      out.values(iy, ix) = top + rb->t * (bottom - top);
    }
  }
  return out;
}

}  // namespace rlforge::radar
