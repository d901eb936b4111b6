// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rlforge/core/pose.hpp"
#include "rlforge/core/world_grid.hpp"
#include "rlforge/radar/cubes.hpp"

namespace rlforge::radar {

// Planar radar-frame polar coordinates of a world point. Azimuth is positive
// toward body +y (left of boresight).
struct PolarPoint {
  double range_m;
  double azimuth_deg;
};
PolarPoint world_to_polar(const Eigen::Vector2d& world, const RigPose& radar_pose);
Eigen::Vector2d polar_to_world(double range_m, double azimuth_deg, const RigPose& radar_pose);

// Resamples an RA image onto a global grid. Each cell center is taken into
// the radar frame and bilinearly interpolated in dB; cells whose position is
// not bracketed by the range and azimuth axes get fill_value.
WorldRaster polar_to_cartesian(const RaImage& ra, const WorldGridSpec& grid, const RigPose& radar_pose,
                               double fill_value = kDbFloor);

}  // namespace rlforge::radar
