// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rlforge/core/world_grid.hpp"
#include "rlforge/geometry/camera_model.hpp"
#include "rlforge/geometry/homography.hpp"
#include "rlforge/radar/cubes.hpp"
#include "rlforge/segmentation/panoptic.hpp"

namespace rlforge::fusion {

// Occupied cells of one instance on the world grid.
struct WorldMask {
  std::uint16_t instance_id = 0;
  segmentation::ClassId cls = segmentation::ClassId::kPedestrians;
  double score = 1.0;
  std::vector<WorldGridSpec::Cell> cells;  // row-major (iy, then ix)
};

struct Skip {
  std::uint16_t instance_id;
  std::string reason;
};

struct ProjectionResult {
  std::vector<WorldMask> masks;
  std::vector<Skip> dropped;  // instances with no cell on the grid
};

// Warps the frame's instance map onto the grid (nearest neighbour, see
// warp_labels) and collects the cells of every listed instance.
// `pixel_to_world` maps undistorted pixels; pass the camera as `observed`
// when the label maps are in distorted image coordinates.
ProjectionResult project_instances(const std::vector<segmentation::InstanceMask>& masks,
                                   const segmentation::PanopticFrame& frame, const geometry::Homography& pixel_to_world,
                                   const WorldGridSpec& grid, const geometry::CameraModel* observed = nullptr);

struct WorldBox {
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
  segmentation::ClassId cls = segmentation::ClassId::kPedestrians;
  std::uint16_t instance_id = 0;
  double score = 1.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
};

// Tight bounds of the occupied cells grown by `margin` and clipped to the
// grid. Throws ConfigError for a negative margin.
WorldBox extract_roi(const WorldMask& mask, const WorldGridSpec& grid, double margin);
std::vector<WorldBox> extract_rois(const std::vector<WorldMask>& masks, const WorldGridSpec& grid, double margin);

// Axes of the range-azimuth plane of a processed cube.
struct RaAxes {
  std::vector<double> range;    // m, ascending
  std::vector<double> azimuth;  // deg, ascending

  static RaAxes from_config(const radar::RadarConfig& config);
  static RaAxes from_cube(const radar::RdaCube& cube);
};

// Inclusive bin intervals and their axis values.
struct RaRoi {
  double range_lo_m = 0.0, range_hi_m = 0.0;
  int range_bin_lo = 0, range_bin_hi = 0;
  double azimuth_lo_deg = 0.0, azimuth_hi_deg = 0.0;
  int azimuth_bin_lo = 0, azimuth_bin_hi = 0;
};

// Range interval: farthest corner and nearest point of the box (which is a
// corner unless the box straddles the radar's x or y axis). Azimuth
// interval: extreme corner azimuths. Intervals are clipped to the axes and
// snapped outward to bins. nullopt when the box misses the FoV or contains
// the radar itself; `reason` then says why.
std::optional<RaRoi> world_box_to_ra(const WorldBox& box, const RigPose& radar_pose, const RaAxes& axes,
                                     std::string* reason = nullptr);

// Sub-cube over the RoI bins with the full Doppler axis. Throws DataError
// when the RoI leaves the cube.
radar::RdaCube crop_rda(const radar::RdaCube& cube, const RaRoi& roi);

}  // namespace rlforge::fusion
