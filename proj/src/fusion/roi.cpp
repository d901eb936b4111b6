// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/fusion/roi.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "rlforge/core/error.hpp"
#include "rlforge/geometry/warp.hpp"
#include "rlforge/radar/cartesian.hpp"

namespace rlforge::fusion {

ProjectionResult project_instances(const std::vector<segmentation::InstanceMask>& masks,
                                   const segmentation::PanopticFrame& frame, const geometry::Homography& pixel_to_world,
                                   const WorldGridSpec& grid, const geometry::CameraModel* observed) {
  grid.validate();
  ProjectionResult out;
  if (masks.empty()) return out;
  const Grid2<std::uint16_t> warped = geometry::warp_labels(frame.instance_map, pixel_to_world, grid, 0, observed);
  std::map<std::uint16_t, std::size_t> slot;
  out.masks.reserve(masks.size());
  for (const auto& m : masks) {
    slot.emplace(m.id, out.masks.size());
    out.masks.push_back({m.id, m.cls, m.score, {}});
  }
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const std::uint16_t id = warped(iy, ix);
      if (id == 0) continue;
      const auto it = slot.find(id);
      if (it != slot.end()) out.masks[it->second].cells.push_back({ix, iy});
    }
  }
  std::vector<WorldMask> kept;
  for (auto& m : out.masks) {
    if (m.cells.empty()) {
      out.dropped.push_back({m.instance_id, "outside_grid"});
    } else {
      kept.push_back(std::move(m));
    }
  }
  out.masks = std::move(kept);
  return out;
}

WorldBox extract_roi(const WorldMask& mask, const WorldGridSpec& grid, double margin) {
  if (!(margin >= 0) || !std::isfinite(margin)) throw ConfigError("RoI margin must be finite and >= 0");
  if (mask.cells.empty()) throw DataError(fmt::format("instance {} has no occupied cells", mask.instance_id));
  int ix0 = grid.nx, ix1 = -1, iy0 = grid.ny, iy1 = -1;
  for (const auto& c : mask.cells) {
    ix0 = std::min(ix0, c.ix);
    ix1 = std::max(ix1, c.ix);
    iy0 = std::min(iy0, c.iy);
    iy1 = std::max(iy1, c.iy);
  }
  WorldBox b;
  b.x_min = std::max(grid.x_min(), grid.origin.x() + ix0 * grid.cell_size - margin);
  b.x_max = std::min(grid.x_max(), grid.origin.x() + (ix1 + 1) * grid.cell_size + margin);
  b.y_min = std::max(grid.y_min(), grid.origin.y() + iy0 * grid.cell_size - margin);
  b.y_max = std::min(grid.y_max(), grid.origin.y() + (iy1 + 1) * grid.cell_size + margin);
  b.cls = mask.cls;
  b.instance_id = mask.instance_id;
  b.score = mask.score;
  return b;
}

std::vector<WorldBox> extract_rois(const std::vector<WorldMask>& masks, const WorldGridSpec& grid, double margin) {
  std::vector<WorldBox> out;
  out.reserve(masks.size());
  for (const auto& m : masks) out.push_back(extract_roi(m, grid, margin));
  return out;
}

RaAxes RaAxes::from_config(const radar::RadarConfig& config) {
  return {config.range_axis(), config.azimuth_axis()};
}

RaAxes RaAxes::from_cube(const radar::RdaCube& cube) { return {cube.range_axis, cube.azimuth_axis}; }

namespace {

// Largest index with axis[i] <= v, clamped to the axis.
int snap_down(const std::vector<double>& axis, double v) {
  const auto it = std::upper_bound(axis.begin(), axis.end(), v);
  return std::max(0, static_cast<int>(it - axis.begin()) - 1);
}

// Smallest index with axis[i] >= v, clamped to the axis.
int snap_up(const std::vector<double>& axis, double v) {
  const auto it = std::lower_bound(axis.begin(), axis.end(), v);
  return std::min(static_cast<int>(axis.size()) - 1, static_cast<int>(it - axis.begin()));
}

}  // namespace

std::optional<RaRoi> world_box_to_ra(const WorldBox& box, const RigPose& radar_pose, const RaAxes& axes,
                                     std::string* reason) {
  const auto fail = [&](const char* why) -> std::optional<RaRoi> {
    if (reason != nullptr) *reason = why;
    return std::nullopt;
  };
  if (axes.range.empty() || axes.azimuth.empty()) throw ConfigError("RA axes must not be empty");
  const Eigen::Vector2d radar = radar_pose.position.head<2>();
  if (radar.x() >= box.x_min && radar.x() <= box.x_max && radar.y() >= box.y_min && radar.y() <= box.y_max) {
    return fail("contains_radar");
  }
  const Eigen::Vector2d corners[4] = {
      {box.x_min, box.y_min}, {box.x_max, box.y_min}, {box.x_max, box.y_max}, {box.x_min, box.y_max}};
  double r_hi = 0.0;
  double az[4];
  for (int i = 0; i < 4; ++i) {
    const radar::PolarPoint p = radar::world_to_polar(corners[i], radar_pose);
    r_hi = std::max(r_hi, p.range_m);
    az[i] = p.azimuth_deg;
  }
  // Nearest point of the (axis-aligned) box to the radar.
  const Eigen::Vector2d nearest(std::clamp(radar.x(), box.x_min, box.x_max), std::clamp(radar.y(), box.y_min, box.y_max));
  const double r_lo = (nearest - radar).norm();
  double az_lo = *std::min_element(az, az + 4);
  double az_hi = *std::max_element(az, az + 4);
  // A box not containing the radar subtends less than 180 deg; a larger
  // spread means it wraps through the rear, which is never inside the FoV.
  if (az_hi - az_lo > 180.0) return fail("outside_fov");
  if (az_hi < axes.azimuth.front() || az_lo > axes.azimuth.back()) return fail("outside_fov");
  if (r_lo > axes.range.back()) return fail("outside_range");
  az_lo = std::max(az_lo, axes.azimuth.front());
  az_hi = std::min(az_hi, axes.azimuth.back());
  RaRoi roi;
  roi.range_bin_lo = snap_down(axes.range, r_lo);
  roi.range_bin_hi = snap_up(axes.range, std::min(r_hi, axes.range.back()));
  roi.azimuth_bin_lo = snap_down(axes.azimuth, az_lo);
  roi.azimuth_bin_hi = snap_up(axes.azimuth, az_hi);
  roi.range_lo_m = axes.range[roi.range_bin_lo];
  roi.range_hi_m = axes.range[roi.range_bin_hi];
  roi.azimuth_lo_deg = axes.azimuth[roi.azimuth_bin_lo];
  roi.azimuth_hi_deg = axes.azimuth[roi.azimuth_bin_hi];
  return roi;
}

radar::RdaCube crop_rda(const radar::RdaCube& cube, const RaRoi& roi) {
  if (roi.range_bin_lo < 0 || roi.range_bin_hi >= cube.range_bins || roi.range_bin_lo > roi.range_bin_hi ||
      roi.azimuth_bin_lo < 0 || roi.azimuth_bin_hi >= cube.azimuth_bins || roi.azimuth_bin_lo > roi.azimuth_bin_hi) {
    throw DataError(fmt::format("RoI range [{}, {}] azimuth [{}, {}] outside cube {}x{}x{}", roi.range_bin_lo,
                                roi.range_bin_hi, roi.azimuth_bin_lo, roi.azimuth_bin_hi, cube.range_bins,
                                cube.doppler_bins, cube.azimuth_bins));
  }
  radar::RdaCube out;
  out.config = cube.config;
  out.meta = cube.meta;
  const int nr = roi.range_bin_hi - roi.range_bin_lo + 1;
  const int na = roi.azimuth_bin_hi - roi.azimuth_bin_lo + 1;
  out.range_bins = nr;
  out.doppler_bins = cube.doppler_bins;
  out.azimuth_bins = na;
  out.range_axis.assign(cube.range_axis.begin() + roi.range_bin_lo, cube.range_axis.begin() + roi.range_bin_hi + 1);
  out.velocity_axis = cube.velocity_axis;
  out.azimuth_axis.assign(cube.azimuth_axis.begin() + roi.azimuth_bin_lo,
                          cube.azimuth_axis.begin() + roi.azimuth_bin_hi + 1);
  out.data.resize(static_cast<std::size_t>(nr) * out.doppler_bins * na);
  for (int r = 0; r < nr; ++r) {
    for (int d = 0; d < out.doppler_bins; ++d) {
      const radar::Complex* src = &cube.at(roi.range_bin_lo + r, d, roi.azimuth_bin_lo);
      std::copy(src, src + na, &out.at(r, d, 0));
    }
  }
  return out;
}

}  // namespace rlforge::fusion
