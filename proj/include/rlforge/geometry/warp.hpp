// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "rlforge/core/grid.hpp"
#include "rlforge/core/world_grid.hpp"
#include "rlforge/geometry/camera_model.hpp"
#include "rlforge/geometry/homography.hpp"

namespace rlforge::geometry {

// Inverse mapping from the ground plane into the image. `pixel_to_world`
// maps undistorted pixels to the ground; when `observed` is given the result
// is additionally distorted into that camera's raw image. Points on the far
// side of the homography's line at infinity are rejected.
class GroundToImage {
 public:
  GroundToImage(const Homography& pixel_to_world, const CameraModel* observed, const Eigen::Vector2d& reference_pixel);

  std::optional<Eigen::Vector2d> operator()(const Eigen::Vector2d& world) const;

 private:
  Homography world_to_pixel_;
  const CameraModel* observed_;
  double sign_ = 1.0;
};

// Nearest-neighbour resampling for label rasters (values never blend).
// Output rows are grid iy, columns ix; cells mapping outside the image get
// void_value.
Grid2<std::uint8_t> warp_labels(const Grid2<std::uint8_t>& image, const Homography& pixel_to_world,
                                const WorldGridSpec& grid, std::uint8_t void_value,
                                const CameraModel* observed = nullptr);
Grid2<std::uint16_t> warp_labels(const Grid2<std::uint16_t>& image, const Homography& pixel_to_world,
                                 const WorldGridSpec& grid, std::uint16_t void_value,
                                 const CameraModel* observed = nullptr);

// Bilinear resampling for intensity rasters; void cells are NaN.
Grid2<double> warp_intensity(const Grid2<double>& image, const Homography& pixel_to_world, const WorldGridSpec& grid,
                             const CameraModel* observed = nullptr);

// Sampling primitives shared with the fusion stage.
template <typename T>
std::optional<T> sample_nearest(const Grid2<T>& image, const Eigen::Vector2d& px);
std::optional<double> sample_bilinear(const Grid2<double>& image, const Eigen::Vector2d& px);

}  // namespace rlforge::geometry
