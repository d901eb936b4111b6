// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/geometry/warp.hpp"

#include <cmath>
#include <limits>

namespace rlforge::geometry {

GroundToImage::GroundToImage(const Homography& pixel_to_world, const CameraModel* observed,
                             const Eigen::Vector2d& reference_pixel)
    : world_to_pixel_(pixel_to_world.inverse()), observed_(observed) {
  // The image interior is on the positive side of w; fix the sign from a
  // pixel known to be visible.
  if (const auto ground = pixel_to_world.apply(reference_pixel)) {
    const double w = world_to_pixel_.apply_homogeneous(*ground).z();
    sign_ = w < 0 ? -1.0 : 1.0;
  }
}

std::optional<Eigen::Vector2d> GroundToImage::operator()(const Eigen::Vector2d& world) const {
  const Eigen::Vector3d q = world_to_pixel_.apply_homogeneous(world);
  if (!(q.z() * sign_ > 0)) return std::nullopt;
  const Eigen::Vector2d px(q.x() / q.z(), q.y() / q.z());
  if (observed_ != nullptr) return observed_->distort_pixel(px);
  return px;
}

template <typename T>
std::optional<T> sample_nearest(const Grid2<T>& image, const Eigen::Vector2d& px) {
  if (!px.allFinite()) return std::nullopt;
  const double fu = std::floor(px.x() + 0.5);
  const double fv = std::floor(px.y() + 0.5);
  if (fu < 0 || fv < 0 || fu >= image.cols() || fv >= image.rows()) return std::nullopt;
  return image(static_cast<int>(fv), static_cast<int>(fu));
}

template std::optional<std::uint8_t> sample_nearest(const Grid2<std::uint8_t>&, const Eigen::Vector2d&);
template std::optional<std::uint16_t> sample_nearest(const Grid2<std::uint16_t>&, const Eigen::Vector2d&);

std::optional<double> sample_bilinear(const Grid2<double>& image, const Eigen::Vector2d& px) {
  if (!px.allFinite()) return std::nullopt;
  const double u = px.x(), v = px.y();
  if (u < 0 || v < 0 || u > image.cols() - 1 || v > image.rows() - 1) return std::nullopt;
  const int u0 = static_cast<int>(std::floor(u));
  const int v0 = static_cast<int>(std::floor(v));
  const double tu = u - u0, tv = v - v0;
  const int u1 = tu > 0 ? u0 + 1 : u0;
  const int v1 = tv > 0 ? v0 + 1 : v0;
  const double top = image(v0, u0) + tu * (image(v0, u1) - image(v0, u0));
  const double bottom = image(v1, u0) + tu * (image(v1, u1) - image(v1, u0));
  return top + tv * (bottom - top);
}

namespace {

template <typename T, typename Sample>
Grid2<T> warp_impl(int rows, int cols, const Homography& h, const WorldGridSpec& grid, T void_value,
                   const CameraModel* observed, Sample sample) {
  grid.validate();
  const Eigen::Vector2d reference(0.5 * (cols - 1), 0.5 * (rows - 1));
  const GroundToImage to_image(h, observed, reference);
  Grid2<T> out(grid.ny, grid.nx, void_value);
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const auto px = to_image(grid.cell_center(ix, iy));
      if (!px) continue;
      if (const auto v = sample(*px)) out(iy, ix) = *v;
    }
  }
  return out;
}

}  // namespace

Grid2<std::uint8_t> warp_labels(const Grid2<std::uint8_t>& image, const Homography& h, const WorldGridSpec& grid,
                                std::uint8_t void_value, const CameraModel* observed) {
  return warp_impl<std::uint8_t>(image.rows(), image.cols(), h, grid, void_value, observed,
                                 [&](const Eigen::Vector2d& px) { return sample_nearest(image, px); });
}

Grid2<std::uint16_t> warp_labels(const Grid2<std::uint16_t>& image, const Homography& h, const WorldGridSpec& grid,
                                 std::uint16_t void_value, const CameraModel* observed) {
  return warp_impl<std::uint16_t>(image.rows(), image.cols(), h, grid, void_value, observed,
                                  [&](const Eigen::Vector2d& px) { return sample_nearest(image, px); });
}

Grid2<double> warp_intensity(const Grid2<double>& image, const Homography& h, const WorldGridSpec& grid,
                             const CameraModel* observed) {
  return warp_impl<double>(image.rows(), image.cols(), h, grid, std::numeric_limits<double>::quiet_NaN(), observed,
                           [&](const Eigen::Vector2d& px) { return sample_bilinear(image, px); });
}

}  // namespace rlforge::geometry
