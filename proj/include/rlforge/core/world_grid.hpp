// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <optional>

#include <Eigen/Core>

#include "rlforge/core/error.hpp"

namespace rlforge {

// Axis-aligned raster on the global ground plane. Cell (ix, iy) spans
// [origin.x + ix*cell, origin.x + (ix+1)*cell) x [origin.y + iy*cell, ...).
// Rasters on this grid are stored row-major with iy as the row index.
struct WorldGridSpec {
  Eigen::Vector2d origin = Eigen::Vector2d::Zero();
  double cell_size = 1.0;
  int nx = 0;
  int ny = 0;

  void validate() const {
    if (!(cell_size > 0) || !std::isfinite(cell_size)) throw ConfigError("world grid: cell_size must be > 0");
    if (nx <= 0 || ny <= 0) throw ConfigError("world grid: degenerate grid with zero cells");
  }

  Eigen::Vector2d cell_center(int ix, int iy) const {
    return origin + Eigen::Vector2d((ix + 0.5) * cell_size, (iy + 0.5) * cell_size);
  }
  double x_min() const { return origin.x(); }
  double y_min() const { return origin.y(); }
  double x_max() const { return origin.x() + nx * cell_size; }
  double y_max() const { return origin.y() + ny * cell_size; }

  struct Cell {
    int ix;
    int iy;
  };
  std::optional<Cell> cell_of(const Eigen::Vector2d& p) const {
    const int ix = static_cast<int>(std::floor((p.x() - origin.x()) / cell_size));
    const int iy = static_cast<int>(std::floor((p.y() - origin.y()) / cell_size));
    if (ix < 0 || iy < 0 || ix >= nx || iy >= ny) return std::nullopt;
    return Cell{ix, iy};
  }
};

}  // namespace rlforge
