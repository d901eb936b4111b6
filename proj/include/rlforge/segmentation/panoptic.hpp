// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "rlforge/core/grid.hpp"
#include "rlforge/core/pose.hpp"
#include "rlforge/segmentation/taxonomy.hpp"

namespace rlforge::segmentation {

struct PanopticFrame {
  Grid2<std::uint8_t> class_map;
  Grid2<std::uint16_t> instance_map;  // 0 = none; ignored when !has_instances
  bool has_instances = true;
  std::map<std::uint16_t, double> scores;  // missing entries score 1.0
  double timestamp = 0.0;
  RigPose camera_pose;

  PanopticFrame() = default;
  PanopticFrame(int rows, int cols)
      : class_map(rows, cols, static_cast<std::uint8_t>(ClassId::kEnvironment)), instance_map(rows, cols, 0) {}

  int rows() const { return class_map.rows(); }
  int cols() const { return class_map.cols(); }
  double score(std::uint16_t id) const;

  // Throws DataError naming the first offending pixel: unknown class value,
  // instance id on a stuff pixel, an instance spanning two classes, or
  // mismatched map dimensions.
  void validate() const;
};

// Row-major run-length encoding.
struct Run {
  int row;
  int col;
  int length;
};

struct PixelRect {
  int row_min, row_max, col_min, col_max;  // inclusive
};

struct InstanceMask {
  std::uint16_t id = 0;
  ClassId cls = ClassId::kEnvironment;
  std::vector<Run> runs;
  PixelRect bbox{0, -1, 0, -1};
  double score = 1.0;

  std::size_t area() const;
  bool contains(int row, int col) const;
  template <typename Fn>
  void for_each_pixel(Fn&& fn) const {
    for (const Run& r : runs) {
      for (int c = r.col; c < r.col + r.length; ++c) fn(r.row, c);
    }
  }
  // Appends pixel (row, col); pixels must arrive in row-major order.
  void push_pixel(int row, int col);
};

// One mask per instance id, ascending. Frames without an instance map get
// ids from 8-connected components of each countable class, numbered in
// row-major order of their first pixel.
std::vector<InstanceMask> extract_instances(const PanopticFrame& frame);

struct ClassCounts {
  std::array<std::uint64_t, kClassCount> per_class{};
  std::uint64_t total = 0;

  std::uint64_t operator[](ClassId c) const { return per_class[static_cast<int>(c)]; }
  ClassCounts& operator+=(const ClassCounts& other);
  bool operator==(const ClassCounts&) const = default;
};

ClassCounts count_instances(const std::vector<InstanceMask>& masks);
ClassCounts class_statistics(const std::vector<PanopticFrame>& frames);

struct PerturbParams {
  double drop_rate = 0.0;
  double shift_sigma_px = 0.0;
  int dilation_px = 0;  // > 0 dilates, < 0 erodes (3x3 structuring element)

  void validate() const;
};

// Emulates an imperfect segmenter. Instances are visited in id order; each
// is dropped with probability drop_rate, otherwise shifted by rounded
// Gaussian offsets and dilated/eroded, then painted back (later ids win).
// Pixels vacated by things become Environment; stuff pixels are never
// relabeled except where a surviving instance is painted over them. The
// random stream comes from derive_seed(seed, frame.timestamp).
PanopticFrame perturb_segmentation(const PanopticFrame& frame, const PerturbParams& params, std::uint64_t seed);

}  // namespace rlforge::segmentation
