// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include <Eigen/Core>

#include "rlforge/segmentation/panoptic.hpp"

namespace rlforge::metrics {

// Axis-aligned rectangle with area (x_max - x_min) * (y_max - y_min).
struct Box {
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;

  double area() const;
  bool empty() const { return !(x_max > x_min && y_max > y_min); }
};

// |T n P| / |T u P|. Pixel counting for masks, area for boxes.
// Throws DataError when either region is empty.
double iou(const segmentation::InstanceMask& truth, const segmentation::InstanceMask& prediction);
double iou(const Box& truth, const Box& prediction);

std::size_t intersection_area(const segmentation::InstanceMask& a, const segmentation::InstanceMask& b);

// Rows are detections, columns ground truths.
Eigen::MatrixXd iou_matrix(const std::vector<segmentation::InstanceMask>& truths,
                           const std::vector<segmentation::InstanceMask>& detections);
Eigen::MatrixXd iou_matrix(const std::vector<Box>& truths, const std::vector<Box>& detections);

}  // namespace rlforge::metrics
