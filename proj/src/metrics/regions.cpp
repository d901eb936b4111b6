// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/metrics/regions.hpp"

#include <algorithm>

#include "rlforge/core/error.hpp"

namespace rlforge::metrics {

using segmentation::InstanceMask;
using segmentation::Run;

double Box::area() const { return empty() ? 0.0 : (x_max - x_min) * (y_max - y_min); }

std::size_t intersection_area(const InstanceMask& a, const InstanceMask& b) {
  // Runs are sorted row-major and disjoint within a mask.
  std::size_t total = 0;
  auto ia = a.runs.begin(), ib = b.runs.begin();
  while (ia != a.runs.end() && ib != b.runs.end()) {
    if (ia->row != ib->row) {
      (ia->row < ib->row ? ia : ib)++;
      continue;
    }
    const int lo = std::max(ia->col, ib->col);
    const int hi = std::min(ia->col + ia->length, ib->col + ib->length);
    if (hi > lo) total += static_cast<std::size_t>(hi - lo);
    if (ia->col + ia->length < ib->col + ib->length) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return total;
}

double iou(const InstanceMask& truth, const InstanceMask& prediction) {
  const std::size_t at = truth.area(), ap = prediction.area();
  if (at == 0 || ap == 0) throw DataError("IoU of an empty mask is undefined");
  const std::size_t inter = intersection_area(truth, prediction);
  return static_cast<double>(inter) / static_cast<double>(at + ap - inter);
}

double iou(const Box& truth, const Box& prediction) {
  if (truth.empty() || prediction.empty()) throw DataError("IoU of an empty box is undefined");
  const double w = std::min(truth.x_max, prediction.x_max) - std::max(truth.x_min, prediction.x_min);
  const double h = std::min(truth.y_max, prediction.y_max) - std::max(truth.y_min, prediction.y_min);
  const double inter = (w > 0 && h > 0) ? w * h : 0.0;
  return inter / (truth.area() + prediction.area() - inter);
}

template <typename Region>
Eigen::MatrixXd iou_matrix_impl(const std::vector<Region>& truths, const std::vector<Region>& detections) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(detections.size()), static_cast<Eigen::Index>(truths.size()));
  for (std::size_t d = 0; d < detections.size(); ++d) {
    for (std::size_t g = 0; g < truths.size(); ++g) m(d, g) = iou(truths[g], detections[d]);
  }
  return m;
}

Eigen::MatrixXd iou_matrix(const std::vector<InstanceMask>& truths, const std::vector<InstanceMask>& detections) {
  return iou_matrix_impl(truths, detections);
}

Eigen::MatrixXd iou_matrix(const std::vector<Box>& truths, const std::vector<Box>& detections) {
  return iou_matrix_impl(truths, detections);
}

}  // namespace rlforge::metrics
