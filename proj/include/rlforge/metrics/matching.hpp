// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rlforge/segmentation/taxonomy.hpp"

namespace rlforge::metrics {

// IoU thresholds to average over; default 0.50:0.05:0.95.
struct MatchSpec {
  std::vector<double> thresholds = default_thresholds();

  static std::vector<double> default_thresholds();
  // Throws ConfigError unless strictly increasing and within (0, 1].
  void validate() const;
};

struct MatchedPair {
  int detection;
  int truth;
  double iou;
};

struct MatchReport {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  std::vector<MatchedPair> pairs;
  // Per detection, in input order.
  std::vector<bool> is_tp;
};

// Detections are visited by descending score (ties: input order). Each takes
// the unmatched ground truth with the highest IoU (ties: lower index) and is
// a TP if that IoU is strictly greater than k, otherwise an FP.
// `ious` has one row per detection and one column per ground truth.
MatchReport match_detections(const Eigen::MatrixXd& ious, const std::vector<double>& scores, double k);

// Ratios that are 0/0 stay empty.
struct PrecisionRecall {
  std::optional<double> precision;
  std::optional<double> recall;
};
PrecisionRecall precision_recall(int tp, int fp, int fn);
PrecisionRecall precision_recall(const MatchReport& report);

// Detections and ground truths of one class in one image.
struct ImageClassData {
  Eigen::MatrixXd ious;  // detections x truths
  std::vector<double> scores;
};

struct PrPoint {
  double recall;
  double precision;
};

struct ClassAp {
  std::vector<double> ap_per_threshold;  // AP_c(k)
  double ap = 0.0;                       // mean over thresholds
  int truth_count = 0;
  int detection_count = 0;
  std::vector<std::vector<PrPoint>> pr_curves;  // one per threshold
};

struct ApResult {
  std::map<segmentation::ClassId, ClassAp> per_class;  // classes with >= 1 truth
  std::optional<double> map;                           // mean AP over per_class
  std::vector<std::string> notes;                      // excluded classes
};

// 101-point interpolated precision of a ranked TP/FP sequence.
double interpolated_ap(const std::vector<bool>& ranked_tp, int truth_count, std::vector<PrPoint>* curve = nullptr);

// Per threshold: match every image independently, pool the detections of
// the class by score and take the 101-point interpolated AP. Classes without
// ground truth are excluded from the mean and noted.
ApResult average_precision(const std::map<segmentation::ClassId, std::vector<ImageClassData>>& data,
                           const MatchSpec& spec = {});

// AP at one threshold for one class.
double class_ap_at(const std::vector<ImageClassData>& images, double k, std::vector<PrPoint>* curve = nullptr);

}  // namespace rlforge::metrics
