// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/metrics/matching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "rlforge/core/error.hpp"

namespace rlforge::metrics {

std::vector<double> MatchSpec::default_thresholds() {
  std::vector<double> t;
  for (int i = 0; i < 10; ++i) t.push_back((50 + 5 * i) / 100.0);
  return t;
}

void MatchSpec::validate() const {
  if (thresholds.empty()) throw ConfigError("match spec needs at least one IoU threshold");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > 0.0 && thresholds[i] <= 1.0)) {
      throw ConfigError(fmt::format("IoU threshold {} outside (0, 1]", thresholds[i]));
    }
    if (i > 0 && !(thresholds[i] > thresholds[i - 1])) throw ConfigError("IoU thresholds must increase strictly");
  }
}

namespace {

std::vector<int> score_order(const std::vector<double>& scores) {
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return scores[a] > scores[b]; });
  return order;
}

}  // namespace

MatchReport match_detections(const Eigen::MatrixXd& ious, const std::vector<double>& scores, double k) {
  if (static_cast<Eigen::Index>(scores.size()) != ious.rows()) {
    throw DataError(fmt::format("{} scores for {} detections", scores.size(), ious.rows()));
  }
  for (double s : scores) {
    if (!std::isfinite(s)) throw DataError("detection score is not finite");
  }
  const int n_truth = static_cast<int>(ious.cols());
  MatchReport report;
  report.is_tp.assign(scores.size(), false);
  std::vector<bool> taken(static_cast<std::size_t>(n_truth), false);
  for (const int d : score_order(scores)) {
    int best = -1;
    double best_iou = -1.0;
    for (int g = 0; g < n_truth; ++g) {
      if (!taken[g] && ious(d, g) > best_iou) {
        best_iou = ious(d, g);
        best = g;
      }
    }
    if (best >= 0 && best_iou > k) {
      taken[best] = true;
      report.is_tp[d] = true;
      report.pairs.push_back({d, best, best_iou});
      ++report.tp;
    } else {
      ++report.fp;
    }
  }
  report.fn = n_truth - report.tp;
  return report;
}

PrecisionRecall precision_recall(int tp, int fp, int fn) {
  PrecisionRecall pr;
  if (tp + fp > 0) pr.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp + fn > 0) pr.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  return pr;
}

PrecisionRecall precision_recall(const MatchReport& report) {
  return precision_recall(report.tp, report.fp, report.fn);
}

double interpolated_ap(const std::vector<bool>& ranked_tp, int truth_count, std::vector<PrPoint>* curve) {
  if (truth_count <= 0) throw DataError("AP is undefined without ground truth");
  std::vector<PrPoint> points;
  points.reserve(ranked_tp.size());
  int tp = 0;
  for (std::size_t i = 0; i < ranked_tp.size(); ++i) {
    if (ranked_tp[i]) ++tp;
    points.push_back({static_cast<double>(tp) / truth_count, static_cast<double>(tp) / static_cast<double>(i + 1)});
  }
  // Precision envelope from the right, then sample at recall i/100.
  std::vector<double> envelope(points.size());
  double running = 0.0;
  for (std::size_t i = points.size(); i-- > 0;) {
    running = std::max(running, points[i].precision);
    envelope[i] = running;
  }
  double sum = 0.0;
  std::size_t j = 0;
  for (int i = 0; i <= 100; ++i) {
    const double r = i / 100.0;
    while (j < points.size() && points[j].recall < r) ++j;
    if (j < points.size()) sum += envelope[j];
  }
  if (curve != nullptr) *curve = std::move(points);
  return sum / 101.0;
}

double class_ap_at(const std::vector<ImageClassData>& images, double k, std::vector<PrPoint>* curve) {
  struct Ranked {
    double score;
    bool tp;
  };
  std::vector<Ranked> pooled;
  int truths = 0;
  for (const ImageClassData& img : images) {
    const MatchReport r = match_detections(img.ious, img.scores, k);
    truths += static_cast<int>(img.ious.cols());
    for (std::size_t d = 0; d < img.scores.size(); ++d) pooled.push_back({img.scores[d], r.is_tp[d]});
  }
  std::stable_sort(pooled.begin(), pooled.end(), [](const Ranked& a, const Ranked& b) { return a.score > b.score; });
  std::vector<bool> ranked;
  ranked.reserve(pooled.size());
  for (const Ranked& p : pooled) ranked.push_back(p.tp);
  return interpolated_ap(ranked, truths, curve);
}

ApResult average_precision(const std::map<segmentation::ClassId, std::vector<ImageClassData>>& data,
                           const MatchSpec& spec) {
  spec.validate();
  ApResult result;
  double sum = 0.0;
  for (const auto& [cls, images] : data) {
    int truths = 0, dets = 0;
    for (const ImageClassData& img : images) {
      truths += static_cast<int>(img.ious.cols());
      dets += static_cast<int>(img.scores.size());
    }
    if (truths == 0) {
      result.notes.push_back(
          fmt::format("{}: no ground truth, excluded from mAP ({} detections)", segmentation::class_name(cls), dets));
      continue;
    }
    ClassAp ap;
    ap.truth_count = truths;
    ap.detection_count = dets;
    for (double k : spec.thresholds) {
      std::vector<PrPoint> curve;
      ap.ap_per_threshold.push_back(class_ap_at(images, k, &curve));
      ap.pr_curves.push_back(std::move(curve));
    }
    ap.ap = std::accumulate(ap.ap_per_threshold.begin(), ap.ap_per_threshold.end(), 0.0) /
            static_cast<double>(ap.ap_per_threshold.size());
    sum += ap.ap;
    result.per_class.emplace(cls, std::move(ap));
  }
  if (!result.per_class.empty()) result.map = sum / static_cast<double>(result.per_class.size());
  return result;
}

}  // namespace rlforge::metrics
