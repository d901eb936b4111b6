// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/metrics/report.hpp"

#include <cmath>

#include <fmt/format.h>

namespace rlforge::metrics {

namespace {

std::string interval_label(const MatchSpec& spec) {
  const auto pct = [](double v) { return static_cast<int>(std::lround(v * 100.0)); };
  if (spec.thresholds.size() == 1) return fmt::format("{}", pct(spec.thresholds.front()));
  const int step = pct(spec.thresholds[1]) - pct(spec.thresholds[0]);
  return fmt::format("{}:{}:{}", pct(spec.thresholds.front()), step, pct(spec.thresholds.back()));
}

std::optional<std::size_t> threshold_index(const MatchSpec& spec, double k) {
  for (std::size_t i = 0; i < spec.thresholds.size(); ++i) {
    if (std::abs(spec.thresholds[i] - k) < 1e-9) return i;
  }
  return std::nullopt;
}

std::optional<double> to_percent(std::optional<double> v) {
  if (!v) return std::nullopt;
  return *v * 100.0;
}

}  // namespace

std::optional<double> map_at(const ApResult& result, const MatchSpec& spec, double k) {
  const auto idx = threshold_index(spec, k);
  if (!idx || result.per_class.empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto& [cls, ap] : result.per_class) sum += ap.ap_per_threshold.at(*idx);
  return sum / static_cast<double>(result.per_class.size());
}

std::vector<ReportRow> table_rows(const ApResult& result, const MatchSpec& spec) {
  const std::string all = interval_label(spec);
  std::vector<ReportRow> rows;
  rows.push_back({"mAP", all, to_percent(result.map)});
  for (double k : {0.50, 0.75}) {
    if (threshold_index(spec, k)) {
      rows.push_back({"mAP", fmt::format("{}", std::lround(k * 100)), to_percent(map_at(result, spec, k))});
    }
  }
  for (const auto& [cls, ap] : result.per_class) {
    rows.push_back({fmt::format("AP {}", segmentation::class_name(cls)), all, ap.ap * 100.0});
  }
  return rows;
}

std::string format_table(const std::vector<ReportRow>& rows) {
  std::string out = fmt::format("{:<24} {:<12} {:>8}\n", "metric", "IoU (%)", "value %");
  for (const ReportRow& r : rows) {
    const std::string value = r.percent ? fmt::format("{:.2f}", *r.percent) : std::string("undef");
    out += fmt::format("{:<24} {:<12} {:>8}\n", r.metric, r.interval, value);
  }
  return out;
}

Json report_json(const ApResult& result, const MatchSpec& spec) {
  Json j;
  j["thresholds"] = spec.thresholds;
  Json rows = Json::array();
  for (const ReportRow& r : table_rows(result, spec)) {
    rows.push_back({{"metric", r.metric},
                    {"iou_interval", r.interval},
                    {"value_percent", r.percent ? Json(*r.percent) : Json(nullptr)}});
  }
  j["table"] = std::move(rows);
  Json classes = Json::object();
  for (const auto& [cls, ap] : result.per_class) {
    classes[std::string(segmentation::class_name(cls))] = {{"ap", ap.ap},
                                                           {"ap_per_threshold", ap.ap_per_threshold},
                                                           {"truths", ap.truth_count},
                                                           {"detections", ap.detection_count}};
  }
  j["classes"] = std::move(classes);
  j["map"] = result.map ? Json(*result.map) : Json(nullptr);
  j["notes"] = result.notes;
  return j;
}

}  // namespace rlforge::metrics
