// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/pipeline/campaign.hpp"

#include "rlforge/metrics/matching.hpp"
#include "rlforge/metrics/regions.hpp"

namespace rlforge::pipeline {

using segmentation::ClassId;
using segmentation::InstanceMask;

SegmentationMatch match_segmentation(const std::vector<InstanceMask>& gt, const std::vector<InstanceMask>& seg,
                                     double k) {
  SegmentationMatch out;
  for (ClassId cls : segmentation::kCountableClasses) {
    std::vector<InstanceMask> g, s;
    for (const auto& m : gt) {
      if (m.cls == cls) g.push_back(m);
    }
    for (const auto& m : seg) {
      if (m.cls == cls) s.push_back(m);
    }
    if (s.empty()) continue;
    std::vector<double> scores;
    for (const auto& m : s) scores.push_back(m.score);
    const metrics::MatchReport r = metrics::match_detections(metrics::iou_matrix(g, s), scores, k);
    for (const auto& p : r.pairs) {
      out.seg_to_gt[s[p.detection].id] = g[p.truth].id;
      out.detected_gt.insert(g[p.truth].id);
    }
    out.false_detections += r.fp;
  }
  return out;
}

bool roi_contains(const fusion::RaRoi& roi, const sim::ObjectTruth& object) {
  bool any = false;
  for (const auto& s : object.scatterers) {
    if (!s.illuminated) continue;
    any = true;
    if (!(s.bins.range_bin > roi.range_bin_lo && s.bins.range_bin < roi.range_bin_hi)) return false;
    if (!(s.bins.azimuth_bin > roi.azimuth_bin_lo && s.bins.azimuth_bin < roi.azimuth_bin_hi)) return false;
  }
  return any;
}

bool is_appearance(const sim::ObjectTruth& object) { return object.in_radar_fov && object.in_camera_view; }

void CampaignTally::add_frame(const sim::RadarFrameTruth& truth, const SegmentationMatch* match,
                              const std::vector<const fusion::AnnotationRecord*>& frame_records) {
  ++radar_frames;
  if (match != nullptr) {
    ++paired_frames;
    false_detections += match->false_detections;
  }
  std::map<std::uint16_t, const sim::ObjectTruth*> by_id;
  for (const auto& o : truth.objects) by_id[o.instance_id] = &o;

  // Records by the ground-truth instance they were matched to.
  std::map<std::uint16_t, const fusion::AnnotationRecord*> record_for_gt;
  for (const fusion::AnnotationRecord* r : frame_records) {
    ++records;
    std::uint16_t gt_id = 0;
    if (match != nullptr) {
      const auto m = match->seg_to_gt.find(r->instance_id);
      if (m != match->seg_to_gt.end()) gt_id = m->second;
    }
    if (gt_id == 0 || by_id.count(gt_id) == 0) {
      ++records_unmatched;
      unsound_records.push_back(r->id);
      continue;
    }
    record_for_gt[gt_id] = r;
    if (roi_contains(r->roi, *by_id.at(gt_id))) {
      ++records_sound;
    } else {
      unsound_records.push_back(r->id);
    }
  }

  for (const auto& o : truth.objects) {
    if (!is_appearance(o)) continue;
    ClassTally& c = per_class[o.cls];
    ++appearances;
    ++c.appearances;
    if (match == nullptr || match->detected_gt.count(o.instance_id) == 0) continue;
    ++detected;
    ++c.detected;
    const auto r = record_for_gt.find(o.instance_id);
    if (r != record_for_gt.end() && roi_contains(r->second->roi, o)) {
      ++mapped;
      ++c.mapped;
    }
  }
}

namespace {

Json ratio(int num, int den) { return den > 0 ? Json(static_cast<double>(num) / den) : Json(nullptr); }

}  // namespace

Json CampaignTally::to_json() const {
  const metrics::PrecisionRecall pr = metrics::precision_recall(detected, false_detections, appearances - detected);
  Json classes = Json::object();
  for (const auto& [cls, c] : per_class) {
    classes[std::string(segmentation::class_name(cls))] = {
        {"appearances", c.appearances}, {"detected", c.detected}, {"mapped", c.mapped}};
  }
  return {{"radar_frames", radar_frames},
          {"paired_frames", paired_frames},
          {"appearances", appearances},
          {"detected", detected},
          {"mapped", mapped},
          {"false_detections", false_detections},
          {"detected_over_total", ratio(detected, appearances)},
          {"mapped_over_detected", ratio(mapped, detected)},
          {"mapped_over_total", ratio(mapped, appearances)},
          {"recall", pr.recall ? Json(*pr.recall) : Json(nullptr)},
          {"precision", pr.precision ? Json(*pr.precision) : Json(nullptr)},
          {"records", records},
          {"records_sound", records_sound},
          {"records_unmatched", records_unmatched},
          {"unsound_records", unsound_records},
          {"per_class", classes}};
}

}  // namespace rlforge::pipeline
