// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rlforge/core/json_io.hpp"
#include "rlforge/fusion/dataset.hpp"
#include "rlforge/segmentation/panoptic.hpp"
#include "rlforge/sim/sequence.hpp"

namespace rlforge::pipeline {

// Greedy per-class matching of segmenter instances against ground truth at
// IoU > k.
struct SegmentationMatch {
  std::map<std::uint16_t, std::uint16_t> seg_to_gt;
  std::set<std::uint16_t> detected_gt;
  int false_detections = 0;
};
SegmentationMatch match_segmentation(const std::vector<segmentation::InstanceMask>& gt,
                                     const std::vector<segmentation::InstanceMask>& seg, double k = 0.5);

// Mapping success: every illuminated scatterer's true range and azimuth bin
// lies strictly inside the RoI's bin interval (the crop keeps the whole
// Doppler axis, so Doppler is always contained). Objects without an
// illuminated scatterer are never contained.
bool roi_contains(const fusion::RaRoi& roi, const sim::ObjectTruth& object);

// An appearance is an active object of a radar frame that is inside the
// radar FoV and the camera view.
bool is_appearance(const sim::ObjectTruth& object);

struct ClassTally {
  int appearances = 0;
  int detected = 0;
  int mapped = 0;
};

struct CampaignTally {
  int radar_frames = 0;
  int paired_frames = 0;
  std::map<segmentation::ClassId, ClassTally> per_class;
  int appearances = 0;
  int detected = 0;
  int mapped = 0;
  int false_detections = 0;
  int records = 0;
  int records_sound = 0;
  int records_unmatched = 0;  // record of a segmenter false positive
  std::vector<std::string> unsound_records;

  // `match` is null for an unpaired radar frame; `records` are the frame's
  // annotation records.
  void add_frame(const sim::RadarFrameTruth& truth, const SegmentationMatch* match,
                 const std::vector<const fusion::AnnotationRecord*>& records);

  Json to_json() const;
};

}  // namespace rlforge::pipeline
