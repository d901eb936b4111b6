// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rlforge/core/json_io.hpp"
#include "rlforge/core/world_grid.hpp"
#include "rlforge/fusion/dataset.hpp"
#include "rlforge/geometry/homography.hpp"
#include "rlforge/metrics/matching.hpp"
#include "rlforge/radar/cfar.hpp"
#include "rlforge/segmentation/panoptic.hpp"
#include "rlforge/sim/scene.hpp"

namespace rlforge::pipeline {

struct SegmentationSection {
  segmentation::PerturbParams perturb;
  // Emulated detector confidences are drawn uniformly from this range.
  double score_min = 0.5;
  double score_max = 1.0;
};

struct FusionSection {
  double margin_m = 0.5;
  std::map<segmentation::ClassId, double> class_margin_m;
  double max_skew_s = 0.1;
  fusion::FormatSet formats{fusion::Format::kRd, fusion::Format::kRda, fusion::Format::kTargets,
                            fusion::Format::kFeatures};
  WorldGridSpec grid{Eigen::Vector2d(0.0, -40.0), 0.1, 800, 800};
  radar::CfarParams cfar;
  // Undistorted pixel -> world ground pairs. When given they replace the
  // pose-derived homography for every frame (hovering camera).
  std::vector<geometry::Correspondence> reference_points;

  double margin_for(segmentation::ClassId cls) const;
};

struct PipelineConfig {
  sim::Scene scene;
  bool write_raw = true;
  SegmentationSection segmentation;
  radar::CfarParams process_cfar;
  FusionSection fusion;
  metrics::MatchSpec match;
  std::filesystem::path output_dir = "out";
  int jobs = 1;

  // Throws ConfigError; every section is checked before any stage runs.
  void validate() const;
};

struct CliOverrides {
  std::optional<std::filesystem::path> out;
  std::optional<int> jobs;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> formats;
};

// The scene is given either in full ("scene") or as a preset
// ("scene_preset": {"name": "three_pedestrians" | "campaign", ...}).
// A relative output_dir is resolved against the config file's directory.
PipelineConfig config_from_json(const Json& j, const CliOverrides& overrides = {},
                                const std::filesystem::path& base_dir = {});
PipelineConfig load_config(const std::filesystem::path& path, const CliOverrides& overrides = {});

}  // namespace rlforge::pipeline
