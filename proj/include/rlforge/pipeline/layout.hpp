// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rlforge/core/json_io.hpp"
#include "rlforge/core/pose.hpp"

namespace rlforge::pipeline {

// File layout shared by all stages; paths stored in index files are
// relative to the output root.
struct Layout {
  std::filesystem::path root;

  std::filesystem::path scene() const { return root / "scene.json"; }
  std::filesystem::path radar_index() const { return root / "radar" / "frames.jsonl"; }
  std::filesystem::path camera_index() const { return root / "camera" / "frames.jsonl"; }
  std::filesystem::path truth() const { return root / "truth" / "truth.jsonl"; }
  std::filesystem::path process_dir() const { return root / "process"; }
  std::filesystem::path dataset_dir() const { return root / "dataset"; }
  std::filesystem::path manifest() const { return dataset_dir() / "manifest.jsonl"; }
  std::filesystem::path skips() const { return dataset_dir() / "skips.jsonl"; }
  std::filesystem::path eval_dir() const { return root / "eval"; }
  std::filesystem::path report_dir() const { return root / "report"; }

  static std::string raw_rel(int i);
  static std::string gt_stem_rel(int j);
  static std::string seg_stem_rel(int j);
  static std::string ra_rel(int i);
  static std::string targets_rel(int i);
};

struct RadarIndexEntry {
  int index = 0;
  double timestamp = 0.0;
  RigPose pose;     // recorded
  std::string raw;  // empty when raw data was not written
};

struct CameraIndexEntry {
  int index = 0;
  double timestamp = 0.0;
  std::string gt_stem;
  std::string seg_stem;
};

void write_jsonl(const std::filesystem::path& path, const std::vector<Json>& lines);
// Throws MissingInputError when absent, DataError on a malformed line.
std::vector<Json> read_jsonl(const std::filesystem::path& path);

std::vector<RadarIndexEntry> read_radar_index(const Layout& layout);
std::vector<CameraIndexEntry> read_camera_index(const Layout& layout);
Json radar_entry_json(const RadarIndexEntry& e);
Json camera_entry_json(const CameraIndexEntry& e);

}  // namespace rlforge::pipeline
