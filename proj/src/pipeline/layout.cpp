// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/pipeline/layout.hpp"

#include <fstream>

#include <fmt/format.h>

#include "rlforge/core/error.hpp"

namespace rlforge::pipeline {

std::string Layout::raw_rel(int i) { return fmt::format("radar/frame_{:06d}.rdc", i); }
std::string Layout::gt_stem_rel(int j) { return fmt::format("camera/gt/frame_{:06d}", j); }
std::string Layout::seg_stem_rel(int j) { return fmt::format("camera/seg/frame_{:06d}", j); }
std::string Layout::ra_rel(int i) { return fmt::format("process/frame_{:06d}.rai", i); }
std::string Layout::targets_rel(int i) { return fmt::format("process/frame_{:06d}_targets.csv", i); }

void write_jsonl(const std::filesystem::path& path, const std::vector<Json>& lines) {
  std::string text;
  for (const Json& j : lines) text += j.dump() + "\n";
  write_text_file(path, text);
}

std::vector<Json> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingInputError("cannot read " + path.string());
  std::vector<Json> out;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      out.push_back(Json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(fmt::format("{}:{}: {}", path.string(), n, e.what()));
    }
  }
  return out;
}

Json radar_entry_json(const RadarIndexEntry& e) {
  return {{"index", e.index},
          {"timestamp", e.timestamp},
          {"pose", pose_to_json(e.pose)},
          {"raw", e.raw.empty() ? Json(nullptr) : Json(e.raw)}};
}

Json camera_entry_json(const CameraIndexEntry& e) {
  return {{"index", e.index}, {"timestamp", e.timestamp}, {"gt", e.gt_stem}, {"seg", e.seg_stem}};
}

std::vector<RadarIndexEntry> read_radar_index(const Layout& layout) {
  std::vector<RadarIndexEntry> out;
  for (const Json& j : read_jsonl(layout.radar_index())) {
    try {
      RadarIndexEntry e;
      e.index = j.at("index").get<int>();
      e.timestamp = j.at("timestamp").get<double>();
      e.pose = pose_from_json(j.at("pose"));
      e.pose.timestamp = e.timestamp;
      if (!j.at("raw").is_null()) e.raw = j.at("raw").get<std::string>();
      out.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw DataError(fmt::format("{}: {}", layout.radar_index().string(), ex.what()));
    }
  }
  return out;
}

std::vector<CameraIndexEntry> read_camera_index(const Layout& layout) {
  std::vector<CameraIndexEntry> out;
  for (const Json& j : read_jsonl(layout.camera_index())) {
    try {
      out.push_back({j.at("index").get<int>(), j.at("timestamp").get<double>(), j.at("gt").get<std::string>(),
                     j.at("seg").get<std::string>()});
    } catch (const nlohmann::json::exception& ex) {
      throw DataError(fmt::format("{}: {}", layout.camera_index().string(), ex.what()));
    }
  }
  return out;
}

}  // namespace rlforge::pipeline
