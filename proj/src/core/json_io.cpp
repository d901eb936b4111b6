// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/core/json_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "rlforge/core/error.hpp"

namespace rlforge {

Json pose_to_json(const RigPose& pose) {
  return Json{{"x", pose.position.x()},     {"y", pose.position.y()},         {"z", pose.position.z()},
              {"yaw_deg", pose.yaw_deg},    {"pitch_deg", pose.pitch_deg},    {"roll_deg", pose.roll_deg}};
}

RigPose pose_from_json(const Json& j) {
  RigPose p;
  p.position = {json_get(j, "x", 0.0), json_get(j, "y", 0.0), json_get(j, "z", 0.0)};
  p.yaw_deg = json_get(j, "yaw_deg", 0.0);
  p.pitch_deg = json_get(j, "pitch_deg", 0.0);
  p.roll_deg = json_get(j, "roll_deg", 0.0);
  return p;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingInputError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << text;
  out.close();
  if (!out) throw IoError("write failed: " + path.string());
}

void write_json_file(const std::filesystem::path& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

void throw_json_type_error(const char* key, const char* what) {
  throw ConfigError(fmt::format("key '{}': {}", key, what));
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const char* section) {
  if (!j.is_object()) throw ConfigError(fmt::format("section '{}' must be an object", section));
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || item.key() == k;
    if (!known) throw ConfigError(fmt::format("section '{}': unknown key '{}'", section, item.key()));
  }
}

}  // namespace rlforge
