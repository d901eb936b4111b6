// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>

#include <json.hpp>

#include "rlforge/core/pose.hpp"

namespace rlforge {

using Json = nlohmann::json;

// {"x", "y", "z", "yaw_deg", "pitch_deg", "roll_deg"}; timestamp is stored
// separately by the owning record.
Json pose_to_json(const RigPose& pose);
RigPose pose_from_json(const Json& j);

// Throws MissingInputError if absent, DataError on malformed JSON.
Json read_json_file(const std::filesystem::path& path);
// Pretty-printed with a trailing newline. Throws IoError.
void write_json_file(const std::filesystem::path& path, const Json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

[[noreturn]] void throw_json_type_error(const char* key, const char* what);

// Throws ConfigError naming `section` if j is not an object or carries a key
// outside `allowed`.
void check_keys(const Json& j, std::initializer_list<const char*> allowed, const char* section);

// Typed field access with a message naming the key on failure (ConfigError).
template <typename T>
T json_get(const Json& j, const char* key, const T& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw_json_type_error(key, e.what());
  }
}

}  // namespace rlforge
