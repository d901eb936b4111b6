// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/segmentation/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include <fmt/format.h>

#include "rlforge/core/error.hpp"

namespace rlforge::segmentation {
namespace {

constexpr std::array<std::string_view, kClassCount> kNames = {
    "Environment", "Street", "Trees", "Houses", "Barriers", "Poles",
    "Obstacles",   "Cars",   "Trucks", "Motorbikes", "Bikes", "Pedestrians",
};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::string_view class_name(ClassId c) {
  const int i = static_cast<int>(c);
  return is_valid_class_value(i) ? kNames[i] : "Unknown";
}

ClassId parse_class(std::string_view name) {
  const std::string key = lower(name);
  for (int i = 0; i < kClassCount; ++i) {
    if (lower(kNames[i]) == key) return static_cast<ClassId>(i);
  }
  throw ConfigError(fmt::format("unknown class '{}'", name));
}

}  // namespace rlforge::segmentation
