// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace rlforge::segmentation {

// Pixel values of the class map.
enum class ClassId : std::uint8_t {
  kEnvironment = 0,
  kStreet,
  kTrees,
  kHouses,
  kBarriers,
  kPoles,
  kObstacles,
  kCars,
  kTrucks,
  kMotorbikes,
  kBikes,
  kPedestrians,
};

inline constexpr int kClassCount = 12;
// Marks warped cells that fall outside the image.
inline constexpr std::uint8_t kVoidLabel = 255;

inline constexpr std::array<ClassId, 8> kCountableClasses = {
    ClassId::kBarriers, ClassId::kPoles,      ClassId::kObstacles, ClassId::kCars,
    ClassId::kTrucks,   ClassId::kMotorbikes, ClassId::kBikes,     ClassId::kPedestrians,
};

constexpr bool is_countable(ClassId c) { return c >= ClassId::kBarriers && c <= ClassId::kPedestrians; }
constexpr bool is_valid_class_value(int v) { return v >= 0 && v < kClassCount; }

std::string_view class_name(ClassId c);
// Case-insensitive; throws ConfigError for unknown names.
ClassId parse_class(std::string_view name);

}  // namespace rlforge::segmentation
