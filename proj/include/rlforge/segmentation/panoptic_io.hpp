// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "rlforge/core/grid.hpp"
#include "rlforge/core/json_io.hpp"
#include "rlforge/segmentation/panoptic.hpp"

namespace rlforge::segmentation {

// Single-channel PNG I/O (8-bit and 16-bit grayscale).
void write_png(const std::filesystem::path& path, const Grid2<std::uint8_t>& image);
void write_png(const std::filesystem::path& path, const Grid2<std::uint16_t>& image);
Grid2<std::uint8_t> read_png8(const std::filesystem::path& path);
Grid2<std::uint16_t> read_png16(const std::filesystem::path& path);

struct PanopticPaths {
  std::filesystem::path class_png;
  std::filesystem::path instance_png;  // empty: no instance map
  std::filesystem::path sidecar;       // empty: no sidecar

  // <stem>_class.png, <stem>_instance.png, <stem>.json
  static PanopticPaths for_stem(const std::filesystem::path& stem);
};

// Sidecar: {"timestamp", "pose": {...}, "instances": [{"id", "score"}]}.
Json sidecar_json(const PanopticFrame& frame);

void save_panoptic(const PanopticFrame& frame, const PanopticPaths& paths);
// Validates the frame after loading (see PanopticFrame::validate).
PanopticFrame load_panoptic(const PanopticPaths& paths);
PanopticFrame load_panoptic(const std::filesystem::path& class_png, const std::filesystem::path& instance_png);

}  // namespace rlforge::segmentation
