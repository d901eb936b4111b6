// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "rlforge/radar/cubes.hpp"

namespace rlforge::radar {

// Binary envelopes, all little-endian:
//   magic[4], u32 dim0, u32 dim1, u32 dim2, f64 timestamp,
//   f64 x, y, z, yaw, pitch, roll, [f64 axis arrays], f32 payload.
// RDC1: dims (channels, chirps, samples), no axes, interleaved (re, im).
// RDM1: dims (channels, range, doppler), range + velocity axes, (re, im).
// RDA1: dims (range, doppler, azimuth), range + velocity + azimuth axes, (re, im).
// RAI1: dims (range, azimuth, 1), range + azimuth axes, real dB values.
// Samples are stored as f32, so a write/read round trip rounds to float.

void write_raw(const std::filesystem::path& path, const RawAdcCube& raw);
// The file carries no radar parameters; its dimensions must match `config`.
RawAdcCube read_raw(const std::filesystem::path& path, const RadarConfig& config);

void write_rd(const std::filesystem::path& path, const RdMapStack& stack);
RdMapStack read_rd(const std::filesystem::path& path);

void write_rda(const std::filesystem::path& path, const RdaCube& cube);
RdaCube read_rda(const std::filesystem::path& path);

void write_ra(const std::filesystem::path& path, const RaImage& image);
RaImage read_ra(const std::filesystem::path& path);

}  // namespace rlforge::radar
