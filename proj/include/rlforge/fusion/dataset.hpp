// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rlforge/core/json_io.hpp"
#include "rlforge/fusion/roi.hpp"
#include "rlforge/radar/cfar.hpp"
#include "rlforge/radar/cubes.hpp"

namespace rlforge::fusion {

enum class Format { kRd, kRda, kTargets, kFeatures };

using FormatSet = std::set<Format>;

// Comma-separated list of rd, rda, targets, features. Throws ConfigError.
FormatSet parse_formats(const std::string& csv);
std::string format_name(Format f);
// rd, rda and targets/features need the processed cube.
bool needs_cube(const FormatSet& formats);

struct AnnotationRecord {
  std::string id;  // f<radar index>_i<instance id>
  int radar_index = 0;
  int camera_index = 0;
  double radar_timestamp = 0.0;
  double camera_timestamp = 0.0;
  double skew = 0.0;
  segmentation::ClassId cls = segmentation::ClassId::kPedestrians;
  std::uint16_t instance_id = 0;
  double score = 1.0;
  WorldBox box;
  RaRoi roi;
  double velocity_lo = 0.0, velocity_hi = 0.0;  // full Doppler axis
  int doppler_bins = 0;
  std::map<std::string, std::string> artifacts;  // format -> path relative to the dataset root
};

Json record_to_json(const AnnotationRecord& r);
AnnotationRecord record_from_json(const Json& j);

// Statistics of a cropped cube, weighted by |x|^2.
struct CropFeatures {
  double peak_db = 0.0;
  double energy = 0.0;
  double range_centroid_m = 0.0, range_spread_m = 0.0;
  double velocity_centroid_mps = 0.0, velocity_spread_mps = 0.0;
  double azimuth_centroid_deg = 0.0, azimuth_spread_deg = 0.0;
};
CropFeatures crop_features(const radar::RdaCube& crop);

// Range-Doppler magnitude of a crop, maximum over azimuth; one channel.
radar::RdMapStack collapse_azimuth(const radar::RdaCube& crop);

// CFAR targets of the full cube whose range and azimuth bins fall inside
// the RoI. Only the RoI plus the CFAR window in range is evaluated, so this
// is cheap compared with a full-cube run.
radar::TargetList roi_targets(const radar::RdaCube& cube, const RaRoi& roi, const radar::CfarParams& params);

struct EmitOptions {
  FormatSet formats;
  radar::CfarParams cfar;
};

// Writes the requested artifacts of the records of one frame into out_dir
// (subdirectories rd/, rda/, targets/, features/) and fills in each
// record's `artifacts`. `cube` may be null only when no format needs it.
// Throws IoError when a file cannot be written.
void emit_dataset(std::vector<AnnotationRecord>& records, const radar::RdaCube* cube, const EmitOptions& options,
                  const std::filesystem::path& out_dir);

// manifest.jsonl: a header line (the only place with a wall-clock time),
// then one record per line in the given order.
void write_manifest(const std::filesystem::path& path, const std::vector<AnnotationRecord>& records,
                    const Json& header);
struct Manifest {
  Json header;
  std::vector<AnnotationRecord> records;
};
Manifest read_manifest(const std::filesystem::path& path);

}  // namespace rlforge::fusion
