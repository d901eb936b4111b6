// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/fusion/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "rlforge/core/error.hpp"
#include "rlforge/radar/cube_io.hpp"

namespace rlforge::fusion {

namespace fs = std::filesystem;

FormatSet parse_formats(const std::string& csv) {
  FormatSet out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "rd") {
      out.insert(Format::kRd);
    } else if (item == "rda") {
      out.insert(Format::kRda);
    } else if (item == "targets") {
      out.insert(Format::kTargets);
    } else if (item == "features") {
      out.insert(Format::kFeatures);
    } else {
      throw ConfigError(fmt::format("unknown output format '{}' (expected rd, rda, targets, features)", item));
    }
  }
  return out;
}

std::string format_name(Format f) {
  switch (f) {
    case Format::kRd: return "rd";
    case Format::kRda: return "rda";
    case Format::kTargets: return "targets";
    case Format::kFeatures: return "features";
  }
  return "?";
}

bool needs_cube(const FormatSet& formats) { return !formats.empty(); }

Json record_to_json(const AnnotationRecord& r) {
  Json artifacts = Json::object();
  for (const auto& [k, v] : r.artifacts) artifacts[k] = v;
  return Json{{"id", r.id},
              {"radar_index", r.radar_index},
              {"camera_index", r.camera_index},
              {"radar_timestamp", r.radar_timestamp},
              {"camera_timestamp", r.camera_timestamp},
              {"skew_s", r.skew},
              {"class", segmentation::class_name(r.cls)},
              {"instance_id", r.instance_id},
              {"score", r.score},
              {"world_box", {{"x_min", r.box.x_min}, {"x_max", r.box.x_max}, {"y_min", r.box.y_min}, {"y_max", r.box.y_max}}},
              {"ra_roi",
               {{"range_m", {r.roi.range_lo_m, r.roi.range_hi_m}},
                {"range_bins", {r.roi.range_bin_lo, r.roi.range_bin_hi}},
                {"azimuth_deg", {r.roi.azimuth_lo_deg, r.roi.azimuth_hi_deg}},
                {"azimuth_bins", {r.roi.azimuth_bin_lo, r.roi.azimuth_bin_hi}}}},
              {"doppler", {{"velocity_mps", {r.velocity_lo, r.velocity_hi}}, {"bins", r.doppler_bins}}},
              {"artifacts", artifacts}};
}

AnnotationRecord record_from_json(const Json& j) {
  AnnotationRecord r;
  try {
    r.id = j.at("id").get<std::string>();
    r.radar_index = j.at("radar_index").get<int>();
    r.camera_index = j.at("camera_index").get<int>();
    r.radar_timestamp = j.at("radar_timestamp").get<double>();
    r.camera_timestamp = j.at("camera_timestamp").get<double>();
    r.skew = j.at("skew_s").get<double>();
    r.cls = segmentation::parse_class(j.at("class").get<std::string>());
    r.instance_id = j.at("instance_id").get<std::uint16_t>();
    r.score = j.at("score").get<double>();
    const Json& b = j.at("world_box");
    r.box = {b.at("x_min").get<double>(), b.at("x_max").get<double>(), b.at("y_min").get<double>(),
             b.at("y_max").get<double>(), r.cls, r.instance_id, r.score};
    const Json& roi = j.at("ra_roi");
    r.roi.range_lo_m = roi.at("range_m").at(0).get<double>();
    r.roi.range_hi_m = roi.at("range_m").at(1).get<double>();
    r.roi.range_bin_lo = roi.at("range_bins").at(0).get<int>();
    r.roi.range_bin_hi = roi.at("range_bins").at(1).get<int>();
    r.roi.azimuth_lo_deg = roi.at("azimuth_deg").at(0).get<double>();
    r.roi.azimuth_hi_deg = roi.at("azimuth_deg").at(1).get<double>();
    r.roi.azimuth_bin_lo = roi.at("azimuth_bins").at(0).get<int>();
    r.roi.azimuth_bin_hi = roi.at("azimuth_bins").at(1).get<int>();
    r.velocity_lo = j.at("doppler").at("velocity_mps").at(0).get<double>();
    r.velocity_hi = j.at("doppler").at("velocity_mps").at(1).get<double>();
    r.doppler_bins = j.at("doppler").at("bins").get<int>();
    for (const auto& [k, v] : j.at("artifacts").items()) r.artifacts[k] = v.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("annotation record: ") + e.what());
  }
  return r;
}

CropFeatures crop_features(const radar::RdaCube& crop) {
  CropFeatures f;
  double peak = 0.0;
  double sr = 0, sr2 = 0, sv = 0, sv2 = 0, sa = 0, sa2 = 0;
  for (int r = 0; r < crop.range_bins; ++r) {
    for (int d = 0; d < crop.doppler_bins; ++d) {
      for (int a = 0; a < crop.azimuth_bins; ++a) {
        const double p = std::norm(crop.at(r, d, a));
        peak = std::max(peak, p);
        f.energy += p;
        sr += p * crop.range_axis[r];
        sr2 += p * crop.range_axis[r] * crop.range_axis[r];
        sv += p * crop.velocity_axis[d];
        sv2 += p * crop.velocity_axis[d] * crop.velocity_axis[d];
        sa += p * crop.azimuth_axis[a];
        sa2 += p * crop.azimuth_axis[a] * crop.azimuth_axis[a];
      }
    }
  }
  f.peak_db = radar::magnitude_db(std::sqrt(peak));
  if (f.energy > 0) {
    const auto moments = [&](double s, double s2, double& mean, double& spread) {
      mean = s / f.energy;
      spread = std::sqrt(std::max(0.0, s2 / f.energy - mean * mean));
    };
    moments(sr, sr2, f.range_centroid_m, f.range_spread_m);
    moments(sv, sv2, f.velocity_centroid_mps, f.velocity_spread_mps);
    moments(sa, sa2, f.azimuth_centroid_deg, f.azimuth_spread_deg);
  }
  return f;
}

radar::RdMapStack collapse_azimuth(const radar::RdaCube& crop) {
  radar::RdMapStack s;
  s.config = crop.config;
  s.meta = crop.meta;
  s.channels = 1;
  s.range_bins = crop.range_bins;
  s.doppler_bins = crop.doppler_bins;
  s.range_axis = crop.range_axis;
  s.velocity_axis = crop.velocity_axis;
  s.data.assign(static_cast<std::size_t>(s.range_bins) * s.doppler_bins, radar::Complex(0.0, 0.0));
  for (int r = 0; r < crop.range_bins; ++r) {
    for (int d = 0; d < crop.doppler_bins; ++d) {
      double m = 0.0;
      for (int a = 0; a < crop.azimuth_bins; ++a) m = std::max(m, std::abs(crop.at(r, d, a)));
      s.data[static_cast<std::size_t>(r) * s.doppler_bins + d] = m;
    }
  }
  return s;
}

radar::TargetList roi_targets(const radar::RdaCube& cube, const RaRoi& roi, const radar::CfarParams& params) {
  params.validate();
  const int hr = params.guard_range + params.train_range;
  RaRoi padded = roi;
  padded.range_bin_lo = std::max(0, roi.range_bin_lo - hr);
  padded.range_bin_hi = std::min(cube.range_bins - 1, roi.range_bin_hi + hr);
  const radar::RdaCube sub = crop_rda(cube, padded);
  radar::TargetList out;
  for (radar::Target t : radar::cfar_detect(sub, params).targets) {
    t.range_bin += padded.range_bin_lo;
    t.azimuth_bin += padded.azimuth_bin_lo;
    if (t.range_bin >= roi.range_bin_lo && t.range_bin <= roi.range_bin_hi) out.push_back(t);
  }
  return out;
}

namespace {

constexpr const char* kTargetHeader =
    "range_m,azimuth_deg,velocity_mps,magnitude_db,world_x_m,world_y_m,range_bin,doppler_bin,azimuth_bin";

std::string target_row(const radar::Target& t) {
  return fmt::format("{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{},{},{}", t.range_m, t.azimuth_deg, t.velocity_mps,
                     t.magnitude_db, t.world.x(), t.world.y(), t.range_bin, t.doppler_bin, t.azimuth_bin);
}

}  // namespace

void emit_dataset(std::vector<AnnotationRecord>& records, const radar::RdaCube* cube, const EmitOptions& options,
                  const fs::path& out_dir) {
  if (records.empty()) return;
  if (needs_cube(options.formats) && cube == nullptr) throw ConfigError("requested formats need the processed cube");
  for (Format f : options.formats) {
    std::error_code ec;
    fs::create_directories(out_dir / format_name(f), ec);
    if (ec) throw IoError(fmt::format("cannot create {}: {}", (out_dir / format_name(f)).string(), ec.message()));
  }
  for (AnnotationRecord& r : records) {
    r.artifacts.clear();
    if (options.formats.empty()) continue;
    const radar::RdaCube crop = crop_rda(*cube, r.roi);
    if (options.formats.count(Format::kRd) != 0) {
      const std::string rel = "rd/" + r.id + ".rdm";
      radar::write_rd(out_dir / rel, collapse_azimuth(crop));
      r.artifacts["rd"] = rel;
    }
    if (options.formats.count(Format::kRda) != 0) {
      const std::string rel = "rda/" + r.id + ".rda";
      radar::write_rda(out_dir / rel, crop);
      r.artifacts["rda"] = rel;
    }
    const bool targets = options.formats.count(Format::kTargets) != 0;
    const bool features = options.formats.count(Format::kFeatures) != 0;
    if (!targets && !features) continue;
    const radar::TargetList list = roi_targets(*cube, r.roi, options.cfar);
    if (targets) {
      std::string text = std::string(kTargetHeader) + "\n";
      for (const auto& t : list) text += target_row(t) + "\n";
      const std::string rel = "targets/" + r.id + ".csv";
      write_text_file(out_dir / rel, text);
      r.artifacts["targets"] = rel;
    }
    if (features) {
      const CropFeatures f = crop_features(crop);
      const std::string stats =
          fmt::format("{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g}", f.peak_db, f.energy,
                      f.range_centroid_m, f.range_spread_m, f.velocity_centroid_mps, f.velocity_spread_mps,
                      f.azimuth_centroid_deg, f.azimuth_spread_deg);
      std::string text = std::string(kTargetHeader) +
                         ",crop_peak_db,crop_energy,range_centroid_m,range_spread_m,velocity_centroid_mps,"
                         "velocity_spread_mps,azimuth_centroid_deg,azimuth_spread_deg\n";
      // A crop without targets still gets its statistics row.
      if (list.empty()) text += ",,,,,,,,," + stats + "\n";
      for (const auto& t : list) text += target_row(t) + "," + stats + "\n";
      const std::string rel = "features/" + r.id + ".csv";
      write_text_file(out_dir / rel, text);
      r.artifacts["features"] = rel;
    }
  }
}

void write_manifest(const fs::path& path, const std::vector<AnnotationRecord>& records, const Json& header) {
  std::string text = header.dump() + "\n";
  for (const auto& r : records) text += record_to_json(r).dump() + "\n";
  write_text_file(path, text);
}

Manifest read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingInputError("cannot read " + path.string());
  Manifest m;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(fmt::format("{}: {}", path.string(), e.what()));
    }
    if (first) {
      m.header = std::move(j);
      first = false;
    } else {
      m.records.push_back(record_from_json(j));
    }
  }
  if (first) throw DataError(path.string() + ": manifest has no header line");
  return m;
}

}  // namespace rlforge::fusion
