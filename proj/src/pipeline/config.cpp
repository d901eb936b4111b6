// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/pipeline/config.hpp"

#include <fmt/format.h>

#include "rlforge/core/error.hpp"

namespace rlforge::pipeline {

double FusionSection::margin_for(segmentation::ClassId cls) const {
  const auto it = class_margin_m.find(cls);
  return it == class_margin_m.end() ? margin_m : it->second;
}

void PipelineConfig::validate() const {
  scene.validate();
  segmentation.perturb.validate();
  if (!(segmentation.score_min >= 0 && segmentation.score_min <= segmentation.score_max &&
        segmentation.score_max <= 1)) {
    throw ConfigError("segmentation: need 0 <= score_min <= score_max <= 1");
  }
  process_cfar.validate();
  fusion.cfar.validate();
  fusion.grid.validate();
  if (!(fusion.margin_m >= 0)) throw ConfigError("fusion: margin_m must be >= 0");
  for (const auto& [cls, m] : fusion.class_margin_m) {
    if (!(m >= 0)) throw ConfigError(fmt::format("fusion: margin for {} must be >= 0", segmentation::class_name(cls)));
  }
  if (!(fusion.max_skew_s >= 0)) throw ConfigError("fusion: max_skew_s must be >= 0");
  if (!fusion.reference_points.empty()) geometry::homography_from_correspondences(fusion.reference_points);
  if (fusion::needs_cube(fusion.formats) && !write_raw) {
    throw ConfigError("fusion formats need raw radar data, but write_raw is false");
  }
  match.validate();
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

namespace {

radar::CfarParams cfar_from_json(const Json& j, const char* section) {
  check_keys(j, {"guard_range", "train_range", "guard_doppler", "train_doppler", "false_alarm_rate"}, section);
  radar::CfarParams p;
  p.guard_range = json_get(j, "guard_range", p.guard_range);
  p.train_range = json_get(j, "train_range", p.train_range);
  p.guard_doppler = json_get(j, "guard_doppler", p.guard_doppler);
  p.train_doppler = json_get(j, "train_doppler", p.train_doppler);
  p.false_alarm_rate = json_get(j, "false_alarm_rate", p.false_alarm_rate);
  return p;
}

std::vector<geometry::Correspondence> reference_points_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("fusion.reference_points must be an array");
  std::vector<geometry::Correspondence> out;
  for (const Json& e : j) {
    check_keys(e, {"pixel", "world"}, "fusion.reference_points");
    const auto pixel = json_get(e, "pixel", std::vector<double>{});
    const auto world = json_get(e, "world", std::vector<double>{});
    if (pixel.size() != 2 || world.size() != 2) {
      throw ConfigError("fusion.reference_points: each entry needs pixel [u, v] and world [x, y]");
    }
    out.emplace_back(Eigen::Vector2d(pixel[0], pixel[1]), Eigen::Vector2d(world[0], world[1]));
  }
  if (out.size() < 4) throw ConfigError("fusion.reference_points: need at least 4 pairs");
  return out;
}

sim::Scene preset_scene(const Json& j, const std::optional<std::uint64_t>& seed_override) {
  check_keys(j, {"name", "duration_s", "seed", "pose_noise_sigma_m", "noise", "snr_db"}, "scene_preset");
  const std::string name = json_get(j, "name", std::string());
  const std::uint64_t seed = seed_override.value_or(json_get(j, "seed", std::uint64_t{1}));
  sim::Scene s;
  if (name == "three_pedestrians") {
    s = sim::three_pedestrian_scene(json_get(j, "duration_s", 10.0), seed);
  } else if (name == "campaign") {
    if (j.contains("duration_s")) throw ConfigError("scene_preset: the campaign preset has a fixed duration");
    s = sim::campaign_scene(seed);
  } else {
    throw ConfigError(fmt::format("scene_preset: unknown name '{}' (three_pedestrians, campaign)", name));
  }
  s.pose_noise_sigma_m = json_get(j, "pose_noise_sigma_m", s.pose_noise_sigma_m);
  s.noise.enabled = json_get(j, "noise", s.noise.enabled);
  s.noise.snr_ref_db = json_get(j, "snr_db", s.noise.snr_ref_db);
  return s;
}

WorldGridSpec grid_from_json(const Json& j, WorldGridSpec g) {
  check_keys(j, {"x_min", "y_min", "cell_size", "nx", "ny"}, "fusion.grid");
  g.origin = {json_get(j, "x_min", g.origin.x()), json_get(j, "y_min", g.origin.y())};
  g.cell_size = json_get(j, "cell_size", g.cell_size);
  g.nx = json_get(j, "nx", g.nx);
  g.ny = json_get(j, "ny", g.ny);
  return g;
}

std::string join_formats(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (!j.is_array()) throw ConfigError("fusion.formats must be a list or a comma-separated string");
  std::string csv;
  for (const Json& f : j) {
    if (!f.is_string()) throw ConfigError("fusion.formats entries must be strings");
    csv += (csv.empty() ? "" : ",") + f.get<std::string>();
  }
  return csv;
}

}  // namespace

PipelineConfig config_from_json(const Json& j, const CliOverrides& overrides, const std::filesystem::path& base_dir) {
  check_keys(j,
             {"scene", "scene_preset", "write_raw", "segmentation", "process", "fusion", "evaluate", "output_dir",
              "jobs"},
             "config");
  PipelineConfig c;
  if (j.contains("scene") == j.contains("scene_preset")) {
    throw ConfigError("config needs exactly one of 'scene' and 'scene_preset'");
  }
  if (j.contains("scene")) {
    Json scene = j.at("scene");
    if (overrides.seed) scene["seed"] = *overrides.seed;
    c.scene = sim::scene_from_json(scene);
  } else {
    c.scene = preset_scene(j.at("scene_preset"), overrides.seed);
  }
  c.write_raw = json_get(j, "write_raw", c.write_raw);
  if (j.contains("segmentation")) {
    const Json& s = j.at("segmentation");
    check_keys(s, {"drop_rate", "shift_sigma_px", "dilation_px", "score_min", "score_max"}, "segmentation");
    c.segmentation.perturb.drop_rate = json_get(s, "drop_rate", 0.0);
    c.segmentation.perturb.shift_sigma_px = json_get(s, "shift_sigma_px", 0.0);
    c.segmentation.perturb.dilation_px = json_get(s, "dilation_px", 0);
    c.segmentation.score_min = json_get(s, "score_min", c.segmentation.score_min);
    c.segmentation.score_max = json_get(s, "score_max", c.segmentation.score_max);
  }
  if (j.contains("process")) {
    const Json& p = j.at("process");
    check_keys(p, {"cfar"}, "process");
    if (p.contains("cfar")) c.process_cfar = cfar_from_json(p.at("cfar"), "process.cfar");
  }
  std::string formats;
  bool formats_set = false;
  if (j.contains("fusion")) {
    const Json& f = j.at("fusion");
    check_keys(f, {"margin_m", "class_margin_m", "max_skew_s", "formats", "grid", "cfar", "reference_points"},
               "fusion");
    c.fusion.margin_m = json_get(f, "margin_m", c.fusion.margin_m);
    if (f.contains("class_margin_m")) {
      for (const auto& [name, v] : f.at("class_margin_m").items()) {
        if (!v.is_number()) throw ConfigError(fmt::format("fusion.class_margin_m.{} must be a number", name));
        c.fusion.class_margin_m[segmentation::parse_class(name)] = v.get<double>();
      }
    }
    c.fusion.max_skew_s = json_get(f, "max_skew_s", c.fusion.max_skew_s);
    if (f.contains("formats")) {
      formats = join_formats(f.at("formats"));
      formats_set = true;
    }
    if (f.contains("grid")) c.fusion.grid = grid_from_json(f.at("grid"), c.fusion.grid);
    if (f.contains("cfar")) c.fusion.cfar = cfar_from_json(f.at("cfar"), "fusion.cfar");
    if (f.contains("reference_points")) {
      c.fusion.reference_points = reference_points_from_json(f.at("reference_points"));
    }
  }
  if (overrides.formats) {
    formats = *overrides.formats;
    formats_set = true;
  }
  if (formats_set) c.fusion.formats = fusion::parse_formats(formats);
  if (j.contains("evaluate")) {
    const Json& e = j.at("evaluate");
    check_keys(e, {"iou_thresholds"}, "evaluate");
    c.match.thresholds = json_get(e, "iou_thresholds", c.match.thresholds);
  }
  c.output_dir = json_get(j, "output_dir", std::string("out"));
  if (overrides.out) c.output_dir = *overrides.out;
  if (c.output_dir.is_relative() && !overrides.out && !base_dir.empty()) c.output_dir = base_dir / c.output_dir;
  c.jobs = overrides.jobs.value_or(json_get(j, "jobs", c.jobs));
  c.validate();
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path, const CliOverrides& overrides) {
  Json j;
  try {
    j = read_json_file(path);
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  } catch (const MissingInputError& e) {
    throw ConfigError(e.what());
  }
  return config_from_json(j, overrides, path.parent_path());
}

}  // namespace rlforge::pipeline
