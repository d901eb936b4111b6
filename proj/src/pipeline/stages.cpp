// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/pipeline/stages.hpp"

#include <chrono>
#include <ctime>
#include <map>
#include <set>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "rlforge/core/error.hpp"
#include "rlforge/core/parallel.hpp"
#include "rlforge/core/rng.hpp"
#include "rlforge/fusion/dataset.hpp"
#include "rlforge/fusion/roi.hpp"
#include "rlforge/fusion/sync.hpp"
#include "rlforge/geometry/homography.hpp"
#include "rlforge/metrics/regions.hpp"
#include "rlforge/metrics/report.hpp"
#include "rlforge/pipeline/campaign.hpp"
#include "rlforge/pipeline/layout.hpp"
#include "rlforge/radar/cfar.hpp"
#include "rlforge/radar/cube_io.hpp"
#include "rlforge/radar/processing.hpp"
#include "rlforge/segmentation/panoptic_io.hpp"
#include "rlforge/sim/sequence.hpp"

namespace rlforge::pipeline {

namespace fs = std::filesystem;
using segmentation::ClassId;

namespace {

void make_dirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create {}: {}", dir.string(), ec.message()));
}

// Clears a directory owned by the stage so reruns leave no stale files.
void reset_dir(const fs::path& dir) {
  std::error_code ec;
  fs::remove_all(dir, ec);
  if (ec) throw IoError(fmt::format("cannot clear {}: {}", dir.string(), ec.message()));
  make_dirs(dir);
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(now));
}

fusion::SyncResult sync_frames(const std::vector<RadarIndexEntry>& radar, const std::vector<CameraIndexEntry>& camera,
                               double max_skew) {
  std::vector<double> rt, ct;
  for (const auto& e : radar) rt.push_back(e.timestamp);
  for (const auto& e : camera) ct.push_back(e.timestamp);
  return fusion::match_frames(rt, ct, max_skew);
}

std::vector<sim::RadarFrameTruth> read_truth(const Layout& layout) {
  std::vector<sim::RadarFrameTruth> out;
  for (const Json& j : read_jsonl(layout.truth())) out.push_back(sim::truth_from_json(j));
  return out;
}

// Per-thread scratch so each frame reuses the large spectra buffers.
radar::RdaCube& process_raw(const radar::RawAdcCube& raw) {
  thread_local radar::RdMapStack rd;
  thread_local radar::RdaCube cube;
  radar::range_doppler_map(raw, rd);
  radar::angle_fft(rd, {}, cube);
  return cube;
}

std::string fmt_ratio(const Json& j) { return j.is_null() ? "undefined" : fmt::format("{:.12f}", j.get<double>()); }

}  // namespace

StageSummary run_simulate(const PipelineConfig& config) {
  config.validate();
  const Layout layout{config.output_dir};
  const sim::Scene& scene = config.scene;
  make_dirs(layout.root);
  reset_dir(layout.root / "radar");
  reset_dir(layout.root / "camera");
  make_dirs(layout.root / "camera" / "gt");
  make_dirs(layout.root / "camera" / "seg");
  reset_dir(layout.root / "truth");
  write_json_file(layout.scene(), sim::scene_to_json(scene));

  const int n_radar = scene.radar_frame_count();
  const int n_camera = scene.camera_frame_count();
  std::vector<RadarIndexEntry> radar_entries(n_radar);
  std::vector<CameraIndexEntry> camera_entries(n_camera);
  std::vector<sim::RadarFrameTruth> truths(n_radar);
  const std::uint64_t perturb_seed = sim::stream_seed(scene.seed, sim::Stream::kSegmentation);
  const std::uint64_t score_seed = sim::stream_seed(scene.seed, sim::Stream::kScores);
  spdlog::info("simulate: {} radar frames, {} camera frames", n_radar, n_camera);

  sim::generate_sequence(
      scene,
      [&](sim::FrameBundle&& b) {
        const int i = b.truth.index;
        RadarIndexEntry& e = radar_entries[i];
        e = {i, b.truth.timestamp, b.raw.meta.pose, {}};
        if (config.write_raw) {
          e.raw = Layout::raw_rel(i);
          radar::write_raw(layout.root / e.raw, b.raw);
        }
        truths[i] = std::move(b.truth);
        spdlog::debug("simulate: radar frame {}", i);
      },
      [&](segmentation::PanopticFrame&& gt, int j) {
        segmentation::PanopticFrame seg = segmentation::perturb_segmentation(gt, config.segmentation.perturb, perturb_seed);
        std::set<std::uint16_t> ids(seg.instance_map.data().begin(), seg.instance_map.data().end());
        ids.erase(0);
        Rng rng(derive_seed(score_seed, seg.timestamp));
        for (std::uint16_t id : ids) {
          seg.scores[id] = rng.uniform(config.segmentation.score_min, config.segmentation.score_max);
        }
        camera_entries[j] = {j, gt.timestamp, Layout::gt_stem_rel(j), Layout::seg_stem_rel(j)};
        segmentation::save_panoptic(gt, segmentation::PanopticPaths::for_stem(layout.root / camera_entries[j].gt_stem));
        segmentation::save_panoptic(seg, segmentation::PanopticPaths::for_stem(layout.root / camera_entries[j].seg_stem));
      },
      config.jobs, config.write_raw);

  std::vector<Json> lines;
  for (const auto& e : radar_entries) lines.push_back(radar_entry_json(e));
  write_jsonl(layout.radar_index(), lines);
  lines.clear();
  for (const auto& e : camera_entries) lines.push_back(camera_entry_json(e));
  write_jsonl(layout.camera_index(), lines);
  lines.clear();
  int appearances = 0;
  for (const auto& t : truths) {
    lines.push_back(sim::truth_to_json(t));
    for (const auto& o : t.objects) appearances += is_appearance(o) ? 1 : 0;
  }
  write_jsonl(layout.truth(), lines);
  return {fmt::format("simulate: {} radar frames, {} camera frames, {} object appearances", n_radar, n_camera,
                      appearances),
          fmt::format("output: {}", layout.root.string())};
}

StageSummary run_process(const PipelineConfig& config) {
  config.validate();
  const Layout layout{config.output_dir};
  const auto radar_entries = read_radar_index(layout);
  for (const auto& e : radar_entries) {
    if (e.raw.empty()) throw MissingInputError(fmt::format("process: radar frame {} has no raw data", e.index));
  }
  reset_dir(layout.process_dir());
  std::vector<std::size_t> target_counts(radar_entries.size(), 0);
  parallel_for(radar_entries.size(), config.jobs, [&](std::size_t k) {
    const RadarIndexEntry& e = radar_entries[k];
    const radar::RawAdcCube raw = radar::read_raw(layout.root / e.raw, config.scene.radar);
    const radar::RdaCube& cube = process_raw(raw);
    radar::write_ra(layout.root / Layout::ra_rel(e.index), radar::ra_image(cube));
    const radar::CfarResult cfar = radar::cfar_detect(cube, config.process_cfar);
    std::string csv = "range_m,azimuth_deg,velocity_mps,magnitude_db,world_x_m,world_y_m\n";
    for (const auto& t : cfar.targets) {
      csv += fmt::format("{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g}\n", t.range_m, t.azimuth_deg, t.velocity_mps,
                         t.magnitude_db, t.world.x(), t.world.y());
    }
    write_text_file(layout.root / Layout::targets_rel(e.index), csv);
    target_counts[k] = cfar.targets.size();
    spdlog::debug("process: frame {} -> {} targets", e.index, cfar.targets.size());
  });
  std::size_t total = 0;
  for (auto n : target_counts) total += n;
  return {fmt::format("process: {} radar frames, {} CFAR targets", radar_entries.size(), total)};
}

StageSummary run_fuse(const PipelineConfig& config) {
  config.validate();
  const Layout layout{config.output_dir};
  const auto radar_entries = read_radar_index(layout);
  const auto camera_entries = read_camera_index(layout);
  const fusion::SyncResult sync = sync_frames(radar_entries, camera_entries, config.fusion.max_skew_s);
  const bool need_cube = fusion::needs_cube(config.fusion.formats);
  if (need_cube) {
    for (const auto& p : sync.pairs) {
      if (radar_entries[p.radar_index].raw.empty()) {
        throw MissingInputError(fmt::format("fuse: radar frame {} has no raw data", p.radar_index));
      }
    }
  }
  reset_dir(layout.dataset_dir());

  const geometry::CameraModel& camera = config.scene.camera;
  const geometry::CameraModel* observed = camera.distortion.is_zero() ? nullptr : &camera;
  const fusion::RaAxes axes = fusion::RaAxes::from_config(config.scene.radar);
  const std::vector<double> velocity = config.scene.radar.velocity_axis();
  const fusion::EmitOptions emit{config.fusion.formats, config.fusion.cfar};

  struct FrameOut {
    std::vector<fusion::AnnotationRecord> records;
    std::vector<Json> skips;
  };
  std::vector<FrameOut> outs(sync.pairs.size());
  parallel_for(sync.pairs.size(), config.jobs, [&](std::size_t k) {
    const fusion::SyncPair& p = sync.pairs[k];
    const RadarIndexEntry& re = radar_entries[p.radar_index];
    const CameraIndexEntry& ce = camera_entries[p.camera_index];
    FrameOut& out = outs[k];
    const auto skip = [&](std::uint16_t id, std::string_view reason) {
      out.skips.push_back(Json{{"radar_index", p.radar_index},
                               {"radar_timestamp", p.radar_timestamp},
                               {"camera_index", p.camera_index},
                               {"instance_id", id},
                               {"reason", reason}});
    };
    const segmentation::PanopticFrame seg =
        segmentation::load_panoptic(segmentation::PanopticPaths::for_stem(layout.root / ce.seg_stem));
    const std::vector<segmentation::InstanceMask> masks = segmentation::extract_instances(seg);
    if (masks.empty()) return;
    const geometry::Homography h = config.fusion.reference_points.empty()
                                       ? geometry::camera_homography(seg.camera_pose, camera)
                                       : geometry::homography_from_correspondences(config.fusion.reference_points);
    const fusion::ProjectionResult proj = fusion::project_instances(masks, seg, h, config.fusion.grid, observed);
    for (const auto& d : proj.dropped) skip(d.instance_id, d.reason);
    for (const fusion::WorldMask& m : proj.masks) {
      const fusion::WorldBox box = fusion::extract_roi(m, config.fusion.grid, config.fusion.margin_for(m.cls));
      std::string reason;
      const auto roi = fusion::world_box_to_ra(box, re.pose, axes, &reason);
      if (!roi) {
        skip(m.instance_id, reason);
        continue;
      }
      fusion::AnnotationRecord r;
      r.id = fmt::format("f{:06d}_i{:05d}", p.radar_index, m.instance_id);
      r.radar_index = p.radar_index;
      r.camera_index = p.camera_index;
      r.radar_timestamp = p.radar_timestamp;
      r.camera_timestamp = p.camera_timestamp;
      r.skew = p.skew;
      r.cls = m.cls;
      r.instance_id = m.instance_id;
      r.score = m.score;
      r.box = box;
      r.roi = *roi;
      r.velocity_lo = velocity.front();
      r.velocity_hi = velocity.back();
      r.doppler_bins = static_cast<int>(velocity.size());
      out.records.push_back(std::move(r));
    }
    if (need_cube && !out.records.empty()) {
      const radar::RawAdcCube raw = radar::read_raw(layout.root / re.raw, config.scene.radar);
      fusion::emit_dataset(out.records, &process_raw(raw), emit, layout.dataset_dir());
    }
    spdlog::debug("fuse: radar frame {} -> {} records", p.radar_index, out.records.size());
  });

  std::vector<fusion::AnnotationRecord> records;
  std::vector<std::pair<int, Json>> skips;
  for (int i : sync.unpaired_radar) {
    skips.emplace_back(i, Json{{"radar_index", i}, {"radar_timestamp", radar_entries[i].timestamp}, {"reason", "unpaired"}});
  }
  for (std::size_t k = 0; k < outs.size(); ++k) {
    for (auto& r : outs[k].records) records.push_back(std::move(r));
    for (auto& s : outs[k].skips) skips.emplace_back(sync.pairs[k].radar_index, std::move(s));
  }
  std::stable_sort(skips.begin(), skips.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Json> skip_lines;
  for (auto& s : skips) skip_lines.push_back(std::move(s.second));

  Json formats = Json::array();
  for (auto f : config.fusion.formats) formats.push_back(fusion::format_name(f));
  const Json header{{"type", "header"},
                    {"created_utc", utc_now()},
                    {"formats", formats},
                    {"radar_frames", radar_entries.size()},
                    {"paired_frames", sync.pairs.size()},
                    {"records", records.size()},
                    {"max_skew_s", config.fusion.max_skew_s},
                    {"margin_m", config.fusion.margin_m}};
  fusion::write_manifest(layout.manifest(), records, header);
  write_jsonl(layout.skips(), skip_lines);
  return {fmt::format("fuse: {} of {} radar frames paired, {} annotation records, {} skips", sync.pairs.size(),
                      radar_entries.size(), records.size(), skip_lines.size()),
          fmt::format("manifest: {}", layout.manifest().string())};
}

StageSummary run_evaluate(const PipelineConfig& config) {
  config.validate();
  const Layout layout{config.output_dir};
  const auto radar_entries = read_radar_index(layout);
  const auto camera_entries = read_camera_index(layout);
  const auto truths = read_truth(layout);
  const fusion::Manifest manifest = fusion::read_manifest(layout.manifest());
  const Json scene = read_json_file(layout.scene());
  if (truths.size() != radar_entries.size()) throw DataError("truth and radar index disagree on the frame count");
  const fusion::SyncResult sync = sync_frames(radar_entries, camera_entries, config.fusion.max_skew_s);

  std::vector<int> cameras;
  for (const auto& p : sync.pairs) cameras.push_back(p.camera_index);
  std::sort(cameras.begin(), cameras.end());
  cameras.erase(std::unique(cameras.begin(), cameras.end()), cameras.end());

  struct CameraEval {
    std::vector<segmentation::InstanceMask> gt, seg;
    SegmentationMatch match;
  };
  std::vector<CameraEval> evals(cameras.size());
  parallel_for(cameras.size(), config.jobs, [&](std::size_t k) {
    const CameraIndexEntry& ce = camera_entries[cameras[k]];
    const auto gt = segmentation::load_panoptic(segmentation::PanopticPaths::for_stem(layout.root / ce.gt_stem));
    const auto seg = segmentation::load_panoptic(segmentation::PanopticPaths::for_stem(layout.root / ce.seg_stem));
    evals[k].gt = segmentation::extract_instances(gt);
    evals[k].seg = segmentation::extract_instances(seg);
    evals[k].match = match_segmentation(evals[k].gt, evals[k].seg, 0.5);
  });

  // Segmentation AP over the camera frames used for annotation.
  std::map<ClassId, std::vector<metrics::ImageClassData>> data;
  for (const CameraEval& e : evals) {
    for (ClassId cls : segmentation::kCountableClasses) {
      std::vector<segmentation::InstanceMask> g, s;
      for (const auto& m : e.gt) {
        if (m.cls == cls) g.push_back(m);
      }
      for (const auto& m : e.seg) {
        if (m.cls == cls) s.push_back(m);
      }
      if (g.empty() && s.empty()) continue;
      metrics::ImageClassData d;
      d.ious = metrics::iou_matrix(g, s);
      for (const auto& m : s) d.scores.push_back(m.score);
      data[cls].push_back(std::move(d));
    }
  }
  const metrics::ApResult ap = metrics::average_precision(data, config.match);
  make_dirs(layout.eval_dir());
  write_json_file(layout.eval_dir() / "metrics.json", metrics::report_json(ap, config.match));
  const std::string table = metrics::format_table(metrics::table_rows(ap, config.match));
  write_text_file(layout.eval_dir() / "metrics.txt", table);

  std::map<int, std::size_t> eval_of_camera;
  for (std::size_t k = 0; k < cameras.size(); ++k) eval_of_camera[cameras[k]] = k;
  std::map<int, int> camera_of_radar;
  for (const auto& p : sync.pairs) camera_of_radar[p.radar_index] = p.camera_index;
  std::map<int, std::vector<const fusion::AnnotationRecord*>> records_of_radar;
  for (const auto& r : manifest.records) records_of_radar[r.radar_index].push_back(&r);

  CampaignTally tally;
  for (const auto& t : truths) {
    const auto c = camera_of_radar.find(t.index);
    const SegmentationMatch* match = c == camera_of_radar.end() ? nullptr : &evals[eval_of_camera.at(c->second)].match;
    tally.add_frame(t, match, records_of_radar[t.index]);
  }
  Json campaign = tally.to_json();
  campaign["duration_s"] = json_get(scene, "duration_s", 0.0);
  campaign["camera_frames"] = camera_entries.size();
  campaign["detection_iou_threshold"] = 0.5;
  write_json_file(layout.eval_dir() / "campaign.json", campaign);

  StageSummary lines{fmt::format("evaluate: {} camera frames, {} annotation records ({} sound)", cameras.size(),
                                 tally.records, tally.records_sound)};
  std::string line;
  for (char ch : table) {
    if (ch == '\n') {
      lines.push_back(line);
      line.clear();
    } else {
      line += ch;
    }
  }
  return lines;
}

StageSummary run_report(const PipelineConfig& config) {
  config.validate();
  const Layout layout{config.output_dir};
  const fusion::Manifest manifest = fusion::read_manifest(layout.manifest());
  const auto skips = read_jsonl(layout.skips());
  const fs::path campaign_path = layout.eval_dir() / "campaign.json";
  const fs::path metrics_path = layout.eval_dir() / "metrics.json";
  if (!fs::exists(campaign_path) || !fs::exists(metrics_path)) {
    throw MissingInputError("report: evaluation results missing, run 'evaluate' first");
  }
  const Json c = read_json_file(campaign_path);
  const Json m = read_json_file(metrics_path);
  StageSummary lines;
  try {
    const int appearances = c.at("appearances").get<int>();
    const int detected = c.at("detected").get<int>();
    lines.push_back(fmt::format("frames: {}, duration: {:g} s", c.at("radar_frames").get<int>(),
                                c.at("duration_s").get<double>()));
    lines.push_back(fmt::format("camera frames: {}, paired radar frames: {}", c.at("camera_frames").get<int>(),
                                c.at("paired_frames").get<int>()));
    lines.push_back(fmt::format("appearances: {}", appearances));
    lines.push_back(fmt::format("detected: {} (IoU > {:g} %)", detected,
                                100.0 * c.at("detection_iou_threshold").get<double>()));
    lines.push_back(fmt::format("mapped: {}", c.at("mapped").get<int>()));
    lines.push_back(fmt::format("detected/total: {}", fmt_ratio(c.at("detected_over_total"))));
    lines.push_back(fmt::format("mapped/detected: {}", fmt_ratio(c.at("mapped_over_detected"))));
    lines.push_back(fmt::format("recall: {}/{} = {}", detected, appearances, fmt_ratio(c.at("recall"))));
    lines.push_back(fmt::format("annotation records: {}, sound: {}, unmatched: {}", manifest.records.size(),
                                c.at("records_sound").get<int>(), c.at("records_unmatched").get<int>()));
    lines.push_back(fmt::format("skipped: {}", skips.size()));
    for (const auto& [name, v] : c.at("per_class").items()) {
      lines.push_back(fmt::format("class {}: appearances {}, detected {}, mapped {}", name,
                                  v.at("appearances").get<int>(), v.at("detected").get<int>(),
                                  v.at("mapped").get<int>()));
    }
    for (const Json& row : m.at("table")) {
      const Json& v = row.at("value_percent");
      lines.push_back(fmt::format("{} [{}]: {}", row.at("metric").get<std::string>(),
                                  row.at("iou_interval").get<std::string>(),
                                  v.is_null() ? std::string("undefined") : fmt::format("{:.2f} %", v.get<double>())));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("report: malformed evaluation results: ") + e.what());
  }
  make_dirs(layout.report_dir());
  std::string text;
  for (const auto& l : lines) text += l + "\n";
  write_text_file(layout.report_dir() / "report.txt", text);
  Json out{{"campaign", c}, {"metrics", m.at("table")}, {"records", manifest.records.size()}, {"skips", skips.size()}};
  write_json_file(layout.report_dir() / "report.json", out);
  return lines;
}

StageSummary run_stage(const std::string& name, const PipelineConfig& config) {
  if (name == "simulate") return run_simulate(config);
  if (name == "process") return run_process(config);
  if (name == "fuse") return run_fuse(config);
  if (name == "evaluate") return run_evaluate(config);
  if (name == "report") return run_report(config);
  throw ConfigError(fmt::format("unknown stage '{}'", name));
}

}  // namespace rlforge::pipeline
