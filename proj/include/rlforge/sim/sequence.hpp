// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "rlforge/core/json_io.hpp"
#include "rlforge/radar/cubes.hpp"
#include "rlforge/segmentation/panoptic.hpp"
#include "rlforge/sim/radar_synth.hpp"
#include "rlforge/sim/render.hpp"
#include "rlforge/sim/scene.hpp"

namespace rlforge::sim {

// Independent random streams derived from the scene seed.
enum class Stream : std::uint64_t { kRadarNoise = 1, kRadarPose = 2, kCameraPose = 3, kSegmentation = 4, kScores = 5 };
std::uint64_t stream_seed(std::uint64_t scene_seed, Stream stream);

struct ScattererTruth {
  Eigen::Vector2d world = Eigen::Vector2d::Zero();
  PointScatterer polar;
  BinPrediction bins{};
  bool illuminated = false;  // inside the FoV and the unambiguous range
};

struct ObjectTruth {
  int object_index = 0;
  std::uint16_t instance_id = 0;
  segmentation::ClassId cls = segmentation::ClassId::kPedestrians;
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  Eigen::Vector2d velocity = Eigen::Vector2d::Zero();
  std::vector<Eigen::Vector2d> footprint;
  std::vector<ScattererTruth> scatterers;
  bool in_radar_fov = false;    // center inside FoV and range
  bool in_camera_view = false;  // center projects into the image
};

struct RadarFrameTruth {
  int index = 0;
  double timestamp = 0.0;
  RigPose radar_pose;  // true pose
  std::vector<ObjectTruth> objects;  // active objects only
};

// One radar frame: raw cube (meta carries the recorded pose) plus truth.
struct FrameBundle {
  radar::RawAdcCube raw;
  RadarFrameTruth truth;
};

RigPose recorded_radar_pose(const Scene& scene, double timestamp);
RigPose recorded_camera_pose(const Scene& scene, double timestamp);

RadarFrameTruth radar_truth(const Scene& scene, int index);
std::vector<PointScatterer> illuminated_scatterers(const RadarFrameTruth& truth);

// Raw data is skipped (empty samples) when `synthesize` is false.
FrameBundle make_radar_frame(const Scene& scene, int index, bool synthesize = true);

// Ground-truth labels rendered from the true UAV pose; the frame records the
// (possibly noisy) recorded pose.
segmentation::PanopticFrame make_camera_frame(const Scene& scene, int index, const PixelGroundMap& ground);

// Produces every radar and camera frame of the scene. Callbacks run on up to
// `jobs` worker threads and must be thread safe; each frame depends only on
// (scene, index), so the order of calls is irrelevant.
void generate_sequence(const Scene& scene, const std::function<void(FrameBundle&&)>& on_radar,
                       const std::function<void(segmentation::PanopticFrame&&, int)>& on_camera, int jobs = 1,
                       bool synthesize = true);

Json truth_to_json(const RadarFrameTruth& truth);
RadarFrameTruth truth_from_json(const Json& j);

}  // namespace rlforge::sim
