// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rlforge/core/json_io.hpp"
#include "rlforge/core/pose.hpp"
#include "rlforge/geometry/camera_model.hpp"
#include "rlforge/radar/radar_config.hpp"
#include "rlforge/segmentation/taxonomy.hpp"
#include "rlforge/sim/radar_synth.hpp"

namespace rlforge::sim {

enum class TrajectoryKind { kLinear, kPingPong };

// Ground-plane motion of an object's center. Ping-pong walks `leg_s` seconds
// along `velocity`, then back, and so on. Outside [active_from, active_to)
// the object does not exist.
struct Trajectory {
  TrajectoryKind kind = TrajectoryKind::kLinear;
  Eigen::Vector2d start = Eigen::Vector2d::Zero();
  Eigen::Vector2d velocity = Eigen::Vector2d::Zero();  // m/s
  double leg_s = 0.0;
  double active_from = -std::numeric_limits<double>::infinity();
  double active_to = std::numeric_limits<double>::infinity();

  Eigen::Vector2d position(double t) const;
  Eigen::Vector2d velocity_at(double t) const;
  bool active(double t) const { return t >= active_from && t < active_to; }
};

// Scatterer in the object frame: x along the heading, y to its left.
struct ScattererSpec {
  Eigen::Vector2d offset = Eigen::Vector2d::Zero();
  double amplitude = 1.0;
};

struct SceneObject {
  segmentation::ClassId cls = segmentation::ClassId::kPedestrians;
  double length_m = 0.4;  // along the heading
  double width_m = 0.6;
  double heading_deg = 0.0;  // used while the object is not moving
  Trajectory trajectory;
  std::vector<ScattererSpec> scatterers;

  double heading_at(double t) const;
  // Corners counter-clockwise, starting rear right.
  std::vector<Eigen::Vector2d> footprint(double t) const;
  Eigen::Vector2d scatterer_world(const ScattererSpec& s, double t) const;
};

// Static region of a stuff class (street, trees, ...), painted before objects.
struct StuffRegion {
  segmentation::ClassId cls = segmentation::ClassId::kStreet;
  std::vector<Eigen::Vector2d> polygon;
};

struct Scene {
  std::uint64_t seed = 1;
  double duration_s = 10.0;
  double radar_rate_hz = 2.03;
  double camera_rate_hz = 10.0;
  double radar_offset_s = 0.0;
  double camera_offset_s = 0.012;

  radar::RadarConfig radar;
  RigPose radar_pose;
  NoiseSpec noise;

  geometry::CameraModel camera;
  RigPose uav_pose;  // hovering camera
  // Gaussian noise on the recorded (not the true) poses, per axis.
  double pose_noise_sigma_m = 0.0;

  std::vector<StuffRegion> stuff;
  std::vector<SceneObject> objects;

  // Throws ConfigError on invalid rates, objects or rigs.
  void validate() const;
  int radar_frame_count() const;
  int camera_frame_count() const;
  double radar_timestamp(int i) const { return radar_offset_s + i / radar_rate_hz; }
  double camera_timestamp(int j) const { return camera_offset_s + j / camera_rate_hz; }
};

// Footprint size and scatterer count defaults per class: pedestrians
// 0.4 x 0.6 m with 1-3 scatterers, cars 4.5 x 1.8 m with 5-10.
struct ClassShape {
  double length_m;
  double width_m;
  int min_scatterers;
  int max_scatterers;
};
ClassShape default_shape(segmentation::ClassId cls);

// Random scatterers inside the object footprint, amplitudes in [0.5, 1].
std::vector<ScattererSpec> random_scatterers(const SceneObject& object, std::uint64_t seed);

// Missing object sizes and scatterers are filled from default_shape with
// derive_seed(scene seed, object index).
Scene scene_from_json(const Json& j);
Json scene_to_json(const Scene& scene);

// Radar at the origin looking along +x, UAV hovering at 25 m behind and
// above it with the camera pitched 60 deg down. Three pedestrians walk back
// and forth in front of the radar.
Scene three_pedestrian_scene(double duration_s, std::uint64_t seed);

// 248 radar frames over 122 s; two pedestrians for the whole run and a third
// leaving after 223 frames, for 719 appearances.
Scene campaign_scene(std::uint64_t seed);

}  // namespace rlforge::sim
