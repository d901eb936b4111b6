// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/sim/scene.hpp"

#include <array>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "rlforge/core/error.hpp"
#include "rlforge/core/rng.hpp"
#include "rlforge/geometry/camera_json.hpp"
#include "rlforge/radar/config_json.hpp"

namespace rlforge::sim {

using segmentation::ClassId;

Eigen::Vector2d Trajectory::position(double t) const {
  if (kind == TrajectoryKind::kLinear || leg_s <= 0.0) return start + velocity * t;
  // Triangle wave: 0 -> leg_s -> 0 with period 2 leg_s.
  const double period = 2.0 * leg_s;
  double phase = std::fmod(t, period);
  if (phase < 0) phase += period;
  const double s = phase <= leg_s ? phase : period - phase;
  return start + velocity * s;
}

Eigen::Vector2d Trajectory::velocity_at(double t) const {
  if (kind == TrajectoryKind::kLinear || leg_s <= 0.0) return velocity;
  const double period = 2.0 * leg_s;
  double phase = std::fmod(t, period);
  if (phase < 0) phase += period;
  return phase < leg_s ? velocity : Eigen::Vector2d(-velocity);
}

double SceneObject::heading_at(double t) const {
  const Eigen::Vector2d v = trajectory.velocity_at(t);
  if (v.norm() < 1e-9) return heading_deg;
  return rad_to_deg(std::atan2(v.y(), v.x()));
}

namespace {

Eigen::Vector2d to_world(const Eigen::Vector2d& local, const Eigen::Vector2d& center, double heading_deg) {
  const double h = deg_to_rad(heading_deg);
  const double c = std::cos(h), s = std::sin(h);
  return center + Eigen::Vector2d(c * local.x() - s * local.y(), s * local.x() + c * local.y());
}

}  // namespace

std::vector<Eigen::Vector2d> SceneObject::footprint(double t) const {
  const Eigen::Vector2d c = trajectory.position(t);
  const double h = heading_at(t);
  const double a = length_m / 2, b = width_m / 2;
  return {to_world({-a, -b}, c, h), to_world({a, -b}, c, h), to_world({a, b}, c, h), to_world({-a, b}, c, h)};
}

Eigen::Vector2d SceneObject::scatterer_world(const ScattererSpec& s, double t) const {
  return to_world(s.offset, trajectory.position(t), heading_at(t));
}

void Scene::validate() const {
  if (!(duration_s > 0) || !std::isfinite(duration_s)) throw ConfigError("scene: duration_s must be > 0");
  if (!(radar_rate_hz > 0) || !std::isfinite(radar_rate_hz)) throw ConfigError("scene: radar_rate_hz must be > 0");
  if (!(camera_rate_hz > 0) || !std::isfinite(camera_rate_hz)) throw ConfigError("scene: camera_rate_hz must be > 0");
  if (!(pose_noise_sigma_m >= 0)) throw ConfigError("scene: pose_noise_sigma_m must be >= 0");
  radar.validate();
  camera.validate();
  if (!(uav_pose.position.z() > 0)) throw ConfigError("scene: the UAV must fly above the ground (z > 0)");
  if (objects.size() > 65535) throw ConfigError("scene: at most 65535 objects (16-bit instance ids)");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const SceneObject& o = objects[i];
    if (!segmentation::is_countable(o.cls)) {
      throw ConfigError(fmt::format("object {}: class {} is not countable", i, segmentation::class_name(o.cls)));
    }
    if (!(o.length_m > 0 && o.width_m > 0)) throw ConfigError(fmt::format("object {}: empty footprint", i));
    for (const ScattererSpec& s : o.scatterers) {
      if (std::abs(s.offset.x()) > o.length_m / 2 + 1e-9 || std::abs(s.offset.y()) > o.width_m / 2 + 1e-9) {
        throw ConfigError(fmt::format("object {}: scatterer outside the footprint", i));
      }
      if (!(s.amplitude >= 0) || !std::isfinite(s.amplitude)) {
        throw ConfigError(fmt::format("object {}: scatterer amplitude must be finite and >= 0", i));
      }
    }
    if (!(o.trajectory.active_from < o.trajectory.active_to)) {
      throw ConfigError(fmt::format("object {}: empty active interval", i));
    }
  }
  for (const StuffRegion& r : stuff) {
    if (segmentation::is_countable(r.cls)) throw ConfigError("stuff region with a countable class");
    if (r.polygon.size() < 3) throw ConfigError("stuff region needs at least 3 vertices");
  }
}

int Scene::radar_frame_count() const {
  // The 1e-9 guard keeps exact products (e.g. 10 s at 10 Hz) from rounding up.
  return static_cast<int>(std::ceil(duration_s * radar_rate_hz - 1e-9));
}

int Scene::camera_frame_count() const { return static_cast<int>(std::ceil(duration_s * camera_rate_hz - 1e-9)); }

ClassShape default_shape(ClassId cls) {
  switch (cls) {
    case ClassId::kPedestrians: return {0.4, 0.6, 1, 3};
    case ClassId::kCars: return {4.5, 1.8, 5, 10};
    case ClassId::kTrucks: return {8.0, 2.5, 8, 14};
    case ClassId::kMotorbikes: return {2.0, 0.8, 2, 4};
    case ClassId::kBikes: return {1.8, 0.6, 2, 3};
    default: return {0.5, 0.5, 1, 1};
  }
}

std::vector<ScattererSpec> random_scatterers(const SceneObject& object, std::uint64_t seed) {
  const ClassShape shape = default_shape(object.cls);
  Rng rng(seed);
  const int n = rng.uniform_int(shape.min_scatterers, shape.max_scatterers);
  std::vector<ScattererSpec> out;
  for (int i = 0; i < n; ++i) {
    ScattererSpec s;
    s.offset = {rng.uniform(-0.5, 0.5) * object.length_m, rng.uniform(-0.5, 0.5) * object.width_m};
    s.amplitude = rng.uniform(0.5, 1.0);
    out.push_back(s);
  }
  return out;
}

namespace {

Eigen::Vector2d vec2(const Json& j, const char* key, const Eigen::Vector2d& fallback) {
  if (!j.contains(key)) return fallback;
  const auto a = json_get(j, key, std::array<double, 2>{});
  return {a[0], a[1]};
}

Json vec2_json(const Eigen::Vector2d& v) { return Json::array({v.x(), v.y()}); }

Trajectory trajectory_from_json(const Json& j) {
  check_keys(j, {"kind", "start", "velocity", "leg_s", "active_from", "active_to"}, "trajectory");
  Trajectory t;
  const std::string kind = json_get(j, "kind", std::string("linear"));
  if (kind == "linear") {
    t.kind = TrajectoryKind::kLinear;
  } else if (kind == "ping_pong") {
    t.kind = TrajectoryKind::kPingPong;
  } else {
    throw ConfigError(fmt::format("trajectory: unknown kind '{}'", kind));
  }
  t.start = vec2(j, "start", t.start);
  t.velocity = vec2(j, "velocity", t.velocity);
  t.leg_s = json_get(j, "leg_s", 0.0);
  if (t.kind == TrajectoryKind::kPingPong && !(t.leg_s > 0)) throw ConfigError("trajectory: ping_pong needs leg_s > 0");
  if (j.contains("active_from")) t.active_from = json_get(j, "active_from", 0.0);
  if (j.contains("active_to")) t.active_to = json_get(j, "active_to", 0.0);
  return t;
}

Json trajectory_to_json(const Trajectory& t) {
  Json j{{"kind", t.kind == TrajectoryKind::kLinear ? "linear" : "ping_pong"},
         {"start", vec2_json(t.start)},
         {"velocity", vec2_json(t.velocity)}};
  if (t.kind == TrajectoryKind::kPingPong) j["leg_s"] = t.leg_s;
  if (std::isfinite(t.active_from)) j["active_from"] = t.active_from;
  if (std::isfinite(t.active_to)) j["active_to"] = t.active_to;
  return j;
}

RigPose pose_section(const Json& j, const char* section) {
  check_keys(j, {"x", "y", "z", "yaw_deg", "pitch_deg", "roll_deg"}, section);
  return pose_from_json(j);
}

}  // namespace

Scene scene_from_json(const Json& j) {
  check_keys(j,
             {"seed", "duration_s", "radar_rate_hz", "camera_rate_hz", "radar_offset_s", "camera_offset_s", "radar",
              "radar_pose", "noise", "camera", "uav_pose", "pose_noise_sigma_m", "stuff", "objects"},
             "scene");
  Scene s;
  s.seed = json_get(j, "seed", s.seed);
  s.duration_s = json_get(j, "duration_s", s.duration_s);
  s.radar_rate_hz = json_get(j, "radar_rate_hz", s.radar_rate_hz);
  s.camera_rate_hz = json_get(j, "camera_rate_hz", s.camera_rate_hz);
  s.radar_offset_s = json_get(j, "radar_offset_s", s.radar_offset_s);
  s.camera_offset_s = json_get(j, "camera_offset_s", s.camera_offset_s);
  if (j.contains("radar")) s.radar = radar::radar_config_from_json(j.at("radar"));
  if (j.contains("radar_pose")) s.radar_pose = pose_section(j.at("radar_pose"), "radar_pose");
  if (j.contains("noise")) {
    const Json& n = j.at("noise");
    check_keys(n, {"enabled", "snr_db"}, "noise");
    s.noise.enabled = json_get(n, "enabled", s.noise.enabled);
    s.noise.snr_ref_db = json_get(n, "snr_db", s.noise.snr_ref_db);
  }
  if (j.contains("camera")) s.camera = geometry::camera_model_from_json(j.at("camera"));
  if (j.contains("uav_pose")) s.uav_pose = pose_section(j.at("uav_pose"), "uav_pose");
  s.pose_noise_sigma_m = json_get(j, "pose_noise_sigma_m", s.pose_noise_sigma_m);
  for (const Json& r : j.value("stuff", Json::array())) {
    check_keys(r, {"class", "polygon"}, "stuff");
    StuffRegion region;
    region.cls = segmentation::parse_class(json_get(r, "class", std::string("street")));
    for (const auto& p : json_get(r, "polygon", std::vector<std::array<double, 2>>{})) region.polygon.emplace_back(p[0], p[1]);
    s.stuff.push_back(std::move(region));
  }
  const Json objects = j.value("objects", Json::array());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const Json& o = objects[i];
    check_keys(o, {"class", "length_m", "width_m", "heading_deg", "trajectory", "scatterers"}, "objects");
    SceneObject obj;
    obj.cls = segmentation::parse_class(json_get(o, "class", std::string("pedestrians")));
    const ClassShape shape = default_shape(obj.cls);
    obj.length_m = json_get(o, "length_m", shape.length_m);
    obj.width_m = json_get(o, "width_m", shape.width_m);
    obj.heading_deg = json_get(o, "heading_deg", 0.0);
    if (o.contains("trajectory")) obj.trajectory = trajectory_from_json(o.at("trajectory"));
    if (o.contains("scatterers")) {
      for (const Json& sc : o.at("scatterers")) {
        check_keys(sc, {"offset", "amplitude"}, "scatterers");
        obj.scatterers.push_back({vec2(sc, "offset", Eigen::Vector2d::Zero()), json_get(sc, "amplitude", 1.0)});
      }
    } else {
      obj.scatterers = random_scatterers(obj, derive_seed(s.seed, static_cast<std::uint64_t>(i)));
    }
    s.objects.push_back(std::move(obj));
  }
  s.validate();
  return s;
}

Json scene_to_json(const Scene& s) {
  Json j{{"seed", s.seed},
         {"duration_s", s.duration_s},
         {"radar_rate_hz", s.radar_rate_hz},
         {"camera_rate_hz", s.camera_rate_hz},
         {"radar_offset_s", s.radar_offset_s},
         {"camera_offset_s", s.camera_offset_s},
         {"radar", radar::radar_config_to_json(s.radar)},
         {"radar_pose", pose_to_json(s.radar_pose)},
         {"noise", {{"enabled", s.noise.enabled}, {"snr_db", s.noise.snr_ref_db}}},
         {"camera", geometry::camera_model_to_json(s.camera)},
         {"uav_pose", pose_to_json(s.uav_pose)},
         {"pose_noise_sigma_m", s.pose_noise_sigma_m}};
  Json stuff = Json::array();
  for (const StuffRegion& r : s.stuff) {
    Json poly = Json::array();
    for (const auto& p : r.polygon) poly.push_back(vec2_json(p));
    stuff.push_back({{"class", segmentation::class_name(r.cls)}, {"polygon", poly}});
  }
  j["stuff"] = std::move(stuff);
  Json objects = Json::array();
  for (const SceneObject& o : s.objects) {
    Json sc = Json::array();
    for (const ScattererSpec& p : o.scatterers) sc.push_back({{"offset", vec2_json(p.offset)}, {"amplitude", p.amplitude}});
    objects.push_back({{"class", segmentation::class_name(o.cls)},
                       {"length_m", o.length_m},
                       {"width_m", o.width_m},
                       {"heading_deg", o.heading_deg},
                       {"trajectory", trajectory_to_json(o.trajectory)},
                       {"scatterers", sc}});
  }
  j["objects"] = std::move(objects);
  return j;
}

namespace {

Scene base_scene(std::uint64_t seed) {
  Scene s;
  s.seed = seed;
  s.noise.enabled = true;
  s.noise.snr_ref_db = 30.0;
  s.uav_pose.position = {5.0, 0.0, 25.0};
  s.uav_pose.pitch_deg = 60.0;
  s.stuff.push_back({ClassId::kStreet, {{-10, -4}, {80, -4}, {80, 4}, {-10, 4}}});
  return s;
}

SceneObject pedestrian(const Eigen::Vector2d& start, const Eigen::Vector2d& velocity, double leg_s,
                       std::uint64_t seed) {
  SceneObject o;
  o.cls = ClassId::kPedestrians;
  o.trajectory.kind = TrajectoryKind::kPingPong;
  o.trajectory.start = start;
  o.trajectory.velocity = velocity;
  o.trajectory.leg_s = leg_s;
  o.scatterers = random_scatterers(o, seed);
  return o;
}

}  // namespace

Scene three_pedestrian_scene(double duration_s, std::uint64_t seed) {
  Scene s = base_scene(seed);
  s.duration_s = duration_s;
  s.objects.push_back(pedestrian({25.0, -2.0}, {1.2, 0.0}, 6.0, derive_seed(seed, std::uint64_t{0})));
  s.objects.push_back(pedestrian({32.0, 1.5}, {-1.0, 0.3}, 7.0, derive_seed(seed, std::uint64_t{1})));
  s.objects.push_back(pedestrian({38.0, 4.0}, {0.3, -0.9}, 8.0, derive_seed(seed, std::uint64_t{2})));
  return s;
}

Scene campaign_scene(std::uint64_t seed) {
  Scene s = three_pedestrian_scene(122.0, seed);
  // Third pedestrian leaves between frames 222 and 223.
  s.objects[2].trajectory.active_to = s.radar_timestamp(222) + 0.5 / s.radar_rate_hz;
  return s;
}

}  // namespace rlforge::sim
