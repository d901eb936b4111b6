// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/sim/sequence.hpp"

#include <cmath>

#include "rlforge/core/parallel.hpp"
#include "rlforge/core/rng.hpp"
#include "rlforge/radar/cartesian.hpp"

namespace rlforge::sim {

std::uint64_t stream_seed(std::uint64_t scene_seed, Stream stream) {
  return derive_seed(scene_seed, std::uint64_t{static_cast<std::uint64_t>(stream) + 0x5EED0000U});
}

namespace {

RigPose noisy(const RigPose& pose, double sigma, std::uint64_t seed, double timestamp, bool planar) {
  RigPose p = pose;
  p.timestamp = timestamp;
  if (sigma <= 0) return p;
  Rng rng(derive_seed(seed, timestamp));
  p.position.x() += sigma * rng.normal();
  p.position.y() += sigma * rng.normal();
  if (!planar) p.position.z() += sigma * rng.normal();
  return p;
}

}  // namespace

RigPose recorded_radar_pose(const Scene& scene, double timestamp) {
  return noisy(scene.radar_pose, scene.pose_noise_sigma_m, stream_seed(scene.seed, Stream::kRadarPose), timestamp,
               true);
}

RigPose recorded_camera_pose(const Scene& scene, double timestamp) {
  return noisy(scene.uav_pose, scene.pose_noise_sigma_m, stream_seed(scene.seed, Stream::kCameraPose), timestamp,
               false);
}

RadarFrameTruth radar_truth(const Scene& scene, int index) {
  RadarFrameTruth truth;
  truth.index = index;
  truth.timestamp = scene.radar_timestamp(index);
  truth.radar_pose = scene.radar_pose;
  truth.radar_pose.timestamp = truth.timestamp;
  const double t = truth.timestamp;
  const double max_range = scene.radar.max_range();
  const Eigen::Vector2d radar_xy = scene.radar_pose.position.head<2>();
  for (std::size_t i = 0; i < scene.objects.size(); ++i) {
    const SceneObject& o = scene.objects[i];
    if (!o.trajectory.active(t)) continue;
    ObjectTruth ot;
    ot.object_index = static_cast<int>(i);
    ot.instance_id = static_cast<std::uint16_t>(i + 1);
    ot.cls = o.cls;
    ot.center = o.trajectory.position(t);
    ot.velocity = o.trajectory.velocity_at(t);
    ot.footprint = o.footprint(t);
    const radar::PolarPoint c = radar::world_to_polar(ot.center, scene.radar_pose);
    ot.in_radar_fov = std::abs(c.azimuth_deg) < scene.radar.fov_half_angle_deg && c.range_m < max_range;
    const auto px = geometry::project_to_pixel({ot.center.x(), ot.center.y(), 0.0}, scene.uav_pose, scene.camera);
    ot.in_camera_view = px && px->x() >= -0.5 && px->y() >= -0.5 && px->x() < scene.camera.width_px - 0.5 &&
                        px->y() < scene.camera.height_px - 0.5;
    for (const ScattererSpec& spec : o.scatterers) {
      ScattererTruth st;
      st.world = o.scatterer_world(spec, t);
      const radar::PolarPoint p = radar::world_to_polar(st.world, scene.radar_pose);
      const Eigen::Vector2d los = (st.world - radar_xy).normalized();
      st.polar = {p.range_m, p.azimuth_deg, ot.velocity.dot(los), spec.amplitude};
      st.illuminated = p.range_m > 0 && std::abs(p.azimuth_deg) < scene.radar.fov_half_angle_deg &&
                       p.range_m < max_range;
      st.bins = predict_bins(scene.radar, st.polar);
      ot.scatterers.push_back(st);
    }
    truth.objects.push_back(std::move(ot));
  }
  return truth;
}

std::vector<PointScatterer> illuminated_scatterers(const RadarFrameTruth& truth) {
  std::vector<PointScatterer> out;
  for (const ObjectTruth& o : truth.objects) {
    for (const ScattererTruth& s : o.scatterers) {
      if (s.illuminated) out.push_back(s.polar);
    }
  }
  return out;
}

FrameBundle make_radar_frame(const Scene& scene, int index, bool synthesize) {
  FrameBundle b;
  b.truth = radar_truth(scene, index);
  radar::FrameMeta meta{b.truth.timestamp, recorded_radar_pose(scene, b.truth.timestamp)};
  if (synthesize) {
    const auto scatterers = illuminated_scatterers(b.truth);
    b.raw = synthesize_raw(scene.radar, meta, scatterers, scene.noise, stream_seed(scene.seed, Stream::kRadarNoise));
  } else {
    b.raw.config = scene.radar;
    b.raw.meta = meta;
  }
  return b;
}

segmentation::PanopticFrame make_camera_frame(const Scene& scene, int index, const PixelGroundMap& ground) {
  const double t = scene.camera_timestamp(index);
  segmentation::PanopticFrame f = render_aerial_labels(scene, t, ground);
  f.camera_pose = recorded_camera_pose(scene, t);
  return f;
}

void generate_sequence(const Scene& scene, const std::function<void(FrameBundle&&)>& on_radar,
                       const std::function<void(segmentation::PanopticFrame&&, int)>& on_camera, int jobs,
                       bool synthesize) {
  scene.validate();
  const auto n_radar = static_cast<std::size_t>(scene.radar_frame_count());
  const auto n_camera = static_cast<std::size_t>(scene.camera_frame_count());
  const PixelGroundMap ground(scene.uav_pose, scene.camera);
  parallel_for(n_radar + n_camera, jobs, [&](std::size_t k) {
    if (k < n_radar) {
      on_radar(make_radar_frame(scene, static_cast<int>(k), synthesize));
    } else {
      const int j = static_cast<int>(k - n_radar);
      on_camera(make_camera_frame(scene, j, ground), j);
    }
  });
}

namespace {

Json vec2_json(const Eigen::Vector2d& v) { return Json::array({v.x(), v.y()}); }
Eigen::Vector2d vec2_from(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

Json truth_to_json(const RadarFrameTruth& truth) {
  Json objects = Json::array();
  for (const ObjectTruth& o : truth.objects) {
    Json scatterers = Json::array();
    for (const ScattererTruth& s : o.scatterers) {
      scatterers.push_back({{"world", vec2_json(s.world)},
                            {"range_m", s.polar.range_m},
                            {"azimuth_deg", s.polar.azimuth_deg},
                            {"radial_velocity_mps", s.polar.radial_velocity_mps},
                            {"amplitude", s.polar.amplitude},
                            {"bins", {s.bins.range_bin, s.bins.doppler_bin, s.bins.azimuth_bin}},
                            {"illuminated", s.illuminated}});
    }
    Json footprint = Json::array();
    for (const auto& p : o.footprint) footprint.push_back(vec2_json(p));
    objects.push_back({{"object_index", o.object_index},
                       {"instance_id", o.instance_id},
                       {"class", segmentation::class_name(o.cls)},
                       {"center", vec2_json(o.center)},
                       {"velocity", vec2_json(o.velocity)},
                       {"footprint", footprint},
                       {"in_radar_fov", o.in_radar_fov},
                       {"in_camera_view", o.in_camera_view},
                       {"scatterers", scatterers}});
  }
  return {{"index", truth.index},
          {"timestamp", truth.timestamp},
          {"radar_pose", pose_to_json(truth.radar_pose)},
          {"objects", objects}};
}

RadarFrameTruth truth_from_json(const Json& j) {
  RadarFrameTruth t;
  try {
    t.index = j.at("index").get<int>();
    t.timestamp = j.at("timestamp").get<double>();
    t.radar_pose = pose_from_json(j.at("radar_pose"));
    t.radar_pose.timestamp = t.timestamp;
    for (const Json& o : j.at("objects")) {
      ObjectTruth ot;
      ot.object_index = o.at("object_index").get<int>();
      ot.instance_id = o.at("instance_id").get<std::uint16_t>();
      ot.cls = segmentation::parse_class(o.at("class").get<std::string>());
      ot.center = vec2_from(o.at("center"));
      ot.velocity = vec2_from(o.at("velocity"));
      for (const Json& p : o.at("footprint")) ot.footprint.push_back(vec2_from(p));
      ot.in_radar_fov = o.at("in_radar_fov").get<bool>();
      ot.in_camera_view = o.at("in_camera_view").get<bool>();
      for (const Json& s : o.at("scatterers")) {
        ScattererTruth st;
        st.world = vec2_from(s.at("world"));
        st.polar = {s.at("range_m").get<double>(), s.at("azimuth_deg").get<double>(),
                    s.at("radial_velocity_mps").get<double>(), s.at("amplitude").get<double>()};
        const Json& b = s.at("bins");
        st.bins = {b.at(0).get<double>(), b.at(1).get<double>(), b.at(2).get<double>()};
        st.illuminated = s.at("illuminated").get<bool>();
        ot.scatterers.push_back(st);
      }
      t.objects.push_back(std::move(ot));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("truth record: ") + e.what());
  }
  return t;
}

}  // namespace rlforge::sim
