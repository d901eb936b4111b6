// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "rlforge/core/error.hpp"
#include "rlforge/geometry/camera_model.hpp"
#include "rlforge/radar/processing.hpp"
#include "rlforge/segmentation/panoptic.hpp"
#include "rlforge/sim/radar_synth.hpp"
#include "rlforge/sim/render.hpp"
#include "rlforge/sim/scene.hpp"
#include "rlforge/sim/sequence.hpp"

namespace rlforge::sim {
namespace {

using Eigen::Vector2d;
using radar::RadarConfig;
using segmentation::ClassId;
constexpr double kPi = std::numbers::pi;

RadarConfig small_config() {
  RadarConfig c;
  c.samples_per_chirp = 64;
  c.chirps_per_tx = 32;
  c.bandwidth_hz = 250e6;
  return c;
}

double peak_magnitude(const RadarConfig& c, std::span<const PointScatterer> s) {
  return radar::process_frame(synthesize_raw(c, {}, s)).argmax().magnitude;
}

TEST(Synth, EmptySceneIsZeroCube) {
  const RadarConfig c = small_config();
  const auto raw = synthesize_raw(c, {}, {});
  for (const auto& x : raw.samples) ASSERT_EQ(std::abs(x), 0.0);
}

TEST(Synth, ZeroRangeThrows) {
  const PointScatterer s{0.0, 0, 0, 1};
  EXPECT_THROW(synthesize_raw(small_config(), {}, std::span(&s, 1)), DataError);
}

TEST(Synth, DoublingAmplitudeDoublesPeak) {
  const RadarConfig c = small_config();
  const PointScatterer a{17, 12, 0.7, 0.8}, b{17, 12, 0.7, 1.6};
  EXPECT_NEAR(peak_magnitude(c, std::span(&b, 1)), 2 * peak_magnitude(c, std::span(&a, 1)), 1e-9);
}

TEST(Synth, EnergyAdditivity) {
  const RadarConfig c = small_config();
  const PointScatterer a{14, -20, 1.1, 1}, b{27, 35, -0.6, 0.7};
  const std::vector<PointScatterer> both{a, b};
  const auto ra = synthesize_raw(c, {}, std::span(&a, 1));
  const auto rb = synthesize_raw(c, {}, std::span(&b, 1));
  const auto rab = synthesize_raw(c, {}, both);
  double scale = 0;
  for (const auto& x : rab.samples) scale = std::max(scale, std::abs(x));
  for (std::size_t i = 0; i < rab.samples.size(); ++i) {
    ASSERT_LE(std::abs(rab.samples[i] - ra.samples[i] - rb.samples[i]), 1e-12 * scale);
  }
  const auto ca = radar::process_frame(ra), cb = radar::process_frame(rb), cab = radar::process_frame(rab);
  double peak = 0;
  for (const auto& x : cab.data) peak = std::max(peak, std::abs(x));
  for (std::size_t i = 0; i < cab.data.size(); ++i) {
    ASSERT_LE(std::abs(cab.data[i] - ca.data[i] - cb.data[i]), 1e-12 * peak);
  }
}

TEST(Synth, DefaultRadarArgmaxAtTruth) {
  const RadarConfig c;
  const PointScatterer s{20, 10, 1, 1};
  const auto peak = radar::process_frame(synthesize_raw(c, {}, std::span(&s, 1))).argmax();
  const BinPrediction p = predict_bins(c, s);
  EXPECT_LE(std::abs(peak.range_bin - p.range_bin), 1.0);
  EXPECT_LE(std::abs(peak.doppler_bin - p.doppler_bin), 1.0);
  EXPECT_LE(std::abs(peak.azimuth_bin - p.azimuth_bin), 1.0);
}

TEST(Synth, OutsideFovNotIlluminated) {
  const RadarConfig c = small_config();
  const PointScatterer s{15, 80, 0, 1};
  const auto raw = synthesize_raw(c, {}, std::span(&s, 1));
  for (const auto& x : raw.samples) ASSERT_EQ(std::abs(x), 0.0);
}

TEST(Synth, NoiseFloorMatchesReferenceSnr) {
  // A unit scatterer centred on range, Doppler and azimuth bins peaks at
  // snr_ref_db above the mean processed noise power.
  const RadarConfig c = small_config();
  const PointScatterer s{20 * c.range_bin_width(), 0, 0, 1};
  const double peak = peak_magnitude(c, std::span(&s, 1));
  const NoiseSpec noise{true, 25.0};
  const auto cube = radar::process_frame(synthesize_raw(c, {}, {}, noise, 9));
  double mean = 0;
  for (const auto& x : cube.data) mean += std::norm(x);
  mean /= static_cast<double>(cube.data.size());
  EXPECT_NEAR(10 * std::log10(peak * peak / mean), 25.0, 0.2);
}

TEST(Synth, NoiseDependsOnSeedAndTimestamp) {
  const RadarConfig c = small_config();
  const NoiseSpec noise{true, 30.0};
  radar::FrameMeta m1, m2;
  m2.timestamp = 0.5;
  const auto a = synthesize_raw(c, m1, {}, noise, 1);
  const auto b = synthesize_raw(c, m1, {}, noise, 1);
  const auto d = synthesize_raw(c, m2, {}, noise, 1);
  const auto e = synthesize_raw(c, m1, {}, noise, 2);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_NE(a.samples, d.samples);
  EXPECT_NE(a.samples, e.samples);
}

TEST(Trajectory, PingPongOracle) {
  Trajectory t;
  t.kind = TrajectoryKind::kPingPong;
  t.start = {10, 2};
  t.velocity = {1, -0.5};
  t.leg_s = 4;
  for (double time : {0.0, 1.5, 3.99, 4.0, 5.0, 7.9, 8.0, 9.5, 13.0}) {
    const double phase = std::fmod(time, 8.0);
    const double along = phase <= 4.0 ? phase : 8.0 - phase;
    const Vector2d expected = t.start + along * t.velocity;
    EXPECT_LT((t.position(time) - expected).norm(), 1e-12) << time;
    const Vector2d v = phase < 4.0 ? t.velocity : Vector2d(-t.velocity);
    if (std::abs(phase - 4.0) > 1e-9 && phase > 1e-9) {
      EXPECT_LT((t.velocity_at(time) - v).norm(), 1e-12) << time;
    }
  }
  Trajectory lin;
  lin.start = {1, 1};
  lin.velocity = {2, 0};
  lin.active_from = 1;
  lin.active_to = 3;
  EXPECT_LT((lin.position(2.5) - Vector2d(6, 1)).norm(), 1e-12);
  EXPECT_FALSE(lin.active(0.5));
  EXPECT_TRUE(lin.active(1.0));
  EXPECT_FALSE(lin.active(3.0));
}

TEST(SceneObject, FootprintAndScatterersFollowHeading) {
  SceneObject o;
  o.length_m = 2;
  o.width_m = 1;
  o.trajectory.start = {5, 5};
  o.trajectory.velocity = {0, 1};  // heading +90 deg
  o.scatterers = {{{1, 0}, 1.0}};
  EXPECT_NEAR(o.heading_at(0), 90, 1e-12);
  const auto fp = o.footprint(0);
  ASSERT_EQ(fp.size(), 4u);
  // rear right: 1 m behind along -y, 0.5 m right of heading along +x
  EXPECT_LT((fp[0] - Vector2d(5.5, 4)).norm(), 1e-12);
  EXPECT_LT((o.scatterer_world(o.scatterers[0], 0) - Vector2d(5, 6)).norm(), 1e-12);
  // counter-clockwise: positive shoelace area
  double area2 = 0;
  for (int i = 0; i < 4; ++i) {
    const auto& p = fp[i];
    const auto& q = fp[(i + 1) % 4];
    area2 += p.x() * q.y() - q.x() * p.y();
  }
  EXPECT_NEAR(area2 / 2, 2.0, 1e-12);
}

TEST(SceneObject, RandomScatterersInsideFootprint) {
  SceneObject car;
  car.cls = ClassId::kCars;
  const ClassShape shape = default_shape(ClassId::kCars);
  car.length_m = shape.length_m;
  car.width_m = shape.width_m;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_scatterers(car, seed);
    ASSERT_GE(static_cast<int>(s.size()), shape.min_scatterers);
    ASSERT_LE(static_cast<int>(s.size()), shape.max_scatterers);
    for (const auto& sc : s) {
      EXPECT_LE(std::abs(sc.offset.x()), car.length_m / 2);
      EXPECT_LE(std::abs(sc.offset.y()), car.width_m / 2);
      EXPECT_GE(sc.amplitude, 0.5);
      EXPECT_LE(sc.amplitude, 1.0);
    }
  }
}

TEST(Scene, JsonRoundTripAndValidation) {
  const Scene s = three_pedestrian_scene(12, 4);
  const Json j = scene_to_json(s);
  EXPECT_EQ(scene_to_json(scene_from_json(j)), j);
  Json bad = j;
  bad["radar_rate_hz"] = 0;
  EXPECT_THROW(scene_from_json(bad), ConfigError);
  bad = j;
  bad["objects"][0]["scatterers"][0]["offset"] = {5.0, 0.0};
  EXPECT_THROW(scene_from_json(bad), ConfigError);
  bad = j;
  bad["objects"][0]["class"] = "Street";
  EXPECT_THROW(scene_from_json(bad), ConfigError);
  bad = j;
  bad["colour"] = 1;
  EXPECT_THROW(scene_from_json(bad), ConfigError);
}

TEST(Scene, FrameCountsAndTimestamps) {
  const Scene s = campaign_scene(1);
  EXPECT_EQ(s.radar_frame_count(), 248);
  EXPECT_EQ(s.camera_frame_count(), 1220);
  EXPECT_NEAR(s.radar_timestamp(247), 247 / 2.03, 1e-12);
  EXPECT_NEAR(s.camera_timestamp(1), 0.112, 1e-12);
}

int appearances(const Scene& s) {
  int n = 0;
  for (int i = 0; i < s.radar_frame_count(); ++i) {
    for (const auto& o : radar_truth(s, i).objects) n += (o.in_radar_fov && o.in_camera_view) ? 1 : 0;
  }
  return n;
}

TEST(Scene, CampaignHasSevenHundredNineteenAppearances) {
  const Scene s = campaign_scene(2023);
  EXPECT_EQ(appearances(s), 719);
  const RadarFrameTruth last = radar_truth(s, 247);
  EXPECT_EQ(last.objects.size(), 2u);
  EXPECT_EQ(radar_truth(s, 222).objects.size(), 3u);
}

TEST(Sequence, StreamSeedsDistinct) {
  std::set<std::uint64_t> seeds;
  for (auto st : {Stream::kRadarNoise, Stream::kRadarPose, Stream::kCameraPose, Stream::kSegmentation, Stream::kScores}) {
    seeds.insert(stream_seed(7, st));
  }
  EXPECT_EQ(seeds.size(), 5u);
  EXPECT_NE(stream_seed(7, Stream::kScores), stream_seed(8, Stream::kScores));
}

TEST(Sequence, PoseNoiseOnlyOnRecordedPlanarAxes) {
  Scene s = three_pedestrian_scene(5, 3);
  EXPECT_EQ(recorded_radar_pose(s, 1.0).position, s.radar_pose.position);
  s.pose_noise_sigma_m = 0.1;
  const RigPose r = recorded_radar_pose(s, 1.0);
  EXPECT_NE(r.position.x(), s.radar_pose.position.x());
  EXPECT_NE(r.position.y(), s.radar_pose.position.y());
  EXPECT_EQ(r.position.z(), s.radar_pose.position.z());
  EXPECT_EQ(r.yaw_deg, s.radar_pose.yaw_deg);
  const RigPose c = recorded_camera_pose(s, 1.0);
  EXPECT_NE(c.position.z(), s.uav_pose.position.z());
  EXPECT_EQ(c.pitch_deg, s.uav_pose.pitch_deg);
  EXPECT_EQ(radar_truth(s, 2).radar_pose.position, s.radar_pose.position);
}

TEST(Sequence, TruthBinsMatchPrediction) {
  Scene s = three_pedestrian_scene(5, 3);
  s.radar = small_config();
  const RadarFrameTruth t = radar_truth(s, 3);
  ASSERT_EQ(t.objects.size(), 3u);
  for (const auto& o : t.objects) {
    EXPECT_EQ(o.instance_id, o.object_index + 1);
    for (const auto& sc : o.scatterers) {
      const BinPrediction p = predict_bins(s.radar, sc.polar);
      EXPECT_EQ(p.range_bin, sc.bins.range_bin);
      const Vector2d d = sc.world - s.radar_pose.position.head<2>();
      EXPECT_NEAR(sc.polar.range_m, d.norm(), 1e-9);
      EXPECT_NEAR(sc.polar.azimuth_deg, std::atan2(d.y(), d.x()) * 180 / kPi, 1e-9);
      // receding speed: velocity projected on the line of sight
      EXPECT_NEAR(sc.polar.radial_velocity_mps, o.velocity.dot(d.normalized()), 1e-9);
    }
  }
  const Json j = truth_to_json(t);
  EXPECT_EQ(truth_to_json(truth_from_json(j)), j);
}

TEST(Sequence, RadarFrameDeterministic) {
  Scene s = three_pedestrian_scene(3, 11);
  s.radar = small_config();
  s.pose_noise_sigma_m = 0.05;
  const FrameBundle a = make_radar_frame(s, 2);
  const FrameBundle b = make_radar_frame(s, 2);
  EXPECT_EQ(a.raw.samples, b.raw.samples);
  EXPECT_EQ(a.raw.meta.pose.position, b.raw.meta.pose.position);
  EXPECT_EQ(truth_to_json(a.truth), truth_to_json(b.truth));
  EXPECT_TRUE(make_radar_frame(s, 2, false).raw.samples.empty());
}

TEST(Sequence, GenerationIndependentOfWorkerCount) {
  Scene s = three_pedestrian_scene(2, 5);
  s.radar = small_config();
  s.camera.width_px = 100;
  s.camera.height_px = 187;
  const auto collect = [&](int jobs) {
    std::mutex mu;
    std::map<int, std::size_t> radar_hash;
    std::map<int, std::vector<std::uint16_t>> camera;
    generate_sequence(
        s,
        [&](FrameBundle&& b) {
          std::size_t h = 0;
          for (const auto& x : b.raw.samples) h = h * 31 + std::hash<double>{}(x.real());
          std::lock_guard lock(mu);
          radar_hash[b.truth.index] = h;
        },
        [&](segmentation::PanopticFrame&& f, int j) {
          std::lock_guard lock(mu);
          camera[j] = f.instance_map.data();
        },
        jobs);
    return std::pair{radar_hash, camera};
  };
  const auto one = collect(1);
  const auto two = collect(3);
  EXPECT_EQ(one.first.size(), static_cast<std::size_t>(s.radar_frame_count()));
  EXPECT_EQ(one.second.size(), static_cast<std::size_t>(s.camera_frame_count()));
  EXPECT_EQ(one, two);
}

Scene nadir_scene(const Vector2d& where, double size) {
  Scene s;
  s.uav_pose.position = {0, 0, 25};
  s.uav_pose.pitch_deg = 90;
  SceneObject o;
  o.length_m = size;
  o.width_m = size;
  o.trajectory.start = where;
  o.scatterers = {{{0, 0}, 1.0}};
  s.objects.push_back(o);
  return s;
}

TEST(Render, NadirSquareCentredOnProjection) {
  const Vector2d where(3.2, -1.7);
  const Scene s = nadir_scene(where, 1.0);
  const auto f = render_aerial_labels(s, 0, s.uav_pose, s.camera);
  double sr = 0, sc = 0;
  int n = 0;
  for (int r = 0; r < f.rows(); ++r) {
    for (int c = 0; c < f.cols(); ++c) {
      if (f.instance_map(r, c) == 1) {
        EXPECT_EQ(f.class_map(r, c), static_cast<std::uint8_t>(ClassId::kPedestrians));
        sr += r;
        sc += c;
        ++n;
      }
    }
  }
  ASSERT_GT(n, 0);
  // Nadir, yaw 0: image up is world +x, image left is world +y.
  const auto& cam = s.camera;
  const double fx = (cam.width_px / 2.0) / std::tan(cam.fov_h_deg * kPi / 360);
  const double fy = (cam.height_px / 2.0) / std::tan(cam.fov_v_deg * kPi / 360);
  const double u = (cam.width_px - 1) / 2.0 - fx * where.y() / 25;
  const double v = (cam.height_px - 1) / 2.0 - fy * where.x() / 25;
  EXPECT_NEAR(sc / n, u, 0.5);
  EXPECT_NEAR(sr / n, v, 0.5);
  // about (fx / 25)^2 pixels per square metre
  EXPECT_NEAR(n, fx * fy / 625, 0.25 * fx * fy / 625);
}

TEST(Render, ObjectOutsideFrustumAbsent) {
  const Scene s = nadir_scene({200, 0}, 1.0);
  const auto f = render_aerial_labels(s, 0, s.uav_pose, s.camera);
  EXPECT_TRUE(segmentation::extract_instances(f).empty());
}

TEST(Render, InstanceCountEqualsObjectsInView) {
  Scene s = three_pedestrian_scene(20, 9);
  SceneObject far = s.objects[0];
  far.trajectory.start = {20, 200};
  far.trajectory.kind = TrajectoryKind::kLinear;
  far.trajectory.velocity = {0, 0};
  s.objects.push_back(far);
  const PixelGroundMap ground(s.uav_pose, s.camera);
  for (double t : {0.0, 3.3, 7.7, 15.2}) {
    const auto f = render_aerial_labels(s, t, ground);
    int in_view = 0;
    for (const auto& o : s.objects) {
      const Vector2d c = o.trajectory.position(t);
      const auto px = geometry::project_to_pixel({c.x(), c.y(), 0}, s.uav_pose, s.camera);
      if (px && px->x() >= 0 && px->y() >= 0 && px->x() <= s.camera.width_px - 1 && px->y() <= s.camera.height_px - 1) {
        ++in_view;
      }
    }
    EXPECT_EQ(static_cast<int>(segmentation::extract_instances(f).size()), in_view) << t;
    EXPECT_EQ(in_view, 3);
  }
}

TEST(Render, StuffUnderObjects) {
  const Scene s = three_pedestrian_scene(5, 1);
  const auto f = render_aerial_labels(s, 0, s.uav_pose, s.camera);
  std::map<int, int> hist;
  for (auto v : f.class_map.data()) hist[v]++;
  EXPECT_GT(hist[static_cast<int>(ClassId::kStreet)], 1000);
  EXPECT_GT(hist[static_cast<int>(ClassId::kEnvironment)], 1000);
  EXPECT_NO_THROW(f.validate());
}

TEST(Render, DistortionRoundTripWithinOnePixel) {
  Scene s = nadir_scene({4, 2}, 2.0);
  s.camera.fov_v_deg = 60;
  s.camera.fov_h_deg = 45;
  geometry::CameraModel distorted = s.camera;
  distorted.distortion.k1 = -0.2;
  const auto plain = render_aerial_labels(s, 0, s.uav_pose, s.camera);
  const auto warped = render_aerial_labels(s, 0, s.uav_pose, distorted);
  const auto near_label = [](const segmentation::PanopticFrame& f, const Vector2d& px) {
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        const int r = static_cast<int>(std::lround(px.y())) + dr, c = static_cast<int>(std::lround(px.x())) + dc;
        if (f.instance_map.in_bounds(r, c) && f.instance_map(r, c) == 1 &&
            (Vector2d(c, r) - px).norm() <= 1.0 + 0.5 * std::sqrt(2.0)) {
          return true;
        }
      }
    }
    return false;
  };
  int checked = 0;
  for (int r = 0; r < warped.rows(); ++r) {
    for (int c = 0; c < warped.cols(); ++c) {
      if (warped.instance_map(r, c) != 1) continue;
      const auto u = geometry::undistort_point({c, r}, distorted);
      ASSERT_TRUE(u.converged);
      ASSERT_TRUE(near_label(plain, u.pixel)) << r << "," << c;
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Render, GroundMapThrowsWhenSkyOnly) {
  RigPose up;
  up.position = {0, 0, 25};
  up.pitch_deg = -80;
  EXPECT_THROW(PixelGroundMap(up, geometry::CameraModel{}), GeometryError);
}

TEST(Render, PointInPolygon) {
  const std::vector<Vector2d> tri{{0, 0}, {4, 0}, {0, 4}};
  EXPECT_TRUE(point_in_polygon({1, 1}, tri));
  EXPECT_FALSE(point_in_polygon({3, 3}, tri));
  EXPECT_FALSE(point_in_polygon({-1, 1}, tri));
}

}  // namespace
}  // namespace rlforge::sim
