// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <map>
#include <numbers>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "rlforge/core/error.hpp"
#include "rlforge/core/rng.hpp"
#include "rlforge/geometry/camera_json.hpp"
#include "rlforge/geometry/camera_model.hpp"
#include "rlforge/geometry/footprint.hpp"
#include "rlforge/geometry/homography.hpp"
#include "rlforge/geometry/warp.hpp"

namespace rlforge::geometry {
namespace {

using Eigen::Matrix3d;
using Eigen::Vector2d;
using Eigen::Vector3d;
constexpr double kPi = std::numbers::pi;

double rad(double deg) { return deg * kPi / 180; }

RigPose pose_at(double x, double y, double z, double yaw, double pitch, double roll = 0) {
  RigPose p;
  p.position = {x, y, z};
  p.yaw_deg = yaw;
  p.pitch_deg = pitch;
  p.roll_deg = roll;
  return p;
}

// Written out from the stated conventions: R = Rz(yaw) Ry(pitch) Rx(roll),
// camera x right = -body y, camera y down = -body z, optical axis = body x.
Vector3d oracle_ray(const RigPose& p, const CameraModel& m, const Vector2d& px) {
  const double fx = (m.width_px / 2.0) / std::tan(rad(m.fov_h_deg) / 2);
  const double fy = (m.height_px / 2.0) / std::tan(rad(m.fov_v_deg) / 2);
  const Vector2d c((m.width_px - 1) / 2.0, (m.height_px - 1) / 2.0);
  const double xc = (px.x() - c.x()) / fx, yc = (px.y() - c.y()) / fy;
  const Vector3d body(1.0, -xc, -yc);
  const Matrix3d r = (Eigen::AngleAxisd(rad(p.yaw_deg), Vector3d::UnitZ()) *
                      Eigen::AngleAxisd(rad(p.pitch_deg), Vector3d::UnitY()) *
                      Eigen::AngleAxisd(rad(p.roll_deg), Vector3d::UnitX()))
                         .toRotationMatrix();
  return r * body;
}

Vector2d oracle_ground(const RigPose& p, const CameraModel& m, const Vector2d& px) {
  const Vector3d d = oracle_ray(p, m, px);
  const double t = -p.position.z() / d.z();
  return (p.position + t * d).head<2>();
}

TEST(Distortion, ZeroCoefficientsAreIdentity) {
  const CameraModel m;
  for (const Vector2d px : {Vector2d(0, 0), Vector2d(123.4, 567.8), Vector2d(399, 747)}) {
    EXPECT_LT((m.distort_pixel(px) - px).norm(), 1e-12);
    const auto u = undistort_point(px, m);
    EXPECT_TRUE(u.converged);
    EXPECT_LT((u.pixel - px).norm(), 1e-12);
  }
}

TEST(Distortion, PrincipalPointIsFixed) {
  CameraModel m;
  m.distortion = {0.3, -0.1, 0.02, 0.001, -0.002};
  EXPECT_LT((m.distort_pixel(m.center()) - m.center()).norm(), 1e-12);
  EXPECT_LT((undistort_point(m.center(), m).pixel - m.center()).norm(), 1e-12);
}

TEST(Distortion, RoundTripAtNormalizedRadiusHalf) {
  CameraModel m;
  m.distortion.k1 = -0.2;
  const Vector2d n(0.3, 0.4);  // |n| = 0.5
  const Vector2d p = m.normalized_to_pixel(n);
  const auto u = undistort_point(p, m);
  ASSERT_TRUE(u.converged);
  EXPECT_LT((m.distort_pixel(u.pixel) - p).norm(), 1e-9);
}

TEST(Distortion, ApplyMatchesBrownConrady) {
  Distortion d{0.1, -0.05, 0.01, 0.002, -0.003};
  const Vector2d p(0.4, -0.25);
  const double r2 = p.squaredNorm();
  const double radial = 1 + d.k1 * r2 + d.k2 * r2 * r2 + d.k3 * r2 * r2 * r2;
  const Vector2d expected(p.x() * radial + 2 * d.p1 * p.x() * p.y() + d.p2 * (r2 + 2 * p.x() * p.x()),
                          p.y() * radial + d.p1 * (r2 + 2 * p.y() * p.y()) + 2 * d.p2 * p.x() * p.y());
  EXPECT_LT((d.apply(p) - expected).norm(), 1e-15);
  // Jacobian against central differences.
  const double h = 1e-6;
  Eigen::Matrix2d num;
  for (int k = 0; k < 2; ++k) {
    Vector2d e = Vector2d::Zero();
    e[k] = h;
    num.col(k) = (d.apply(p + e) - d.apply(p - e)) / (2 * h);
  }
  EXPECT_LT((d.jacobian(p) - num).norm(), 1e-8);
}

// Camera whose FoV follows from the lens and sensor (about 62 x 49 deg).
CameraModel sensor_native_camera() {
  CameraModel m;
  m.fov_h_deg = 2 * std::atan(m.sensor_width_m / (2 * m.focal_length_m)) * 180 / kPi;
  m.fov_v_deg = 2 * std::atan(m.sensor_height_m / (2 * m.focal_length_m)) * 180 / kPi;
  return m;
}

std::vector<Vector2d> sensor_grid(const CameraModel& m) {
  const double w = m.width_px, h = m.height_px;
  std::vector<Vector2d> pts;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) pts.emplace_back(0.05 * w + 0.9 * w * i / 20.0, 0.05 * h + 0.9 * h * j / 20.0);
  }
  return pts;
}

void expect_round_trips(const CameraModel& m) {
  const auto pts = sensor_grid(m);
  const auto results = undistort_points(pts, m);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ASSERT_TRUE(results[i].converged) << pts[i].transpose();
    ASSERT_LT((m.distort_pixel(results[i].pixel) - pts[i]).norm(), 1e-9) << pts[i].transpose();
    const auto back = undistort_point(m.distort_pixel(pts[i]), m);
    ASSERT_TRUE(back.converged);
    ASSERT_LT((back.pixel - pts[i]).norm(), 1e-9) << pts[i].transpose();
  }
}

class UndistortGrid : public ::testing::TestWithParam<double> {};

TEST_P(UndistortGrid, RoundTripOverNinetyPercentOfSensor) {
  CameraModel m = sensor_native_camera();
  m.distortion.k1 = GetParam();
  expect_round_trips(m);
}

INSTANTIATE_TEST_SUITE_P(K1, UndistortGrid, ::testing::Values(-0.3, -0.2, -0.1, 0.1, 0.2, 0.3));

TEST(Distortion, WideCameraRoundTripsForBarrelFreeK1) {
  // With k1 < 0 the radial map folds at r = 1/sqrt(3|k1|), inside the
  // 115 x 80 deg image, so only k1 >= 0 is invertible over that sensor.
  for (double k1 : {0.0, 0.1, 0.2, 0.3}) {
    CameraModel m;
    m.distortion.k1 = k1;
    expect_round_trips(m);
  }
}

TEST(CameraModel, ValidateAndConsistency) {
  CameraModel m;
  EXPECT_NO_THROW(m.validate());
  m.fov_v_deg = 180;
  EXPECT_THROW(m.validate(), ConfigError);
  m = CameraModel{};
  m.width_px = 0;
  EXPECT_THROW(m.validate(), ConfigError);
  m = CameraModel{};
  m.fov_h_deg = 10;
  EXPECT_FALSE(m.consistency_warnings().empty());
}

TEST(CameraModel, JsonRoundTrip) {
  CameraModel m;
  m.principal_point = Vector2d(200.5, 370.25);
  m.distortion = {0.1, 0.01, 0.0, 0.001, 0.0};
  const CameraModel n = camera_model_from_json(camera_model_to_json(m));
  EXPECT_EQ(camera_model_to_json(n), camera_model_to_json(m));
  EXPECT_THROW(camera_model_from_json(Json{{"focal_mm", 3}}), ConfigError);
}

TEST(Projection, PixelRayMatchesOracle) {
  const CameraModel m;
  const RigPose p = pose_at(5, -3, 25, 30, 60, 2);
  for (const Vector2d px : {Vector2d(0, 0), Vector2d(200, 100), Vector2d(399.5, 747.5)}) {
    const Vector3d a = pixel_ray(px, p, m).normalized();
    const Vector3d b = oracle_ray(p, m, px).normalized();
    EXPECT_LT((a - b).norm(), 1e-12);
  }
}

TEST(Projection, ProjectInvertsRay) {
  CameraModel m;
  m.distortion.k1 = 0.1;
  const RigPose p = pose_at(0, 0, 25, 0, 60);
  for (const Vector2d px : {Vector2d(50, 80), Vector2d(200, 400), Vector2d(350, 700)}) {
    const Vector2d und = undistort_point(px, m).pixel;
    const auto g = intersect_ground(p.position, pixel_ray(und, p, m));
    ASSERT_TRUE(g);
    const auto back = project_to_pixel({g->x(), g->y(), 0}, p, m);
    ASSERT_TRUE(back);
    EXPECT_LT((*back - px).norm(), 1e-6);
  }
  EXPECT_FALSE(project_to_pixel({-100, 0, 30}, pose_at(0, 0, 25, 0, 0), m));
}

TEST(Footprint, ClosedFormScalesWithAltitude) {
  const CameraModel m;
  const auto a = closed_form_extents(10, m);
  const auto b = closed_form_extents(20, m);
  EXPECT_NEAR(b.top, 2 * a.top, 1e-12);
  EXPECT_NEAR(b.bottom, 2 * a.bottom, 1e-12);
  EXPECT_NEAR(b.left, 2 * a.left, 1e-12);
  EXPECT_NEAR(b.right, 2 * a.right, 1e-12);
  EXPECT_NEAR(a.top, -a.bottom, 1e-12);
  EXPECT_NEAR(a.left, -a.right, 1e-12);
}

TEST(Footprint, ClosedFormValuesAtTwentyFiveMetres) {
  const CameraModel m;
  const auto e = closed_form_extents(25, m);
  EXPECT_NEAR(e.top, 25 * std::tan(rad(57.5) + std::atan(2.76 / (2 * 3.04))), 1e-9);
  EXPECT_NEAR(e.left, 25 * std::tan(rad(40) + std::atan(3.68 / (2 * 3.04))), 1e-9);
  CameraModel steep = m;
  steep.fov_v_deg = 179;
  EXPECT_THROW(closed_form_extents(25, steep), GeometryError);
}

TEST(Footprint, ClosedFormAgreesWithRayCast) {
  const CameraModel m;
  const CameraModel eq = composite_angle_equivalent(m);
  for (double z : {5.0, 25.0, 60.0}) {
    const GroundQuad cf = ground_quad_closed_form(z, m);
    const RigPose p = pose_at(0, 0, z, 0, 90);
    const GroundQuad rc = ray_cast_footprint(p, eq);
    EXPECT_LT((cf.top_left - rc.top_left).norm(), 1e-6);
    EXPECT_LT((cf.top_right - rc.top_right).norm(), 1e-6);
    EXPECT_LT((cf.bottom_left - rc.bottom_left).norm(), 1e-6);
    EXPECT_LT((cf.bottom_right - rc.bottom_right).norm(), 1e-6);
    EXPECT_LT((cf.center - rc.center).norm(), 1e-6);
    // independent corner intersection on the pixel edges
    const Vector2d tl = oracle_ground(p, eq, {-0.5, -0.5});
    EXPECT_LT((cf.top_left - tl).norm(), 1e-6);
  }
}

TEST(Footprint, NadirQuadIsSymmetric) {
  const CameraModel m;
  const GroundQuad q = ray_cast_footprint(pose_at(3, 4, 25, 0, 90), m);
  EXPECT_LT((q.center - Vector2d(3, 4)).norm(), 1e-9);
  EXPECT_NEAR(q.top_left.x() - 3, -(q.bottom_left.x() - 3), 1e-9);
  EXPECT_NEAR(q.top_left.y() - 4, -(q.top_right.y() - 4), 1e-9);
  EXPECT_TRUE(q.is_simple());
  EXPECT_TRUE(q.contains({3, 4}));
  EXPECT_FALSE(q.contains({300, 4}));
}

TEST(Footprint, TiltedQuadFarCornersFarther) {
  const CameraModel m;
  const RigPose p = pose_at(5, 0, 25, 0, 60);
  const GroundQuad q = ray_cast_footprint(p, m);
  const Vector2d track(5, 0);
  EXPECT_GT((q.top_left - track).norm(), (q.bottom_left - track).norm());
  EXPECT_GT((q.top_right - track).norm(), (q.bottom_right - track).norm());
  const auto corners = image_corners(m);
  EXPECT_LT((q.top_left - oracle_ground(p, m, corners[0])).norm(), 1e-6);
  EXPECT_LT((q.top_right - oracle_ground(p, m, corners[1])).norm(), 1e-6);
  EXPECT_LT((q.bottom_left - oracle_ground(p, m, corners[2])).norm(), 1e-6);
  EXPECT_LT((q.bottom_right - oracle_ground(p, m, corners[3])).norm(), 1e-6);
}

TEST(Footprint, YawRotatesQuadRigidly) {
  const CameraModel m;
  const GroundQuad a = ray_cast_footprint(pose_at(5, 2, 25, 0, 60), m);
  const GroundQuad b = ray_cast_footprint(pose_at(5, 2, 25, 37, 60), m);
  const Eigen::Rotation2Dd r(rad(37));
  const Vector2d c(5, 2);
  EXPECT_LT((r * (a.top_left - c) + c - b.top_left).norm(), 1e-9);
  EXPECT_LT((r * (a.bottom_right - c) + c - b.bottom_right).norm(), 1e-9);
  EXPECT_LT((r * (a.center - c) + c - b.center).norm(), 1e-9);
}

TEST(Footprint, HorizonRaysThrow) {
  EXPECT_THROW(ray_cast_footprint(pose_at(0, 0, 25, 0, 10), CameraModel{}), GeometryError);
}

TEST(Homography, UnitSquareToItselfIsIdentity) {
  std::vector<Correspondence> c;
  for (const Vector2d p : {Vector2d(0, 0), Vector2d(1, 0), Vector2d(1, 1), Vector2d(0, 1)}) c.push_back({p, p});
  const Homography h = homography_from_correspondences(c);
  EXPECT_LT((h.matrix() - Matrix3d::Identity()).norm(), 1e-12);
}

TEST(Homography, ShiftedCornersGiveTranslation) {
  std::vector<Correspondence> c;
  for (const Vector2d p : {Vector2d(0, 0), Vector2d(1, 0), Vector2d(1, 1), Vector2d(0, 1)}) {
    c.push_back({p, p + Vector2d(1, 2)});
  }
  const Homography h = homography_from_correspondences(c);
  EXPECT_LT((h.matrix() - Homography::translation(1, 2).matrix()).norm(), 1e-12);
}

TEST(Homography, RecoversRandomProjectiveMap) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix3d m;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m(i, j) = rng.uniform(-1, 1);
    }
    m(0, 0) += 3;
    m(1, 1) += 3;
    m(2, 2) = 1;
    m(2, 0) *= 0.01;
    m(2, 1) *= 0.01;
    const Homography truth(m);
    std::vector<Correspondence> c;
    for (const Vector2d p : {Vector2d(-3, -2), Vector2d(4, -1), Vector2d(5, 6), Vector2d(-2, 3)}) {
      c.push_back({p, *truth.apply(p)});
    }
    const Homography h = homography_from_correspondences(c);
    const double rel = (h.matrix() - truth.matrix()).cwiseAbs().maxCoeff() / truth.matrix().cwiseAbs().maxCoeff();
    ASSERT_LT(rel, 1e-9);
    for (const auto& [src, dst] : c) ASSERT_LT((*h.apply(src) - dst).norm(), 1e-9);
  }
}

TEST(Homography, DegenerateInputsThrow) {
  std::vector<Correspondence> c{{{0, 0}, {0, 0}}, {{1, 0}, {1, 0}}, {{2, 0}, {2, 0}}};
  EXPECT_THROW(homography_from_correspondences(c), GeometryError);
  c.push_back({{0, 1}, {0, 1}});  // three collinear sources
  EXPECT_THROW(homography_from_correspondences(c), GeometryError);
  EXPECT_THROW(Homography(Matrix3d::Zero()), GeometryError);
}

TEST(Homography, ComposeAndInverse) {
  const Homography a(Matrix3d{{1.2, 0.1, 3}, {-0.2, 0.9, -1}, {0.001, 0.002, 1}});
  const Homography b = Homography::translation(-4, 5);
  const Vector2d p(7, -3);
  EXPECT_LT((*b.compose(a).apply(p) - *b.apply(*a.apply(p))).norm(), 1e-12);
  EXPECT_LT((*a.inverse().apply(*a.apply(p)) - p).norm(), 1e-12);
}

TEST(Homography, CameraHomographyMatchesRayCastInterior) {
  const CameraModel m;
  const RigPose p = pose_at(5, 0, 25, 12, 60, 1);
  const Homography h = camera_homography(p, m);
  for (const Vector2d px : {Vector2d(0, 0), Vector2d(199.5, 373.5), Vector2d(10, 700), Vector2d(390, 50)}) {
    EXPECT_LT((*h.apply(px) - oracle_ground(p, m, px)).norm(), 1e-6);
  }
}

Grid2<std::uint8_t> label_image(int rows, int cols) {
  Grid2<std::uint8_t> img(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) img(r, c) = static_cast<std::uint8_t>((r * 7 + c * 3) % 12);
  }
  return img;
}

WorldGridSpec pixel_grid(int rows, int cols, Vector2d origin = {-0.5, -0.5}) {
  WorldGridSpec g;
  g.origin = origin;
  g.cell_size = 1;
  g.nx = cols;
  g.ny = rows;
  return g;
}

TEST(Warp, IdentityOnCongruentGrid) {
  const auto img = label_image(30, 20);
  EXPECT_EQ(warp_labels(img, Homography(), pixel_grid(30, 20), 255), img);
}

TEST(Warp, OutsideCellsAreVoid) {
  const auto img = label_image(10, 10);
  const auto out = warp_labels(img, Homography(), pixel_grid(10, 10, {4.5, -0.5}), 255);
  for (int r = 0; r < 10; ++r) {
    for (int c = 0; c < 10; ++c) EXPECT_EQ(out(r, c), c < 5 ? img(r, c + 5) : 255);
  }
}

TEST(Warp, TranslationPreservesClassHistogram) {
  const auto img = label_image(25, 40);
  const auto out = warp_labels(img, Homography::translation(13, -7), pixel_grid(25, 40, {12.5, -7.5}), 255);
  std::map<int, int> a, b;
  for (auto v : img.data()) a[v]++;
  for (auto v : out.data()) b[v]++;
  EXPECT_EQ(a, b);
}

TEST(Warp, CompositionOfLatticeMapsIsExact) {
  const auto img = label_image(30, 30);
  const Homography h1 = Homography::translation(3, -2);
  const Homography h2(Matrix3d{{0, -1, 40}, {1, 0, 5}, {0, 0, 1}});  // 90 deg turn + shift
  // Intermediate grid is congruent with a pixel lattice so it can be warped again.
  const WorldGridSpec g1 = pixel_grid(40, 40, {-0.5, -0.5});
  const WorldGridSpec g2 = pixel_grid(50, 50, {-5.5, -5.5});
  const auto once = warp_labels(warp_labels(img, h1, g1, 255), h2, g2, 255);
  const auto direct = warp_labels(img, h2.compose(h1), g2, 255);
  int compared = 0;
  for (std::size_t i = 0; i < once.size(); ++i) {
    if (once.data()[i] == 255 || direct.data()[i] == 255) continue;
    ASSERT_EQ(once.data()[i], direct.data()[i]);
    ++compared;
  }
  EXPECT_GT(compared, 500);
}

TEST(Warp, BilinearCompositionWithinTolerance) {
  Grid2<double> img(60, 60);
  for (int r = 0; r < 60; ++r) {
    for (int c = 0; c < 60; ++c) img(r, c) = 0.3 * r - 1.1 * c + 4;
  }
  // h1 affine keeps the intermediate raster linear, so resampling it is exact.
  const Homography h1(Matrix3d{{1.1, 0.05, 2}, {-0.03, 0.95, 1}, {0, 0, 1}});
  const Homography h2(Matrix3d{{0.9, -0.1, 1}, {0.1, 1.05, -2}, {-0.0003, 0.0004, 1}});
  const WorldGridSpec g1 = pixel_grid(80, 80, {-0.5, -0.5});
  WorldGridSpec g2 = pixel_grid(80, 80, {-5.25, -5.25});
  g2.cell_size = 0.9;
  const auto once = warp_intensity(warp_intensity(img, h1, g1), h2, g2);
  const auto direct = warp_intensity(img, h2.compose(h1), g2);
  int compared = 0;
  for (std::size_t i = 0; i < once.size(); ++i) {
    if (std::isnan(once.data()[i]) || std::isnan(direct.data()[i])) continue;
    ASSERT_NEAR(once.data()[i], direct.data()[i], 1e-6);
    ++compared;
  }
  EXPECT_GT(compared, 1000);
}

TEST(Warp, GroundPointInsideMaskKeepsClass) {
  const CameraModel m;
  const RigPose p = pose_at(5, 0, 25, 0, 60);
  const Vector2d target(30, 1.5);
  Grid2<std::uint8_t> img(m.height_px, m.width_px, 1);
  const auto px = project_to_pixel({target.x(), target.y(), 0}, p, m);
  ASSERT_TRUE(px);
  const int u = static_cast<int>(std::lround(px->x())), v = static_cast<int>(std::lround(px->y()));
  for (int r = v - 3; r <= v + 3; ++r) {
    for (int c = u - 3; c <= u + 3; ++c) img(r, c) = 11;
  }
  WorldGridSpec g;
  g.origin = {20, -10};
  g.cell_size = 0.1;
  g.nx = 200;
  g.ny = 200;
  const auto out = warp_labels(img, camera_homography(p, m), g, 255);
  const auto cell = g.cell_of(target);
  ASSERT_TRUE(cell);
  EXPECT_EQ(out(cell->iy, cell->ix), 11);
  EXPECT_EQ(out(0, 0), 1);
}

TEST(Warp, DistortedImageWarpsThroughObservedModel) {
  CameraModel m;
  m.distortion.k1 = -0.15;
  const RigPose p = pose_at(5, 0, 25, 0, 60);
  const Vector2d target(28, -2);
  Grid2<std::uint8_t> img(m.height_px, m.width_px, 1);
  const auto px = project_to_pixel({target.x(), target.y(), 0}, p, m);  // observed pixel
  ASSERT_TRUE(px);
  const int u = static_cast<int>(std::lround(px->x())), v = static_cast<int>(std::lround(px->y()));
  for (int r = v - 2; r <= v + 2; ++r) {
    for (int c = u - 2; c <= u + 2; ++c) img(r, c) = 11;
  }
  WorldGridSpec g;
  g.origin = {20, -10};
  g.cell_size = 0.1;
  g.nx = 200;
  g.ny = 200;
  const auto cell = *g.cell_of(target);
  EXPECT_EQ(warp_labels(img, camera_homography(p, m), g, 255, &m)(cell.iy, cell.ix), 11);
}

}  // namespace
}  // namespace rlforge::geometry
