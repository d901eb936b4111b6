// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cmath>
#include <numeric>
#include <set>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "rlforge/core/error.hpp"
#include "rlforge/core/json_io.hpp"
#include "rlforge/core/parallel.hpp"
#include "rlforge/core/pose.hpp"
#include "rlforge/core/rng.hpp"
#include "rlforge/core/world_grid.hpp"

namespace rlforge {
namespace {

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, DerivedSeedsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t k = 0; k < 1000; ++k) seen.insert(derive_seed(std::uint64_t{7}, k));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(derive_seed(std::uint64_t{7}, 0.5), derive_seed(std::uint64_t{7}, 0.5000001));
  EXPECT_NE(derive_seed(std::uint64_t{7}, 0.5), derive_seed(std::uint64_t{8}, 0.5));
}

TEST(Rng, UniformAndNormalMoments) {
  Rng rng(3);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
  }
  EXPECT_NEAR(su / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sn / n, 0.0, 4 / std::sqrt(n));
  EXPECT_NEAR(sn2 / n, 1.0, 4 * std::sqrt(2.0 / n));
}

TEST(Rng, UniformIntCoversInclusiveRange) {
  Rng rng(11);
  std::set<int> seen;
  for (int i = 0; i < 1000; ++i) {
    const int v = rng.uniform_int(-2, 3);
    ASSERT_GE(v, -2);
    ASSERT_LE(v, 3);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 6u);
}

TEST(Pose, PitchNinetyLooksDown) {
  RigPose p;
  p.pitch_deg = 90;
  const Eigen::Vector3d forward = p.world_from_body() * Eigen::Vector3d::UnitX();
  EXPECT_NEAR(forward.z(), -1.0, 1e-12);
}

TEST(Pose, YawRotatesBodyToWorld) {
  RigPose p;
  p.position = {3, 4, 0};
  p.yaw_deg = 90;
  const Eigen::Vector2d w = p.to_world_2d({1, 0});
  EXPECT_NEAR(w.x(), 3, 1e-12);
  EXPECT_NEAR(w.y(), 5, 1e-12);
  const Eigen::Vector2d b = p.to_body_2d(w);
  EXPECT_NEAR(b.x(), 1, 1e-12);
  EXPECT_NEAR(b.y(), 0, 1e-12);
}

TEST(Pose, RotationIsOrthonormal) {
  RigPose p;
  p.yaw_deg = 31;
  p.pitch_deg = -12;
  p.roll_deg = 7;
  const Eigen::Matrix3d r = p.world_from_body();
  EXPECT_LT((r.transpose() * r - Eigen::Matrix3d::Identity()).norm(), 1e-12);
  EXPECT_NEAR(r.determinant(), 1.0, 1e-12);
}

TEST(JsonIo, PoseRoundTrip) {
  RigPose p;
  p.position = {1.5, -2, 25};
  p.yaw_deg = 10;
  p.pitch_deg = 60;
  p.roll_deg = -1;
  const RigPose q = pose_from_json(pose_to_json(p));
  EXPECT_EQ(q.position, p.position);
  EXPECT_EQ(q.yaw_deg, p.yaw_deg);
  EXPECT_EQ(q.pitch_deg, p.pitch_deg);
  EXPECT_EQ(q.roll_deg, p.roll_deg);
}

TEST(JsonIo, CheckKeysRejectsUnknown) {
  EXPECT_NO_THROW(check_keys(Json{{"a", 1}}, {"a", "b"}, "s"));
  EXPECT_THROW(check_keys(Json{{"c", 1}}, {"a", "b"}, "s"), ConfigError);
  EXPECT_THROW(check_keys(Json::array(), {"a"}, "s"), ConfigError);
}

TEST(JsonIo, MissingFileIsMissingInput) {
  EXPECT_THROW(read_json_file("/nonexistent/rlforge.json"), MissingInputError);
}

TEST(JsonIo, TypedGetNamesKey) {
  const Json j{{"n", "x"}};
  EXPECT_THROW(json_get(j, "n", 1), ConfigError);
  EXPECT_EQ(json_get(j, "m", 5), 5);
}

TEST(WorldGrid, CellOfMatchesCellCenter) {
  WorldGridSpec g;
  g.origin = {-4, 2};
  g.cell_size = 0.25;
  g.nx = 40;
  g.ny = 20;
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const auto c = g.cell_of(g.cell_center(ix, iy));
      ASSERT_TRUE(c);
      ASSERT_EQ(c->ix, ix);
      ASSERT_EQ(c->iy, iy);
    }
  }
  EXPECT_FALSE(g.cell_of({g.x_max(), 3}));
  EXPECT_FALSE(g.cell_of({-4.0001, 3}));
  EXPECT_TRUE(g.cell_of({-4.0, 2.0}));
}

TEST(Parallel, VisitsEachIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(Parallel, RethrowsTaskFailure) {
  EXPECT_THROW(parallel_for(100, 3,
                            [](std::size_t i) {
                              if (i == 17) throw DataError("boom");
                            }),
               DataError);
}

}  // namespace
}  // namespace rlforge
