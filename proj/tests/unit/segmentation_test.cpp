// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <filesystem>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "rlforge/core/error.hpp"
#include "rlforge/core/rng.hpp"
#include "rlforge/segmentation/panoptic.hpp"
#include "rlforge/segmentation/panoptic_io.hpp"
#include "rlforge/segmentation/taxonomy.hpp"

namespace rlforge::segmentation {
namespace {

namespace fs = std::filesystem;

std::uint8_t u8(ClassId c) { return static_cast<std::uint8_t>(c); }

void paint(PanopticFrame& f, int r0, int c0, int h, int w, ClassId cls, std::uint16_t id) {
  for (int r = r0; r < r0 + h; ++r) {
    for (int c = c0; c < c0 + w; ++c) {
      f.class_map(r, c) = u8(cls);
      f.instance_map(r, c) = id;
    }
  }
}

PanopticFrame three_pedestrians() {
  PanopticFrame f(60, 80);
  paint(f, 0, 0, 60, 30, ClassId::kStreet, 0);
  paint(f, 10, 10, 6, 4, ClassId::kPedestrians, 1);
  paint(f, 30, 40, 6, 4, ClassId::kPedestrians, 2);
  paint(f, 45, 60, 6, 4, ClassId::kPedestrians, 3);
  f.timestamp = 1.25;
  f.scores = {{1, 0.9}, {2, 0.6}, {3, 0.75}};
  return f;
}

fs::path temp_dir(const char* name) {
  const auto dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Taxonomy, NamesRoundTrip) {
  for (int v = 0; v < kClassCount; ++v) {
    const auto c = static_cast<ClassId>(v);
    EXPECT_EQ(parse_class(class_name(c)), c);
  }
  EXPECT_EQ(parse_class("pedestrians"), ClassId::kPedestrians);
  EXPECT_THROW(parse_class("dogs"), ConfigError);
  int countable = 0;
  for (int v = 0; v < kClassCount; ++v) countable += is_countable(static_cast<ClassId>(v)) ? 1 : 0;
  EXPECT_EQ(countable, 8);
  EXPECT_FALSE(is_countable(ClassId::kStreet));
}

TEST(Panoptic, ValidateRejectsThingIdOnStuff) {
  PanopticFrame f(5, 5);
  f.class_map(2, 3) = u8(ClassId::kStreet);
  f.instance_map(2, 3) = 4;
  try {
    f.validate();
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("2"), std::string::npos);
    EXPECT_NE(msg.find("3"), std::string::npos);
  }
}

TEST(Panoptic, ValidateRejectsBadClassAndSplitInstance) {
  PanopticFrame f(4, 4);
  f.class_map(0, 0) = 40;
  EXPECT_THROW(f.validate(), DataError);
  PanopticFrame g(4, 4);
  paint(g, 0, 0, 1, 1, ClassId::kCars, 7);
  paint(g, 3, 3, 1, 1, ClassId::kTrucks, 7);
  EXPECT_THROW(g.validate(), DataError);
  PanopticFrame h(4, 4);
  h.instance_map = Grid2<std::uint16_t>(3, 4, 0);
  EXPECT_THROW(h.validate(), DataError);
}

TEST(Panoptic, EmptyFrameIsEnvironment) {
  PanopticFrame f(10, 12);
  EXPECT_NO_THROW(f.validate());
  EXPECT_TRUE(extract_instances(f).empty());
  for (auto v : f.class_map.data()) EXPECT_EQ(v, u8(ClassId::kEnvironment));
}

TEST(PanopticIo, SaveLoadIsBitExact) {
  const auto dir = temp_dir("rlforge_panoptic_io");
  PanopticFrame f = three_pedestrians();
  f.camera_pose.position = {5, 0, 25};
  f.camera_pose.pitch_deg = 60;
  f.instance_map(59, 79) = 0;
  paint(f, 0, 70, 2, 2, ClassId::kCars, 60000);  // exercises the high byte
  const auto paths = PanopticPaths::for_stem(dir / "frame");
  save_panoptic(f, paths);
  const PanopticFrame g = load_panoptic(paths);
  EXPECT_EQ(g.class_map, f.class_map);
  EXPECT_EQ(g.instance_map, f.instance_map);
  EXPECT_EQ(g.scores, f.scores);
  EXPECT_EQ(g.timestamp, f.timestamp);
  EXPECT_EQ(g.camera_pose.position, f.camera_pose.position);
  EXPECT_EQ(g.camera_pose.pitch_deg, f.camera_pose.pitch_deg);
  fs::remove_all(dir);
}

TEST(PanopticIo, MissingAndInvalidInputs) {
  const auto dir = temp_dir("rlforge_panoptic_bad");
  EXPECT_THROW(load_panoptic(PanopticPaths::for_stem(dir / "nope")), MissingInputError);
  Grid2<std::uint8_t> cls(3, 3, u8(ClassId::kStreet));
  Grid2<std::uint16_t> inst(3, 3, 0);
  inst(1, 1) = 9;
  write_png(dir / "x_class.png", cls);
  write_png(dir / "x_instance.png", inst);
  EXPECT_THROW(load_panoptic(dir / "x_class.png", dir / "x_instance.png"), DataError);
  // 16-bit file read as 8-bit
  EXPECT_THROW(read_png8(dir / "x_instance.png"), DataError);
  fs::remove_all(dir);
}

TEST(ExtractInstances, ThreePedestrians) {
  const auto masks = extract_instances(three_pedestrians());
  ASSERT_EQ(masks.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(masks[i].id, i + 1);
    EXPECT_EQ(masks[i].cls, ClassId::kPedestrians);
    EXPECT_EQ(masks[i].area(), 24u);
  }
  EXPECT_EQ(masks[1].bbox.row_min, 30);
  EXPECT_EQ(masks[1].bbox.col_max, 43);
  EXPECT_DOUBLE_EQ(masks[1].score, 0.6);
}

// Plain recursive-free flood fill over 8 neighbours.
int oracle_components(const Grid2<std::uint8_t>& cls, std::uint8_t value) {
  Grid2<int> seen(cls.rows(), cls.cols(), 0);
  int n = 0;
  for (int r = 0; r < cls.rows(); ++r) {
    for (int c = 0; c < cls.cols(); ++c) {
      if (cls(r, c) != value || seen(r, c)) continue;
      ++n;
      std::vector<std::pair<int, int>> stack{{r, c}};
      seen(r, c) = 1;
      while (!stack.empty()) {
        auto [y, x] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int yy = y + dy, xx = x + dx;
            if (cls.in_bounds(yy, xx) && cls(yy, xx) == value && !seen(yy, xx)) {
              seen(yy, xx) = 1;
              stack.push_back({yy, xx});
            }
          }
        }
      }
    }
  }
  return n;
}

TEST(ExtractInstances, AdjacentBlobsMergeWithoutInstanceMap) {
  PanopticFrame f(10, 10);
  f.has_instances = false;
  paint(f, 1, 1, 3, 3, ClassId::kCars, 0);
  paint(f, 1, 4, 3, 2, ClassId::kCars, 0);  // touches the first blob
  EXPECT_EQ(extract_instances(f).size(), 1u);
  EXPECT_EQ(oracle_components(f.class_map, u8(ClassId::kCars)), 1);
}

TEST(ExtractInstances, FallbackMatchesFloodFillOnRandomMaps) {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    PanopticFrame f(24, 24);
    f.has_instances = false;
    for (auto& v : f.class_map.data()) {
      const double u = rng.uniform();
      v = u < 0.25 ? u8(ClassId::kCars) : (u < 0.4 ? u8(ClassId::kPedestrians) : u8(ClassId::kStreet));
    }
    const auto masks = extract_instances(f);
    std::map<ClassId, int> counts;
    for (const auto& m : masks) counts[m.cls]++;
    EXPECT_EQ(counts[ClassId::kCars], oracle_components(f.class_map, u8(ClassId::kCars)));
    EXPECT_EQ(counts[ClassId::kPedestrians], oracle_components(f.class_map, u8(ClassId::kPedestrians)));
    // partition: disjoint and each pixel carries its mask's class
    Grid2<int> owner(24, 24, 0);
    for (const auto& m : masks) {
      m.for_each_pixel([&](int r, int c) {
        ASSERT_EQ(owner(r, c), 0);
        owner(r, c) = 1;
        ASSERT_EQ(f.class_map(r, c), u8(m.cls));
      });
    }
  }
}

TEST(ExtractInstances, PartitionPropertyWithInstanceIds) {
  Rng rng(6);
  PanopticFrame f(40, 40);
  for (std::uint16_t id = 1; id <= 12; ++id) {
    const auto cls = kCountableClasses[rng.uniform_int(0, 7)];
    paint(f, rng.uniform_int(0, 34), rng.uniform_int(0, 34), rng.uniform_int(1, 6), rng.uniform_int(1, 6), cls, id);
  }
  // Later paints may split an id across classes; relabel to keep the frame valid.
  std::map<std::uint16_t, std::uint8_t> cls_of;
  for (int r = 0; r < 40; ++r) {
    for (int c = 0; c < 40; ++c) {
      const auto id = f.instance_map(r, c);
      if (id == 0) continue;
      if (!cls_of.count(id)) cls_of[id] = f.class_map(r, c);
      f.class_map(r, c) = cls_of[id];
    }
  }
  ASSERT_NO_THROW(f.validate());
  const auto masks = extract_instances(f);
  std::set<std::pair<int, int>> all;
  std::size_t total = 0;
  for (const auto& m : masks) {
    m.for_each_pixel([&](int r, int c) {
      EXPECT_EQ(f.class_map(r, c), u8(m.cls));
      EXPECT_EQ(f.instance_map(r, c), m.id);
      all.insert({r, c});
    });
    total += m.area();
  }
  EXPECT_EQ(all.size(), total);
  std::size_t labelled = 0;
  for (auto v : f.instance_map.data()) labelled += v != 0 ? 1 : 0;
  EXPECT_EQ(labelled, total);
}

TEST(ClassStatistics, EmptyInput) {
  const ClassCounts c = class_statistics({});
  EXPECT_EQ(c.total, 0u);
  for (auto v : c.per_class) EXPECT_EQ(v, 0u);
}

TEST(ClassStatistics, OnePerCountableClass) {
  PanopticFrame f(20, 20);
  std::uint16_t id = 1;
  for (ClassId cls : kCountableClasses) {
    paint(f, id, id, 1, 1, cls, id);
    ++id;
  }
  const ClassCounts c = class_statistics({f});
  EXPECT_EQ(c.total, 8u);
  for (ClassId cls : kCountableClasses) EXPECT_EQ(c[cls], 1u);
}

TEST(ClassStatistics, KnownCompositionAndAdditivity) {
  std::vector<PanopticFrame> frames;
  for (int k = 0; k < 10; ++k) {
    PanopticFrame f = three_pedestrians();
    paint(f, 50, 5, 5, 10, ClassId::kCars, 4);
    paint(f, 50, 20, 5, 10, ClassId::kCars, 5);
    frames.push_back(f);
  }
  const ClassCounts all = class_statistics(frames);
  EXPECT_EQ(all[ClassId::kPedestrians], 30u);
  EXPECT_EQ(all[ClassId::kCars], 20u);
  EXPECT_EQ(all.total, 50u);
  ClassCounts split = class_statistics({frames.begin(), frames.begin() + 4});
  split += class_statistics({frames.begin() + 4, frames.end()});
  EXPECT_EQ(split, all);
}

TEST(Perturb, IdentityWithZeroParameters) {
  const PanopticFrame f = three_pedestrians();
  const PanopticFrame g = perturb_segmentation(f, {}, 99);
  EXPECT_EQ(g.class_map, f.class_map);
  EXPECT_EQ(g.instance_map, f.instance_map);
}

TEST(Perturb, DropAllLeavesNoInstances) {
  PerturbParams p;
  p.drop_rate = 1.0;
  const PanopticFrame g = perturb_segmentation(three_pedestrians(), p, 1);
  EXPECT_TRUE(extract_instances(g).empty());
  // stuff untouched, vacated pixels become Environment
  EXPECT_EQ(g.class_map(0, 0), u8(ClassId::kStreet));
  EXPECT_EQ(g.class_map(30, 40), u8(ClassId::kEnvironment));
}

TEST(Perturb, BitReproducibleWithFixedSeed) {
  PerturbParams p;
  p.drop_rate = 0.3;
  p.shift_sigma_px = 1.5;
  p.dilation_px = 1;
  const PanopticFrame f = three_pedestrians();
  const auto a = perturb_segmentation(f, p, 42);
  const auto b = perturb_segmentation(f, p, 42);
  EXPECT_EQ(a.class_map, b.class_map);
  EXPECT_EQ(a.instance_map, b.instance_map);
}

TEST(Perturb, DilationAndErosionChangeArea) {
  PerturbParams grow;
  grow.dilation_px = 1;
  const auto g = extract_instances(perturb_segmentation(three_pedestrians(), grow, 1));
  EXPECT_EQ(g[0].area(), 8u * 6u);
  PerturbParams shrink;
  shrink.dilation_px = -1;
  const auto s = extract_instances(perturb_segmentation(three_pedestrians(), shrink, 1));
  EXPECT_EQ(s[0].area(), 4u * 2u);
}

TEST(Perturb, InvalidParametersThrow) {
  PerturbParams p;
  p.drop_rate = 1.5;
  EXPECT_THROW(p.validate(), ConfigError);
  p.drop_rate = 0.1;
  p.shift_sigma_px = -1;
  EXPECT_THROW(p.validate(), ConfigError);
}

// P(X <= k) for X ~ Binomial(n, p), summed in log space.
double binom_cdf(int k, int n, double p) {
  double s = 0;
  for (int i = 0; i <= k; ++i) {
    s += std::exp(std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) + i * std::log(p) +
                  (n - i) * std::log1p(-p));
  }
  return s;
}

TEST(Perturb, SurvivorsWithinBinomialInterval) {
  // 719 instances across a batch, drop rate 79/719.
  const int n = 719;
  const double keep = 640.0 / 719.0;
  int lo = 0, hi = n;
  while (binom_cdf(lo, n, keep) < 0.005) ++lo;
  while (binom_cdf(hi - 1, n, keep) >= 0.995) --hi;
  PerturbParams p;
  p.drop_rate = 79.0 / 719.0;
  int survivors = 0, total = 0;
  for (int k = 0; total < n; ++k) {
    PanopticFrame f = three_pedestrians();
    f.timestamp = 0.1 * k;
    const int here = std::min(3, n - total);
    if (here < 3) {
      for (auto& v : f.instance_map.data()) {
        if (v > here) v = 0;
      }
      for (int r = 0; r < f.rows(); ++r) {
        for (int c = 0; c < f.cols(); ++c) {
          if (f.class_map(r, c) == u8(ClassId::kPedestrians) && f.instance_map(r, c) == 0) {
            f.class_map(r, c) = u8(ClassId::kEnvironment);
          }
        }
      }
    }
    total += here;
    survivors += static_cast<int>(extract_instances(perturb_segmentation(f, p, 2023)).size());
  }
  EXPECT_EQ(total, n);
  EXPECT_GE(survivors, lo);
  EXPECT_LE(survivors, hi);
  EXPECT_LE(lo, 640);
  EXPECT_GE(hi, 640);
}

}  // namespace
}  // namespace rlforge::segmentation
