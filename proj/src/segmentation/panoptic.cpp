// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/segmentation/panoptic.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "rlforge/core/error.hpp"
#include "rlforge/core/rng.hpp"

namespace rlforge::segmentation {

double PanopticFrame::score(std::uint16_t id) const {
  const auto it = scores.find(id);
  return it == scores.end() ? 1.0 : it->second;
}

void PanopticFrame::validate() const {
  if (has_instances && (instance_map.rows() != class_map.rows() || instance_map.cols() != class_map.cols())) {
    throw DataError(fmt::format("class map is {}x{} but instance map is {}x{}", class_map.rows(), class_map.cols(),
                                instance_map.rows(), instance_map.cols()));
  }
  std::map<std::uint16_t, std::uint8_t> owner;
  for (int r = 0; r < rows(); ++r) {
    for (int c = 0; c < cols(); ++c) {
      const std::uint8_t v = class_map(r, c);
      if (!is_valid_class_value(v)) {
        throw DataError(fmt::format("unknown class value {} at pixel (row {}, col {})", v, r, c));
      }
      if (!has_instances) continue;
      const std::uint16_t id = instance_map(r, c);
      if (id == 0) continue;
      if (!is_countable(static_cast<ClassId>(v))) {
        throw DataError(fmt::format("instance {} on {} pixel (row {}, col {})", id,
                                    class_name(static_cast<ClassId>(v)), r, c));
      }
      const auto [it, inserted] = owner.emplace(id, v);
      if (!inserted && it->second != v) {
        throw DataError(fmt::format("instance {} spans classes {} and {} at pixel (row {}, col {})", id,
                                    class_name(static_cast<ClassId>(it->second)), class_name(static_cast<ClassId>(v)),
                                    r, c));
      }
    }
  }
  for (const auto& [id, s] : scores) {
    if (!(s >= 0.0 && s <= 1.0)) throw DataError(fmt::format("instance {} has score {} outside [0, 1]", id, s));
  }
}

std::size_t InstanceMask::area() const {
  std::size_t n = 0;
  for (const Run& r : runs) n += static_cast<std::size_t>(r.length);
  return n;
}

bool InstanceMask::contains(int row, int col) const {
  if (row < bbox.row_min || row > bbox.row_max || col < bbox.col_min || col > bbox.col_max) return false;
  auto it = std::lower_bound(runs.begin(), runs.end(), row,
                             [](const Run& run, int r) { return run.row < r; });
  for (; it != runs.end() && it->row == row; ++it) {
    if (col >= it->col && col < it->col + it->length) return true;
  }
  return false;
}

void InstanceMask::push_pixel(int row, int col) {
  if (!runs.empty() && runs.back().row == row && runs.back().col + runs.back().length == col) {
    ++runs.back().length;
  } else {
    runs.push_back({row, col, 1});
  }
  if (bbox.row_max < bbox.row_min) {
    bbox = {row, row, col, col};
  } else {
    bbox.row_min = std::min(bbox.row_min, row);
    bbox.row_max = std::max(bbox.row_max, row);
    bbox.col_min = std::min(bbox.col_min, col);
    bbox.col_max = std::max(bbox.col_max, col);
  }
}

namespace {

// 8-connected components of each countable class; labels in row-major order
// of each component's first pixel.
Grid2<std::uint16_t> connected_components(const Grid2<std::uint8_t>& classes) {
  Grid2<std::uint16_t> labels(classes.rows(), classes.cols(), 0);
  std::uint16_t next = 0;
  std::vector<std::pair<int, int>> stack;
  for (int r = 0; r < classes.rows(); ++r) {
    for (int c = 0; c < classes.cols(); ++c) {
      const std::uint8_t cls = classes(r, c);
      if (labels(r, c) != 0 || !is_countable(static_cast<ClassId>(cls))) continue;
      if (next == 0xffff) throw DataError("more than 65535 connected components in one frame");
      labels(r, c) = ++next;
      stack.assign(1, {r, c});
      while (!stack.empty()) {
        const auto [pr, pc] = stack.back();
        stack.pop_back();
        for (int dr = -1; dr <= 1; ++dr) {
          for (int dc = -1; dc <= 1; ++dc) {
            const int nr = pr + dr, nc = pc + dc;
            if (!classes.in_bounds(nr, nc) || labels(nr, nc) != 0 || classes(nr, nc) != cls) continue;
            labels(nr, nc) = next;
            stack.emplace_back(nr, nc);
          }
        }
      }
    }
  }
  return labels;
}

}  // namespace

std::vector<InstanceMask> extract_instances(const PanopticFrame& frame) {
  const Grid2<std::uint16_t> fallback =
      frame.has_instances ? Grid2<std::uint16_t>() : connected_components(frame.class_map);
  const Grid2<std::uint16_t>& ids = frame.has_instances ? frame.instance_map : fallback;
  std::map<std::uint16_t, InstanceMask> masks;
  for (int r = 0; r < frame.rows(); ++r) {
    for (int c = 0; c < frame.cols(); ++c) {
      const std::uint16_t id = ids(r, c);
      if (id == 0) continue;
      auto [it, inserted] = masks.try_emplace(id);
      InstanceMask& m = it->second;
      if (inserted) {
        m.id = id;
        m.cls = static_cast<ClassId>(frame.class_map(r, c));
        m.score = frame.score(id);
      }
      m.push_pixel(r, c);
    }
  }
  std::vector<InstanceMask> out;
  out.reserve(masks.size());
  for (auto& [id, m] : masks) out.push_back(std::move(m));
  return out;
}

ClassCounts& ClassCounts::operator+=(const ClassCounts& other) {
  for (int i = 0; i < kClassCount; ++i) per_class[i] += other.per_class[i];
  total += other.total;
  return *this;
}

ClassCounts count_instances(const std::vector<InstanceMask>& masks) {
  ClassCounts counts;
  for (const InstanceMask& m : masks) {
    if (!is_countable(m.cls)) continue;
    ++counts.per_class[static_cast<int>(m.cls)];
    ++counts.total;
  }
  return counts;
}

ClassCounts class_statistics(const std::vector<PanopticFrame>& frames) {
  ClassCounts counts;
  for (const PanopticFrame& f : frames) counts += count_instances(extract_instances(f));
  return counts;
}

void PerturbParams::validate() const {
  if (!(drop_rate >= 0.0 && drop_rate <= 1.0)) throw ConfigError("perturbation drop_rate must be in [0, 1]");
  if (!(shift_sigma_px >= 0.0) || !std::isfinite(shift_sigma_px)) {
    throw ConfigError("perturbation shift sigma must be finite and >= 0");
  }
}

namespace {

Grid2<std::uint8_t> morph(const Grid2<std::uint8_t>& in, bool dilate) {
  Grid2<std::uint8_t> out(in.rows(), in.cols(), 0);
  for (int r = 0; r < in.rows(); ++r) {
    for (int c = 0; c < in.cols(); ++c) {
      bool any = false, all = true;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          const bool v = in.in_bounds(r + dr, c + dc) && in(r + dr, c + dc) != 0;
          any = any || v;
          all = all && v;
        }
      }
      out(r, c) = (dilate ? any : all) ? 1 : 0;
    }
  }
  return out;
}

}  // namespace

PanopticFrame perturb_segmentation(const PanopticFrame& frame, const PerturbParams& params, std::uint64_t seed) {
  params.validate();
  const std::vector<InstanceMask> masks = extract_instances(frame);
  PanopticFrame out = frame;
  out.has_instances = true;
  out.instance_map = Grid2<std::uint16_t>(frame.rows(), frame.cols(), 0);
  out.scores.clear();
  for (const InstanceMask& m : masks) {
    m.for_each_pixel([&](int r, int c) { out.class_map(r, c) = static_cast<std::uint8_t>(ClassId::kEnvironment); });
  }

  Rng rng(derive_seed(seed, frame.timestamp));
  for (const InstanceMask& m : masks) {
    // Fixed draw count per instance keeps the stream aligned regardless of
    // which instances survive.
    const bool dropped = rng.bernoulli(params.drop_rate);
    const double nx = rng.normal();
    const double ny = rng.normal();
    if (dropped) continue;
    const int dc = static_cast<int>(std::lround(params.shift_sigma_px * nx));
    const int dr = static_cast<int>(std::lround(params.shift_sigma_px * ny));

    if (params.dilation_px == 0) {
      m.for_each_pixel([&](int r, int c) {
        if (!out.class_map.in_bounds(r + dr, c + dc)) return;
        out.class_map(r + dr, c + dc) = static_cast<std::uint8_t>(m.cls);
        out.instance_map(r + dr, c + dc) = m.id;
      });
    } else {
      // Work on the bounding box padded by the structuring radius.
      const int pad = std::abs(params.dilation_px) + 1;
      const int r0 = m.bbox.row_min - pad, c0 = m.bbox.col_min - pad;
      Grid2<std::uint8_t> local(m.bbox.row_max - m.bbox.row_min + 1 + 2 * pad,
                                m.bbox.col_max - m.bbox.col_min + 1 + 2 * pad, 0);
      m.for_each_pixel([&](int r, int c) { local(r - r0, c - c0) = 1; });
      for (int i = 0; i < std::abs(params.dilation_px); ++i) local = morph(local, params.dilation_px > 0);
      for (int lr = 0; lr < local.rows(); ++lr) {
        for (int lc = 0; lc < local.cols(); ++lc) {
          const int r = lr + r0 + dr, c = lc + c0 + dc;
          if (local(lr, lc) == 0 || !out.class_map.in_bounds(r, c)) continue;
          out.class_map(r, c) = static_cast<std::uint8_t>(m.cls);
          out.instance_map(r, c) = m.id;
        }
      }
    }
    if (frame.scores.count(m.id) != 0) out.scores[m.id] = frame.scores.at(m.id);
  }
  // Drop scores of instances that were fully overwritten or shifted out.
  std::map<std::uint16_t, double> kept;
  for (const InstanceMask& m : extract_instances(out)) {
    if (out.scores.count(m.id) != 0) kept[m.id] = out.scores.at(m.id);
  }
  out.scores = std::move(kept);
  return out;
}

}  // namespace rlforge::segmentation
