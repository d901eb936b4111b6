// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/fusion/sync.hpp"

#include <algorithm>
#include <cmath>

#include "rlforge/core/error.hpp"

namespace rlforge::fusion {

namespace {

void check_sorted(const std::vector<double>& ts, const char* what) {
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!std::isfinite(ts[i])) throw DataError(std::string(what) + " timestamps must be finite");
    if (i > 0 && ts[i] < ts[i - 1]) throw DataError(std::string(what) + " timestamps must be sorted");
  }
}

}  // namespace

SyncResult match_frames(const std::vector<double>& radar_ts, const std::vector<double>& camera_ts, double max_skew) {
  check_sorted(radar_ts, "radar");
  check_sorted(camera_ts, "camera");
  SyncResult out;
  for (std::size_t i = 0; i < radar_ts.size(); ++i) {
    const double t = radar_ts[i];
    const auto it = std::lower_bound(camera_ts.begin(), camera_ts.end(), t);
    int best = -1;
    double best_d = 0.0;
    // Earliest of a run of equal timestamps before t is irrelevant: only the
    // latest one can be nearest, and ties with it go to the earlier frame.
    if (it != camera_ts.begin()) {
      auto prev = std::prev(it);
      prev = std::lower_bound(camera_ts.begin(), prev + 1, *prev);
      best = static_cast<int>(prev - camera_ts.begin());
      best_d = t - *prev;
    }
    if (it != camera_ts.end() && (best < 0 || *it - t < best_d)) {
      best = static_cast<int>(it - camera_ts.begin());
      best_d = *it - t;
    }
    if (best >= 0 && best_d <= max_skew) {
      out.pairs.push_back({static_cast<int>(i), t, best, camera_ts[best], camera_ts[best] - t});
    } else {
      out.unpaired_radar.push_back(static_cast<int>(i));
    }
  }
  return out;
}

}  // namespace rlforge::fusion
