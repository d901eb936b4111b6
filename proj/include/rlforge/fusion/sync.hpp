// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace rlforge::fusion {

struct SyncPair {
  int radar_index;
  double radar_timestamp;
  int camera_index;
  double camera_timestamp;
  double skew;  // camera - radar, s
};

struct SyncResult {
  std::vector<SyncPair> pairs;
  std::vector<int> unpaired_radar;
};

// Pairs each radar frame with its nearest camera frame when |skew| <=
// max_skew; on equal distance the earlier camera frame wins. Both lists must
// be sorted ascending and finite (DataError otherwise).
SyncResult match_frames(const std::vector<double>& radar_ts, const std::vector<double>& camera_ts, double max_skew);

}  // namespace rlforge::fusion
