// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rlforge/core/json_io.hpp"
#include "rlforge/metrics/matching.hpp"

namespace rlforge::metrics {

// One line of the AP table: metric, IoU interval, value in percent.
struct ReportRow {
  std::string metric;
  std::string interval;
  std::optional<double> percent;
};

// mAP over the whole threshold set, at 50 and 75 (when present in the spec),
// then one AP row per class.
std::vector<ReportRow> table_rows(const ApResult& result, const MatchSpec& spec);

// mAP restricted to a single threshold of the spec; empty if k is not in it.
std::optional<double> map_at(const ApResult& result, const MatchSpec& spec, double k);

std::string format_table(const std::vector<ReportRow>& rows);
Json report_json(const ApResult& result, const MatchSpec& spec);

}  // namespace rlforge::metrics
