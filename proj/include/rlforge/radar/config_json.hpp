// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rlforge/core/json_io.hpp"
#include "rlforge/radar/radar_config.hpp"

namespace rlforge::radar {

// Keys mirror the RadarConfig fields, with chirp_duration_us in microseconds
// and windows given by name. Missing keys keep the defaults; unknown keys
// and invalid values throw ConfigError.
RadarConfig radar_config_from_json(const Json& j);
Json radar_config_to_json(const RadarConfig& config);

}  // namespace rlforge::radar
