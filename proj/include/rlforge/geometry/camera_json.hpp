// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rlforge/core/json_io.hpp"
#include "rlforge/geometry/camera_model.hpp"

namespace rlforge::geometry {

// Keys: focal_length_mm, sensor_w_mm, sensor_h_mm, width_px, height_px,
// principal_point [u, v], fov_v_deg, fov_h_deg, k1, k2, k3, p1, p2.
CameraModel camera_model_from_json(const Json& j);
Json camera_model_to_json(const CameraModel& model);

}  // namespace rlforge::geometry
