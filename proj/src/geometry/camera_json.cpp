// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/geometry/camera_json.hpp"

#include <array>

namespace rlforge::geometry {

CameraModel camera_model_from_json(const Json& j) {
  check_keys(j,
             {"focal_length_mm", "sensor_w_mm", "sensor_h_mm", "width_px", "height_px", "principal_point",
              "fov_v_deg", "fov_h_deg", "k1", "k2", "k3", "p1", "p2"},
             "camera");
  CameraModel m;
  m.focal_length_m = json_get(j, "focal_length_mm", m.focal_length_m * 1e3) * 1e-3;
  m.sensor_width_m = json_get(j, "sensor_w_mm", m.sensor_width_m * 1e3) * 1e-3;
  m.sensor_height_m = json_get(j, "sensor_h_mm", m.sensor_height_m * 1e3) * 1e-3;
  m.width_px = json_get(j, "width_px", m.width_px);
  m.height_px = json_get(j, "height_px", m.height_px);
  if (j.contains("principal_point")) {
    const auto pp = json_get(j, "principal_point", std::array<double, 2>{});
    m.principal_point = Eigen::Vector2d(pp[0], pp[1]);
  }
  m.fov_v_deg = json_get(j, "fov_v_deg", m.fov_v_deg);
  m.fov_h_deg = json_get(j, "fov_h_deg", m.fov_h_deg);
  m.distortion.k1 = json_get(j, "k1", 0.0);
  m.distortion.k2 = json_get(j, "k2", 0.0);
  m.distortion.k3 = json_get(j, "k3", 0.0);
  m.distortion.p1 = json_get(j, "p1", 0.0);
  m.distortion.p2 = json_get(j, "p2", 0.0);
  m.validate();
  return m;
}

Json camera_model_to_json(const CameraModel& m) {
  Json j{{"focal_length_mm", m.focal_length_m * 1e3},
         {"sensor_w_mm", m.sensor_width_m * 1e3},
         {"sensor_h_mm", m.sensor_height_m * 1e3},
         {"width_px", m.width_px},
         {"height_px", m.height_px},
         {"fov_v_deg", m.fov_v_deg},
         {"fov_h_deg", m.fov_h_deg},
         {"k1", m.distortion.k1},
         {"k2", m.distortion.k2},
         {"k3", m.distortion.k3},
         {"p1", m.distortion.p1},
         {"p2", m.distortion.p2}};
  if (m.principal_point) j["principal_point"] = {m.principal_point->x(), m.principal_point->y()};
  return j;
}

}  // namespace rlforge::geometry
