// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/radar/config_json.hpp"

#include <string>

namespace rlforge::radar {

RadarConfig radar_config_from_json(const Json& j) {
  check_keys(j,
             {"carrier_frequency_hz", "bandwidth_hz", "chirps_per_tx", "tx_count_used", "rx_count",
              "samples_per_chirp", "chirp_duration_us", "virtual_element_spacing", "range_zero_pad",
              "doppler_zero_pad", "angle_zero_pad", "range_window", "doppler_window", "angle_window",
              "fov_half_angle_deg", "model_tdm_skew"},
             "radar");
  RadarConfig c;
  c.carrier_frequency_hz = json_get(j, "carrier_frequency_hz", c.carrier_frequency_hz);
  c.bandwidth_hz = json_get(j, "bandwidth_hz", c.bandwidth_hz);
  c.chirps_per_tx = json_get(j, "chirps_per_tx", c.chirps_per_tx);
  c.tx_count_used = json_get(j, "tx_count_used", c.tx_count_used);
  c.rx_count = json_get(j, "rx_count", c.rx_count);
  c.samples_per_chirp = json_get(j, "samples_per_chirp", c.samples_per_chirp);
  c.chirp_duration_s = json_get(j, "chirp_duration_us", c.chirp_duration_s * 1e6) * 1e-6;
  c.virtual_element_spacing = json_get(j, "virtual_element_spacing", c.virtual_element_spacing);
  c.range_zero_pad = json_get(j, "range_zero_pad", c.range_zero_pad);
  c.doppler_zero_pad = json_get(j, "doppler_zero_pad", c.doppler_zero_pad);
  c.angle_zero_pad = json_get(j, "angle_zero_pad", c.angle_zero_pad);
  c.range_window = parse_window(json_get(j, "range_window", std::string(window_name(c.range_window))));
  c.doppler_window = parse_window(json_get(j, "doppler_window", std::string(window_name(c.doppler_window))));
  c.angle_window = parse_window(json_get(j, "angle_window", std::string(window_name(c.angle_window))));
  c.fov_half_angle_deg = json_get(j, "fov_half_angle_deg", c.fov_half_angle_deg);
  c.model_tdm_skew = json_get(j, "model_tdm_skew", c.model_tdm_skew);
  c.validate();
  return c;
}

Json radar_config_to_json(const RadarConfig& c) {
  return Json{{"carrier_frequency_hz", c.carrier_frequency_hz},
              {"bandwidth_hz", c.bandwidth_hz},
              {"chirps_per_tx", c.chirps_per_tx},
              {"tx_count_used", c.tx_count_used},
              {"rx_count", c.rx_count},
              {"samples_per_chirp", c.samples_per_chirp},
              {"chirp_duration_us", c.chirp_duration_s * 1e6},
              {"virtual_element_spacing", c.virtual_element_spacing},
              {"range_zero_pad", c.range_zero_pad},
              {"doppler_zero_pad", c.doppler_zero_pad},
              {"angle_zero_pad", c.angle_zero_pad},
              {"range_window", window_name(c.range_window)},
              {"doppler_window", window_name(c.doppler_window)},
              {"angle_window", window_name(c.angle_window)},
              {"fov_half_angle_deg", c.fov_half_angle_deg},
              {"model_tdm_skew", c.model_tdm_skew}};
}

}  // namespace rlforge::radar
