// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/radar/radar_config.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "rlforge/core/error.hpp"
#include "rlforge/core/pose.hpp"

namespace rlforge::radar {

WindowKind parse_window(std::string_view name) {
  if (name == "rect") return WindowKind::kRect;
  if (name == "hann") return WindowKind::kHann;
  if (name == "hamming") return WindowKind::kHamming;
  if (name == "blackman") return WindowKind::kBlackman;
  throw ConfigError(fmt::format("unknown window kind '{}'", name));
}

std::string_view window_name(WindowKind kind) {
  switch (kind) {
    case WindowKind::kRect: return "rect";
    case WindowKind::kHann: return "hann";
    case WindowKind::kHamming: return "hamming";
    case WindowKind::kBlackman: return "blackman";
  }
  return "rect";
}

std::vector<double> make_window(WindowKind kind, int n) {
  std::vector<double> w(static_cast<std::size_t>(n), 1.0);
  if (kind == WindowKind::kRect || n == 1) return w;
  const double denom = static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) {
    const double x = 2.0 * std::numbers::pi * i / denom;
    switch (kind) {
      case WindowKind::kHann: w[i] = 0.5 - 0.5 * std::cos(x); break;
      case WindowKind::kHamming: w[i] = 0.54 - 0.46 * std::cos(x); break;
      case WindowKind::kBlackman: w[i] = 0.42 - 0.5 * std::cos(x) + 0.08 * std::cos(2.0 * x); break;
      case WindowKind::kRect: break;
    }
  }
  return w;
}

void RadarConfig::validate() const {
  auto require = [](bool ok, std::string_view what) {
    if (!ok) throw ConfigError(fmt::format("radar config: {}", what));
  };
  require(carrier_frequency_hz > 0, "carrier_frequency must be > 0");
  require(bandwidth_hz > 0, "bandwidth must be > 0");
  require(chirp_duration_s > 0, "chirp_duration must be > 0");
  require(chirps_per_tx >= 1 && tx_count_used >= 1 && rx_count >= 1 && samples_per_chirp >= 1,
          "all counts must be >= 1");
  require(range_zero_pad >= 1 && doppler_zero_pad >= 1 && angle_zero_pad >= 1, "zero pad factors must be >= 1");
  require(virtual_element_spacing > 0, "virtual_element_spacing must be > 0");
  require(fov_half_angle_deg > 0 && fov_half_angle_deg < 90, "fov_half_angle must be in (0, 90) deg");
  require(unambiguous_half_angle_deg() + 1e-9 >= fov_half_angle_deg,
          fmt::format("unambiguous half-angle {:.3f} deg is smaller than the configured FoV half-angle {:.3f} deg",
                      unambiguous_half_angle_deg(), fov_half_angle_deg));
}

double RadarConfig::wavelength() const { return kSpeedOfLight / carrier_frequency_hz; }
double RadarConfig::range_resolution() const { return kSpeedOfLight / (2.0 * bandwidth_hz); }
double RadarConfig::range_bin_width() const { return range_resolution() / range_zero_pad; }
double RadarConfig::max_range() const { return samples_per_chirp * range_resolution(); }
double RadarConfig::sample_rate() const { return samples_per_chirp / chirp_duration_s; }
double RadarConfig::sweep_slope() const { return bandwidth_hz / chirp_duration_s; }
double RadarConfig::pri() const { return tx_count_used * chirp_duration_s; }
double RadarConfig::max_velocity() const { return wavelength() / (4.0 * pri()); }
double RadarConfig::velocity_bin_width() const { return wavelength() / (2.0 * doppler_bins() * pri()); }

double RadarConfig::unambiguous_half_angle_deg() const {
  const double s = 1.0 / (2.0 * virtual_element_spacing);
  return s >= 1.0 ? 90.0 : rad_to_deg(std::asin(s));
}

std::vector<double> RadarConfig::range_axis() const {
  std::vector<double> axis(static_cast<std::size_t>(range_bins()));
  for (int k = 0; k < range_bins(); ++k) axis[k] = k * range_bin_width();
  return axis;
}

std::vector<double> RadarConfig::velocity_axis() const {
  const int n = doppler_bins();
  std::vector<double> axis(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) axis[k] = (k - n / 2) * velocity_bin_width();
  return axis;
}

namespace {

// sin(theta) of fftshifted angle bin j.
double angle_bin_sine(int j, int n, double spacing) {
  return (static_cast<double>(j - n / 2) / n) / spacing;
}

bool angle_bin_in_fov(int j, int n, double spacing, double fov_deg) {
  return std::abs(angle_bin_sine(j, n, spacing)) <= std::sin(deg_to_rad(fov_deg)) + 1e-12;
}

}  // namespace

int RadarConfig::first_azimuth_fft_bin() const {
  const int n = angle_fft_size();
  for (int j = 0; j < n; ++j) {
    if (angle_bin_in_fov(j, n, virtual_element_spacing, fov_half_angle_deg)) return j;
  }
  throw ConfigError("radar config: no angle bin inside the FoV");
}

std::vector<double> RadarConfig::azimuth_axis() const {
  const int n = angle_fft_size();
  std::vector<double> axis;
  for (int j = first_azimuth_fft_bin(); j < n; ++j) {
    if (!angle_bin_in_fov(j, n, virtual_element_spacing, fov_half_angle_deg)) break;
    axis.push_back(rad_to_deg(std::asin(angle_bin_sine(j, n, virtual_element_spacing))));
  }
  return axis;
}

double RadarConfig::range_bin_of(double range_m) const { return range_m / range_bin_width(); }

double RadarConfig::doppler_bin_of(double velocity_mps) const {
  return velocity_mps / velocity_bin_width() + doppler_bins() / 2;
}

double RadarConfig::azimuth_bin_of(double azimuth_deg) const {
  const int n = angle_fft_size();
  const double u = virtual_element_spacing * std::sin(deg_to_rad(azimuth_deg));
  return u * n + n / 2 - first_azimuth_fft_bin();
}

}  // namespace rlforge::radar
