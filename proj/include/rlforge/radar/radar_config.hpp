// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rlforge::radar {

enum class WindowKind { kRect, kHann, kHamming, kBlackman };

WindowKind parse_window(std::string_view name);
std::string_view window_name(WindowKind kind);

// Symmetric window of length n.
std::vector<double> make_window(WindowKind kind, int n);

// TDM-MIMO FMCW front end and processing parameters.
//
// Defaults model a 77 GHz radar using 3 TX x 16 RX (48 virtual elements) with
// 128 chirps per TX and 1 GHz sweep. Chirp timing is not a measured property
// of any device: 82.7 us gives an unambiguous velocity of about +-3.9 m/s with
// the 3-chirp TDM repetition interval, and 0.532 wavelength spacing gives a
// +-70 deg unambiguous azimuth sector.
struct RadarConfig {
  double carrier_frequency_hz = 77e9;  // sweep centre
  double bandwidth_hz = 1e9;
  int chirps_per_tx = 128;
  int tx_count_used = 3;
  int rx_count = 16;
  int samples_per_chirp = 512;
  double chirp_duration_s = 82.7e-6;
  double virtual_element_spacing = 0.532;  // wavelengths
  int range_zero_pad = 2;
  int doppler_zero_pad = 2;
  int angle_zero_pad = 2;
  WindowKind range_window = WindowKind::kHann;
  WindowKind doppler_window = WindowKind::kHann;
  WindowKind angle_window = WindowKind::kHann;
  double fov_half_angle_deg = 70.0;
  // When set, the simulator offsets each virtual channel's chirp by its TX
  // slot. Processing never compensates it.
  bool model_tdm_skew = false;

  // Throws ConfigError on any violated invariant.
  void validate() const;

  int virtual_channels() const { return tx_count_used * rx_count; }
  double wavelength() const;
  double range_resolution() const;       // c / 2B
  double range_bin_width() const;        // after zero padding
  double max_range() const;
  double sample_rate() const;            // complex samples per second
  double sweep_slope() const;            // Hz / s
  double pri() const;                    // chirp repetition per virtual channel
  double max_velocity() const;           // lambda / (4 PRI)
  double velocity_bin_width() const;
  double unambiguous_half_angle_deg() const;

  int range_bins() const { return samples_per_chirp * range_zero_pad; }
  int doppler_bins() const { return chirps_per_tx * doppler_zero_pad; }
  int angle_fft_size() const { return virtual_channels() * angle_zero_pad; }

  std::vector<double> range_axis() const;
  std::vector<double> velocity_axis() const;
  // Azimuth axis in degrees restricted to the configured FoV, ascending.
  std::vector<double> azimuth_axis() const;
  // Index into the fftshifted angle spectrum of azimuth_axis()[0].
  int first_azimuth_fft_bin() const;

  // Fractional bin positions of a point scatterer on the processed axes.
  double range_bin_of(double range_m) const;
  double doppler_bin_of(double velocity_mps) const;
  double azimuth_bin_of(double azimuth_deg) const;
};

}  // namespace rlforge::radar
