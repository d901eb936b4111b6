// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/sim/radar_synth.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "rlforge/core/error.hpp"
#include "rlforge/core/rng.hpp"

namespace rlforge::sim {

using radar::Complex;
using radar::RadarConfig;

namespace {

double coherent_gain(radar::WindowKind kind, int n) {
  const auto w = radar::make_window(kind, n);
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  const double sum_sq = std::inner_product(w.begin(), w.end(), w.begin(), 0.0);
  return sum * sum / sum_sq;
}

}  // namespace

double noise_variance(const RadarConfig& config, const NoiseSpec& noise) {
  const double gain = coherent_gain(config.range_window, config.samples_per_chirp) *
                      coherent_gain(config.doppler_window, config.chirps_per_tx) *
                      coherent_gain(config.angle_window, config.virtual_channels());
  return gain / std::pow(10.0, noise.snr_ref_db / 10.0);
}

radar::RawAdcCube synthesize_raw(const RadarConfig& config, const radar::FrameMeta& meta,
                                 std::span<const PointScatterer> scatterers, const NoiseSpec& noise,
                                 std::uint64_t seed) {
  radar::RawAdcCube raw;
  synthesize_raw(config, meta, scatterers, noise, seed, raw);
  return raw;
}

void synthesize_raw(const RadarConfig& config, const radar::FrameMeta& meta,
                    std::span<const PointScatterer> scatterers, const NoiseSpec& noise, std::uint64_t seed,
                    radar::RawAdcCube& raw) {
  config.validate();
  raw.config = config;
  raw.meta = meta;
  raw.samples.assign(static_cast<std::size_t>(config.virtual_channels()) * config.chirps_per_tx *
                         config.samples_per_chirp,
                     Complex{});
  const int channels = config.virtual_channels();
  const int chirps = config.chirps_per_tx;
  const int samples = config.samples_per_chirp;
  const double two_pi = 2.0 * std::numbers::pi;
  const double f0 = config.carrier_frequency_hz - 0.5 * config.bandwidth_hz;  // sweep start
  const double slope = config.sweep_slope();
  const double dt = 1.0 / config.sample_rate();
  const double pri = config.pri();
  const double sin_fov = std::sin(deg_to_rad(config.fov_half_angle_deg));

  std::vector<Complex> base(static_cast<std::size_t>(chirps) * samples);
  for (const PointScatterer& sc : scatterers) {
    if (!(sc.range_m > 0.0)) {
      throw DataError(fmt::format("scatterer at non-positive range {} m", sc.range_m));
    }
    const double u = std::sin(deg_to_rad(sc.azimuth_deg));
    if (std::abs(sc.azimuth_deg) >= 90.0 || std::abs(u) > sin_fov || sc.range_m >= config.max_range()) continue;

    // Chirp/sample phase history for a given slow-time offset; the TX slot
    // offset makes it channel dependent when TDM skew is modeled.
    auto fill_base = [&](double slot_offset) {
      for (int m = 0; m < chirps; ++m) {
        const double tm = (m - 0.5 * (chirps - 1)) * pri + slot_offset;
        const double tau = 2.0 * (sc.range_m + sc.radial_velocity_mps * tm) / kSpeedOfLight;
        const double phase0 = two_pi * std::fmod(f0 * tau, 1.0);
        const double beat = slope * tau;  // Hz
        Complex* row = base.data() + static_cast<std::size_t>(m) * samples;
        // phasor recurrence, re-anchored every 64 samples to bound drift
        const Complex step = std::polar(1.0, two_pi * std::fmod(beat * dt, 1.0));
        Complex z;
        for (int s = 0; s < samples; ++s) {
          if (s % 64 == 0) z = sc.amplitude * std::polar(1.0, phase0 + two_pi * std::fmod(beat * s * dt, 1.0));
          row[s] = z;
          z *= step;
        }
      }
    };

    int filled_tx = -1;
    for (int n = 0; n < channels; ++n) {
      const int tx = n / config.rx_count;
      if (filled_tx < 0 || (config.model_tdm_skew && tx != filled_tx)) {
        fill_base(config.model_tdm_skew ? tx * config.chirp_duration_s : 0.0);
        filled_tx = tx;
      }
      const Complex element = std::polar(1.0, two_pi * config.virtual_element_spacing * u * n);
      Complex* dst = &raw.at(n, 0, 0);
      for (std::size_t i = 0; i < base.size(); ++i) dst[i] += base[i] * element;
    }
  }

  if (noise.enabled) {
    Rng rng(derive_seed(seed, meta.timestamp));
    const double sigma = std::sqrt(noise_variance(config, noise) / 2.0);
    for (Complex& x : raw.samples) {
      const double re = rng.normal();
      const double im = rng.normal();
      x += Complex(sigma * re, sigma * im);
    }
  }
}

BinPrediction predict_bins(const RadarConfig& config, const PointScatterer& s) {
  return {config.range_bin_of(s.range_m), config.doppler_bin_of(s.radial_velocity_mps),
          config.azimuth_bin_of(s.azimuth_deg)};
}

}  // namespace rlforge::sim
