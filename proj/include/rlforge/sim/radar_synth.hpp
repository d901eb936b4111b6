// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>

#include "rlforge/radar/cubes.hpp"

namespace rlforge::sim {

// Point scatterer in the radar's planar frame.
struct PointScatterer {
  double range_m = 0.0;
  double azimuth_deg = 0.0;          // positive toward body +y
  double radial_velocity_mps = 0.0;  // positive = receding
  double amplitude = 1.0;
};

struct NoiseSpec {
  bool enabled = false;
  // Post-processing peak SNR of a unit-amplitude scatterer, i.e. the noise
  // power is set after the coherent gain of all three windowed FFTs.
  double snr_ref_db = 30.0;
};

// Per-sample complex noise variance giving `snr_ref_db` for a unit scatterer.
double noise_variance(const radar::RadarConfig& config, const NoiseSpec& noise);

// Dechirped beat signal, stop-and-hop, summed over scatterers:
//   x[n][m][s] = A exp(j 2pi (f0 tau_m + S tau_m t_s + d n sin(theta)))
//   tau_m = 2 (r + v t_m) / c,  t_m = (m - (M-1)/2) PRI  (+ TX slot offset with TDM skew)
// f0 = fc - B/2 starts the sweep, so averaged over a chirp the Doppler
// phase advances at the centre frequency fc.
// Scatterers outside the FoV or beyond the unambiguous range are not
// illuminated. Noise draws come from derive_seed(seed, meta.timestamp).
// Throws DataError for a scatterer at zero (or negative) range.
radar::RawAdcCube synthesize_raw(const radar::RadarConfig& config, const radar::FrameMeta& meta,
                                 std::span<const PointScatterer> scatterers, const NoiseSpec& noise = {},
                                 std::uint64_t seed = 0);
// Same, reusing out's storage when the size matches.
void synthesize_raw(const radar::RadarConfig& config, const radar::FrameMeta& meta,
                    std::span<const PointScatterer> scatterers, const NoiseSpec& noise, std::uint64_t seed,
                    radar::RawAdcCube& out);

// Fractional bin positions where a scatterer's peak is expected after
// range_doppler_map + angle_fft.
struct BinPrediction {
  double range_bin;
  double doppler_bin;
  double azimuth_bin;
};
BinPrediction predict_bins(const radar::RadarConfig& config, const PointScatterer& s);

}  // namespace rlforge::sim
