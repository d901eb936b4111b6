// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "rlforge/core/aligned.hpp"
#include "rlforge/core/grid.hpp"
#include "rlforge/core/pose.hpp"
#include "rlforge/core/world_grid.hpp"
#include "rlforge/radar/radar_config.hpp"

namespace rlforge::radar {

using Complex = std::complex<double>;
using ComplexVector = AlignedVector<Complex>;

// dB value assigned to zero magnitude and to raster cells outside the FoV.
inline constexpr double kDbFloor = -120.0;

double magnitude_db(double magnitude);

// Acquisition time and vehicle pose shared by all products of one frame.
struct FrameMeta {
  double timestamp = 0.0;
  RigPose pose;
};

// Demultiplexed ADC samples, [virtual_channel][chirp][fast_time_sample].
struct RawAdcCube {
  RadarConfig config;
  FrameMeta meta;
  ComplexVector samples;

  RawAdcCube() = default;
  RawAdcCube(const RadarConfig& cfg, FrameMeta m);

  int channels() const { return config.virtual_channels(); }
  int chirps() const { return config.chirps_per_tx; }
  int samples_per_chirp() const { return config.samples_per_chirp; }

  Complex& at(int ch, int chirp, int s) { return samples[index(ch, chirp, s)]; }
  const Complex& at(int ch, int chirp, int s) const { return samples[index(ch, chirp, s)]; }

 private:
  std::size_t index(int ch, int chirp, int s) const {
    return (static_cast<std::size_t>(ch) * chirps() + chirp) * samples_per_chirp() + s;
  }
};

// One range-Doppler map per virtual channel, [channel][range][doppler].
// The Doppler axis is fftshifted so zero velocity sits at doppler_bins/2.
struct RdMapStack {
  RadarConfig config;
  FrameMeta meta;
  int channels = 0;
  int range_bins = 0;
  int doppler_bins = 0;
  std::vector<double> range_axis;     // m
  std::vector<double> velocity_axis;  // m/s
  ComplexVector data;

  std::span<const Complex> channel(int ch) const {
    return {data.data() + static_cast<std::size_t>(ch) * range_bins * doppler_bins,
            static_cast<std::size_t>(range_bins) * doppler_bins};
  }
  const Complex& at(int ch, int r, int d) const {
    return data[(static_cast<std::size_t>(ch) * range_bins + r) * doppler_bins + d];
  }
};

// Range-Doppler-azimuth cube, [range][doppler][azimuth].
struct RdaCube {
  RadarConfig config;
  FrameMeta meta;
  int range_bins = 0;
  int doppler_bins = 0;
  int azimuth_bins = 0;
  std::vector<double> range_axis;     // m
  std::vector<double> velocity_axis;  // m/s
  std::vector<double> azimuth_axis;   // deg, ascending
  ComplexVector data;

  std::size_t index(int r, int d, int a) const {
    return (static_cast<std::size_t>(r) * doppler_bins + d) * azimuth_bins + a;
  }
  Complex& at(int r, int d, int a) { return data[index(r, d, a)]; }
  const Complex& at(int r, int d, int a) const { return data[index(r, d, a)]; }

  // Allocates zeroed storage with the given dimensions.
  void resize(int nr, int nd, int na);

  struct Peak {
    int range_bin;
    int doppler_bin;
    int azimuth_bin;
    double magnitude;
  };
  Peak argmax() const;
};

// Magnitude in dB over [range][azimuth].
struct RaImage {
  FrameMeta meta;
  std::vector<double> range_axis;
  std::vector<double> azimuth_axis;
  Grid2<double> db;  // rows = range, cols = azimuth
};

struct WorldRaster {
  WorldGridSpec grid;
  double fill_value = kDbFloor;
  Grid2<double> values;  // rows = iy, cols = ix
};

struct Target {
  double range_m = 0.0;
  double azimuth_deg = 0.0;
  double velocity_mps = 0.0;
  double magnitude_db = 0.0;
  Eigen::Vector2d world = Eigen::Vector2d::Zero();
  int range_bin = 0;
  int doppler_bin = 0;
  int azimuth_bin = 0;
};

using TargetList = std::vector<Target>;

}  // namespace rlforge::radar
