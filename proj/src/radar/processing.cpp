// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/radar/processing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "fft.hpp"
#include "rlforge/core/error.hpp"

namespace rlforge::radar {

double magnitude_db(double magnitude) {
  if (!(magnitude > 0.0)) return kDbFloor;
  return std::max(kDbFloor, 20.0 * std::log10(magnitude));
}

RawAdcCube::RawAdcCube(const RadarConfig& cfg, FrameMeta m)
    : config(cfg),
      meta(m),
      samples(static_cast<std::size_t>(cfg.virtual_channels()) * cfg.chirps_per_tx * cfg.samples_per_chirp) {}

void RdaCube::resize(int nr, int nd, int na) {
  range_bins = nr;
  doppler_bins = nd;
  azimuth_bins = na;
  data.assign(static_cast<std::size_t>(nr) * nd * na, Complex{});
}

RdaCube::Peak RdaCube::argmax() const {
  std::size_t best = 0;
  double best_norm = -1.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double v = std::norm(data[i]);
    if (v > best_norm) {
      best_norm = v;
      best = i;
    }
  }
  Peak p{};
  if (data.empty()) return p;
  p.azimuth_bin = static_cast<int>(best % azimuth_bins);
  p.doppler_bin = static_cast<int>((best / azimuth_bins) % doppler_bins);
  p.range_bin = static_cast<int>(best / (static_cast<std::size_t>(azimuth_bins) * doppler_bins));
  p.magnitude = std::sqrt(best_norm);
  return p;
}

namespace {

// Multiplying sample k of an n-point input by this phasor rotates the DFT
// output by n/2 bins, which is exactly fftshift.
Complex shift_phasor(int k, int n) {
  const int half = n / 2;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((static_cast<long>(k) * half) % n) / n);
}

}  // namespace

void range_doppler_map(const RawAdcCube& raw, RdMapStack& out) {
  const RadarConfig& cfg = raw.config;
  cfg.validate();
  const std::size_t expected =
      static_cast<std::size_t>(cfg.virtual_channels()) * cfg.chirps_per_tx * cfg.samples_per_chirp;
  if (raw.samples.size() != expected) {
    throw ConfigError(fmt::format("raw cube holds {} samples, config expects {} ({} x {} x {})", raw.samples.size(),
                                  expected, cfg.virtual_channels(), cfg.chirps_per_tx, cfg.samples_per_chirp));
  }

  const int channels = cfg.virtual_channels();
  const int chirps = cfg.chirps_per_tx;
  const int samples = cfg.samples_per_chirp;
  const int nr = cfg.range_bins();
  const int nd = cfg.doppler_bins();
  const auto w_range = make_window(cfg.range_window, samples);
  const auto w_doppler = make_window(cfg.doppler_window, chirps);
  // Unitary scaling of both transforms plus the Doppler fftshift, applied
  // per chirp before any FFT.
  const double scale = 1.0 / std::sqrt(static_cast<double>(nr) * nd);
  std::vector<Complex> chirp_weight(static_cast<std::size_t>(chirps));
  for (int m = 0; m < chirps; ++m) chirp_weight[m] = w_doppler[m] * scale * shift_phasor(m, nd);

  out.config = cfg;
  out.meta = raw.meta;
  out.channels = channels;
  out.range_bins = nr;
  out.doppler_bins = nd;
  out.range_axis = cfg.range_axis();
  out.velocity_axis = cfg.velocity_axis();
  out.data.resize(static_cast<std::size_t>(channels) * nr * nd);

  // Padded tails of `in` and padded chirp rows of `fast` are never written,
  // so they stay zero across channels.
  ComplexVector in(static_cast<std::size_t>(chirps) * nr);
  ComplexVector fast(static_cast<std::size_t>(nd) * nr);
  for (int ch = 0; ch < channels; ++ch) {
    for (int m = 0; m < chirps; ++m) {
      const Complex* src = &raw.at(ch, m, 0);
      Complex* dst = in.data() + static_cast<std::size_t>(m) * nr;
      const Complex cw = chirp_weight[m];
      for (int s = 0; s < samples; ++s) dst[s] = src[s] * (w_range[s] * cw);
    }
    detail::forward_dft(in.data(), fast.data(), {nr, chirps, 1, nr, 1, nr});
    detail::forward_dft(fast.data(), out.data.data() + static_cast<std::size_t>(ch) * nr * nd,
                        {nd, nr, nr, 1, 1, nd});
  }
}

RdMapStack range_doppler_map(const RawAdcCube& raw) {
  RdMapStack out;
  range_doppler_map(raw, out);
  return out;
}

void angle_fft(const RdMapStack& stack, std::span<const Complex> calibration, RdaCube& cube) {
  const RadarConfig& cfg = stack.config;
  const int channels = cfg.virtual_channels();
  if (stack.channels != channels) {
    throw ConfigError(fmt::format("angle FFT expects {} virtual channels, got {}", channels, stack.channels));
  }
  if (!calibration.empty() && static_cast<int>(calibration.size()) != channels) {
    throw ConfigError(fmt::format("calibration vector has {} entries, expected {}", calibration.size(), channels));
  }

  const int na_fft = cfg.angle_fft_size();
  const int first = cfg.first_azimuth_fft_bin();
  cube.config = cfg;
  cube.meta = stack.meta;
  cube.range_axis = stack.range_axis;
  cube.velocity_axis = stack.velocity_axis;
  cube.azimuth_axis = cfg.azimuth_axis();
  const int nr = stack.range_bins;
  const int nd = stack.doppler_bins;
  const int na = static_cast<int>(cube.azimuth_axis.size());
  cube.range_bins = nr;
  cube.doppler_bins = nd;
  cube.azimuth_bins = na;
  cube.data.resize(static_cast<std::size_t>(nr) * nd * na);  // every element is overwritten below

  const auto window = make_window(cfg.angle_window, channels);
  const double scale = 1.0 / std::sqrt(static_cast<double>(na_fft));
  std::vector<Complex> weight(static_cast<std::size_t>(channels));
  for (int ch = 0; ch < channels; ++ch) {
    weight[ch] = window[ch] * scale * shift_phasor(ch, na_fft) *
                 (calibration.empty() ? Complex{1.0, 0.0} : calibration[ch]);
  }

  // in: [doppler][element]; elements past the last channel stay zero (padding).
  ComplexVector in(static_cast<std::size_t>(nd) * na_fft);
  ComplexVector spectrum(static_cast<std::size_t>(nd) * na_fft);
  const std::size_t channel_stride = static_cast<std::size_t>(nr) * nd;
  for (int r = 0; r < nr; ++r) {
    for (int ch = 0; ch < channels; ++ch) {
      const Complex* src = stack.data.data() + ch * channel_stride + static_cast<std::size_t>(r) * nd;
      Complex* dst = in.data() + ch;
      const Complex w = weight[ch];
      for (int d = 0; d < nd; ++d) dst[static_cast<std::size_t>(d) * na_fft] = src[d] * w;
    }
    detail::forward_dft(in.data(), spectrum.data(), {na_fft, nd, 1, na_fft, 1, na_fft});
    Complex* dst = cube.data.data() + cube.index(r, 0, 0);
    for (int d = 0; d < nd; ++d) {
      const Complex* row = spectrum.data() + static_cast<std::size_t>(d) * na_fft + first;
      std::copy(row, row + na, dst + static_cast<std::size_t>(d) * na);
    }
  }
}

RdaCube angle_fft(const RdMapStack& stack, std::span<const Complex> calibration) {
  RdaCube cube;
  angle_fft(stack, calibration, cube);
  return cube;
}

RaImage ra_image(const RdaCube& cube) {
  RaImage out;
  out.meta = cube.meta;
  out.range_axis = cube.range_axis;
  out.azimuth_axis = cube.azimuth_axis;
  out.db = Grid2<double>(cube.range_bins, cube.azimuth_bins, 0.0);
  std::vector<double> best(static_cast<std::size_t>(cube.azimuth_bins));
  for (int r = 0; r < cube.range_bins; ++r) {
    std::fill(best.begin(), best.end(), 0.0);
    for (int d = 0; d < cube.doppler_bins; ++d) {
      const Complex* row = cube.data.data() + cube.index(r, d, 0);
      for (int a = 0; a < cube.azimuth_bins; ++a) best[a] = std::max(best[a], std::norm(row[a]));
    }
    for (int a = 0; a < cube.azimuth_bins; ++a) out.db(r, a) = magnitude_db(std::sqrt(best[a]));
  }
  return out;
}

RdaCube process_frame(const RawAdcCube& raw, std::span<const Complex> calibration) {
  return angle_fft(range_doppler_map(raw), calibration);
}

}  // namespace rlforge::radar
