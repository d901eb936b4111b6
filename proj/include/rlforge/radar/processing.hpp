// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "rlforge/radar/cubes.hpp"

namespace rlforge::radar {

// Windowed, zero-padded 2D FFT per virtual channel: fast time -> range,
// slow time -> velocity (two-sided, zero velocity at doppler_bins/2).
// Each transform is scaled by 1/sqrt(fft length), so with a rectangular
// window and no padding the map carries exactly the raw-signal energy.
// Throws ConfigError when the sample buffer does not match the config.
RdMapStack range_doppler_map(const RawAdcCube& raw);
// Same, reusing out's storage when the size matches.
void range_doppler_map(const RawAdcCube& raw, RdMapStack& out);

// Windowed FFT across the virtual ULA after elementwise calibration. An
// empty calibration means unit weights. Only bins inside the configured FoV
// are kept; azimuth follows sin(theta) = bin frequency / element spacing.
RdaCube angle_fft(const RdMapStack& stack, std::span<const Complex> calibration = {});
void angle_fft(const RdMapStack& stack, std::span<const Complex> calibration, RdaCube& out);

// Maximum magnitude over Doppler, in dB (floored at kDbFloor).
RaImage ra_image(const RdaCube& cube);

// Convenience: raw -> RD -> RDA.
RdaCube process_frame(const RawAdcCube& raw, std::span<const Complex> calibration = {});

}  // namespace rlforge::radar
