// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "rlforge/radar/cubes.hpp"

namespace rlforge::radar {

// Cell-averaging CFAR over range-Doppler, run independently per azimuth bin.
// Window sizes are per side.
struct CfarParams {
  int guard_range = 2;
  int train_range = 8;
  int guard_doppler = 1;
  int train_doppler = 4;
  double false_alarm_rate = 1e-4;

  void validate() const;
  int training_cells() const;
  // alpha = N (Pfa^{-1/N} - 1): exact Pfa for exponential (square-law) noise.
  double threshold_scale() const;
};

struct CfarResult {
  TargetList targets;
  std::uint64_t cells_tested = 0;
  std::uint64_t crossings = 0;  // cells above threshold before peak grouping
};

// Doppler wraps around (the spectrum is periodic); range cells whose training
// window would leave the cube are not tested. Crossings that touch in any of
// the 26 neighbouring directions are merged and reported once at the
// strongest cell, with parabolic sub-bin refinement on each axis.
CfarResult cfar_detect(const RdaCube& cube, const CfarParams& params = {});

}  // namespace rlforge::radar
