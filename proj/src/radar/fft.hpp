// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

namespace rlforge::radar::detail {

// Layout of a batch of 1D transforms, in elements.
struct Batch {
  int n;
  int howmany;
  int istride;
  int idist;
  int ostride;
  int odist;
};

// Unnormalized forward DFTs (e^{-j 2pi kn/N}) over a strided batch. Plans are
// cached per layout and alignment; safe to call from several threads.
// in and out may alias only for identical in/out layouts.
void forward_dft(const std::complex<double>* in, std::complex<double>* out, const Batch& batch);

}  // namespace rlforge::radar::detail
