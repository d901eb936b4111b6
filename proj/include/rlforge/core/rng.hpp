// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

namespace rlforge {

// Mixes a global seed with a stream key (frame index, timestamp bits) so that
// per-frame streams are independent of processing order.
std::uint64_t derive_seed(std::uint64_t global_seed, std::uint64_t key);
std::uint64_t derive_seed(std::uint64_t global_seed, double timestamp);

// Random source whose output is fully specified by the seed on every platform.
// std::mt19937_64 is exactly specified by the standard, the distributions are
// not, so uniform/normal draws are derived here directly from the raw bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();                          // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi);           // inclusive bounds
  double normal();                           // N(0, 1)
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rlforge
