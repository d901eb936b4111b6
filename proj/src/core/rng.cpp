// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/core/rng.hpp"

#include <bit>
#include <cmath>

namespace rlforge {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr double kZigguratR = 3.6541528853610088;
constexpr double kZigguratV = 0.00492867323399;

struct ZigguratTables {
  double x[257];
  double f[257];
};

const ZigguratTables& ziggurat() {
  static const ZigguratTables tables = [] {
    ZigguratTables t{};
    const double fr = std::exp(-0.5 * kZigguratR * kZigguratR);
    t.x[0] = kZigguratV / fr;
    t.x[1] = kZigguratR;
    for (int i = 1; i < 255; ++i) t.x[i + 1] = std::sqrt(-2.0 * std::log(kZigguratV / t.x[i] + std::exp(-0.5 * t.x[i] * t.x[i])));
    t.x[256] = 0.0;
    for (int i = 0; i <= 256; ++i) t.f[i] = std::exp(-0.5 * t.x[i] * t.x[i]);
    return t;
  }();
  return tables;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t global_seed, std::uint64_t key) {
  return splitmix64(splitmix64(global_seed) ^ key);
}

std::uint64_t derive_seed(std::uint64_t global_seed, double timestamp) {
  return derive_seed(global_seed, std::bit_cast<std::uint64_t>(timestamp));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

double Rng::normal() {
  // Ziggurat with 256 layers (Marsaglia & Tsang). One 64-bit draw covers the
  // layer index, the sign and a 53-bit abscissa.
  const ZigguratTables& t = ziggurat();
  for (;;) {
    const std::uint64_t bits = engine_();
    const int i = static_cast<int>(bits & 0xff);
    const double sign = 1.0 - 2.0 * static_cast<double>((bits >> 8) & 1);
    const double x = static_cast<double>(bits >> 11) * 0x1.0p-53 * t.x[i];
    if (x < t.x[i + 1]) return sign * x;
    if (i == 0) {
      double a = 0.0, b = 0.0;
      do {
        a = -std::log(1.0 - uniform()) / kZigguratR;
        b = -std::log(1.0 - uniform());
      } while (2.0 * b < a * a);
      const double tail = kZigguratR + a;
      return sign * tail;
    }
    if (t.f[i + 1] + uniform() * (t.f[i] - t.f[i + 1]) < std::exp(-0.5 * x * x)) return sign * x;
  }
}

}  // namespace rlforge
