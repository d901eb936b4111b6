// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/radar/cfar.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "rlforge/core/error.hpp"
#include "rlforge/radar/cartesian.hpp"

namespace rlforge::radar {

void CfarParams::validate() const {
  if (guard_range < 0 || guard_doppler < 0 || train_range < 0 || train_doppler < 0) {
    throw ConfigError("CFAR window sizes must be >= 0");
  }
  if (training_cells() <= 0) throw ConfigError("CFAR window has no training cells");
  if (!(false_alarm_rate > 0 && false_alarm_rate < 1)) throw ConfigError("CFAR false alarm rate must be in (0, 1)");
}

int CfarParams::training_cells() const {
  const int outer = (2 * (guard_range + train_range) + 1) * (2 * (guard_doppler + train_doppler) + 1);
  const int inner = (2 * guard_range + 1) * (2 * guard_doppler + 1);
  return outer - inner;
}

double CfarParams::threshold_scale() const {
  const double n = training_cells();
  return n * (std::pow(false_alarm_rate, -1.0 / n) - 1.0);
}

namespace {

// Parabolic vertex offset through three samples, clamped to half a bin.
double parabolic_offset(double ym, double y0, double yp) {
  const double denom = ym - 2.0 * y0 + yp;
  if (!(std::abs(denom) > 1e-15)) return 0.0;
  return std::clamp(0.5 * (ym - yp) / denom, -0.5, 0.5);
}

}  // namespace

CfarResult cfar_detect(const RdaCube& cube, const CfarParams& params) {
  params.validate();
  const int nr = cube.range_bins;
  const int nd = cube.doppler_bins;
  const int na = cube.azimuth_bins;
  const int hr = params.guard_range + params.train_range;
  const int hd = params.guard_doppler + params.train_doppler;
  if (2 * hr + 1 > nr || 2 * hd + 1 > nd) {
    throw ConfigError(fmt::format("CFAR window {}x{} does not fit a {}x{} range-Doppler slice", 2 * hr + 1,
                                  2 * hd + 1, nr, nd));
  }
  CfarResult result;
  if (na == 0) return result;

  const double alpha = params.threshold_scale() / params.training_cells();
  const int ndx = nd + 2 * hd;  // Doppler extended by wrap-around on both sides
  const std::size_t pw = static_cast<std::size_t>(ndx) + 1;
  std::vector<std::uint8_t> hit(static_cast<std::size_t>(nr) * nd * na, 0);

  // A few azimuth slices are gathered per pass over the cube to keep the
  // strided reads cache-friendly.
  constexpr int kChunk = 8;
  std::vector<double> power(static_cast<std::size_t>(kChunk) * nr * nd);
  std::vector<double> prefix(static_cast<std::size_t>(nr + 1) * pw);
  for (int a0 = 0; a0 < na; a0 += kChunk) {
    const int count = std::min(kChunk, na - a0);
    for (int r = 0; r < nr; ++r) {
      for (int d = 0; d < nd; ++d) {
        const Complex* cell = cube.data.data() + cube.index(r, d, a0);
        for (int k = 0; k < count; ++k) {
          power[(static_cast<std::size_t>(k) * nr + r) * nd + d] = std::norm(cell[k]);
        }
      }
    }
    for (int k = 0; k < count; ++k) {
      const double* p = power.data() + static_cast<std::size_t>(k) * nr * nd;
      std::fill(prefix.begin(), prefix.begin() + pw, 0.0);
      for (int r = 0; r < nr; ++r) {
        double running = 0.0;
        const double* row = p + static_cast<std::size_t>(r) * nd;
        double* out = prefix.data() + static_cast<std::size_t>(r + 1) * pw;
        const double* above = prefix.data() + static_cast<std::size_t>(r) * pw;
        out[0] = 0.0;
        for (int e = 0; e < ndx; ++e) {
          running += row[((e - hd) % nd + nd) % nd];
          out[e + 1] = above[e + 1] + running;
        }
      }
      // Sum over rows [r0, r1) and extended Doppler columns [c0, c1).
      auto box = [&](int r0, int r1, int c0, int c1) {
        const double* lo = prefix.data() + static_cast<std::size_t>(r0) * pw;
        const double* hi = prefix.data() + static_cast<std::size_t>(r1) * pw;
        return hi[c1] - hi[c0] - lo[c1] + lo[c0];
      };
      const int a = a0 + k;
      for (int r = hr; r < nr - hr; ++r) {
        for (int d = 0; d < nd; ++d) {
          const int e = d + hd;  // extended column of cell d
          const double outer = box(r - hr, r + hr + 1, e - hd, e + hd + 1);
          const double inner = box(r - params.guard_range, r + params.guard_range + 1, e - params.guard_doppler,
                                   e + params.guard_doppler + 1);
          const double noise = std::max(outer - inner, 0.0);
          ++result.cells_tested;
          if (p[static_cast<std::size_t>(r) * nd + d] > alpha * noise) {
            hit[cube.index(r, d, a)] = 1;
            ++result.crossings;
          }
        }
      }
    }
  }

  // Group crossings into 26-connected components and keep each peak.
  std::vector<std::size_t> stack;
  for (std::size_t seed = 0; seed < hit.size(); ++seed) {
    if (hit[seed] != 1) continue;
    hit[seed] = 2;
    stack.assign(1, seed);
    std::size_t peak = seed;
    double peak_power = std::norm(cube.data[seed]);
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      const double pv = std::norm(cube.data[idx]);
      if (pv > peak_power || (pv == peak_power && idx < peak)) {
        peak_power = pv;
        peak = idx;
      }
      const int a = static_cast<int>(idx % na);
      const int d = static_cast<int>((idx / na) % nd);
      const int r = static_cast<int>(idx / (static_cast<std::size_t>(na) * nd));
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dd = -1; dd <= 1; ++dd) {
          for (int da = -1; da <= 1; ++da) {
            const int rr = r + dr, dq = d + dd, aa = a + da;
            if (rr < 0 || rr >= nr || dq < 0 || dq >= nd || aa < 0 || aa >= na) continue;
            const std::size_t n = cube.index(rr, dq, aa);
            if (hit[n] == 1) {
              hit[n] = 2;
              stack.push_back(n);
            }
          }
        }
      }
    }

    const int a = static_cast<int>(peak % na);
    const int d = static_cast<int>((peak / na) % nd);
    const int r = static_cast<int>(peak / (static_cast<std::size_t>(na) * nd));
    auto db_at = [&](int rr, int dq, int aa) { return magnitude_db(std::abs(cube.at(rr, dq, aa))); };
    const double y0 = db_at(r, d, a);
    const double dr = (r > 0 && r + 1 < nr) ? parabolic_offset(db_at(r - 1, d, a), y0, db_at(r + 1, d, a)) : 0.0;
    const double dd = parabolic_offset(db_at(r, (d + nd - 1) % nd, a), y0, db_at(r, (d + 1) % nd, a));
    const double da = (a > 0 && a + 1 < na) ? parabolic_offset(db_at(r, d, a - 1), y0, db_at(r, d, a + 1)) : 0.0;

    Target t;
    t.range_bin = r;
    t.doppler_bin = d;
    t.azimuth_bin = a;
    t.magnitude_db = y0;
    const double range_step = cube.range_axis.size() > 1 ? cube.range_axis[1] - cube.range_axis[0] : 0.0;
    const double vel_step = cube.velocity_axis.size() > 1 ? cube.velocity_axis[1] - cube.velocity_axis[0] : 0.0;
    t.range_m = cube.range_axis[r] + dr * range_step;
    t.velocity_mps = cube.velocity_axis[d] + dd * vel_step;
    // Azimuth bins are uniform in sin(theta), so interpolate there.
    const double s0 = std::sin(deg_to_rad(cube.azimuth_axis[a]));
    double s = s0;
    if (na > 1) {
      const int nb = a + 1 < na ? a + 1 : a - 1;
      const double ds = (std::sin(deg_to_rad(cube.azimuth_axis[nb])) - s0) / (nb - a);
      s = std::clamp(s0 + da * ds, -1.0, 1.0);
    }
    t.azimuth_deg = rad_to_deg(std::asin(s));
    t.world = polar_to_world(t.range_m, t.azimuth_deg, cube.meta.pose);
    result.targets.push_back(t);
  }
  return result;
}

}  // namespace rlforge::radar
