// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "rlforge/core/error.hpp"

namespace rlforge::radar::detail {
namespace {

using Key = std::tuple<int, int, int, int, int, int, bool, bool>;

struct PlanCache {
  std::mutex mutex;
  std::map<Key, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

std::size_t extent(int n, int howmany, int stride, int dist) {
  return static_cast<std::size_t>(n - 1) * stride + static_cast<std::size_t>(howmany - 1) * dist + 1;
}

fftw_plan plan_for(const Batch& b, bool in_place, bool aligned) {
  auto& c = cache();
  std::lock_guard lock(c.mutex);
  const Key key{b.n, b.howmany, b.istride, b.idist, b.ostride, b.odist, in_place, aligned};
  if (auto it = c.plans.find(key); it != c.plans.end()) return it->second;
  const std::size_t in_size = extent(b.n, b.howmany, b.istride, b.idist);
  const std::size_t out_size = extent(b.n, b.howmany, b.ostride, b.odist);
  auto* in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * std::max(in_size, out_size)));
  auto* out = in_place ? in : static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * out_size));
  const unsigned flags = FFTW_ESTIMATE | (aligned ? 0u : FFTW_UNALIGNED);
  int n = b.n;
  fftw_plan plan = fftw_plan_many_dft(1, &n, b.howmany, in, nullptr, b.istride, b.idist, out, nullptr, b.ostride,
                                      b.odist, FFTW_FORWARD, flags);
  if (out != in) fftw_free(out);
  fftw_free(in);
  if (plan == nullptr) throw ConfigError("FFTW could not create a plan");
  c.plans.emplace(key, plan);
  return plan;
}

}  // namespace

void forward_dft(const std::complex<double>* in, std::complex<double>* out, const Batch& batch) {
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in));
  auto* dst = reinterpret_cast<fftw_complex*>(out);
  const bool aligned = fftw_alignment_of(reinterpret_cast<double*>(src)) == 0 &&
                       fftw_alignment_of(reinterpret_cast<double*>(dst)) == 0;
  // Out-of-place complex plans leave their input untouched.
  fftw_execute_dft(plan_for(batch, src == dst, aligned), src, dst);
}

}  // namespace rlforge::radar::detail
