// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0

#include "entrobound/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace entrobound::kernels {

#if defined(ENTROBOUND_X86_KERNELS)
namespace detail {
const Backend& avx2_impl();
const Backend& avx512_impl();
}  // namespace detail

const Backend* avx2_backend() { return &detail::avx2_impl(); }
const Backend* avx512_backend() { return &detail::avx512_impl(); }
#else
const Backend* avx2_backend() { return nullptr; }
const Backend* avx512_backend() { return nullptr; }
#endif

std::vector<const Backend*> compiled_backends() {
  std::vector<const Backend*> out{&scalar_backend()};
  if (const Backend* b = avx2_backend()) out.push_back(b);
  if (const Backend* b = avx512_backend()) out.push_back(b);
  return out;
}

namespace {

const Backend& widest_supported() {
  if (const Backend* b = avx512_backend(); b && b->available()) return *b;
  if (const Backend* b = avx2_backend(); b && b->available()) return *b;
  return scalar_backend();
}

const Backend& choose_backend() {
  const char* env = std::getenv("ENTROBOUND_KERNELS");
  const std::string req = env ? env : "auto";
  if (req == "scalar") return scalar_backend();
  if (req == "avx2") {
    if (const Backend* b = avx2_backend(); b && b->available()) return *b;
  } else if (req == "avx512") {
    if (const Backend* b = avx512_backend(); b && b->available()) return *b;
  }
  // "auto", unknown names, and unsupported requests fall back to the widest
  // backend this machine can run.
  return widest_supported();
}

}  // namespace

const Backend& active_backend() {
  static const Backend& chosen = choose_backend();
  return chosen;
}

void batch_s1_e2(const double* panel, std::size_t rows, std::size_t n,
                 const Backend& backend, double* eta_scratch,
                 double* out_s1, double* out_e2) {
  backend.eta_map(panel, eta_scratch, rows * n);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* x = panel + r * n;
    const double* h = eta_scratch + r * n;
    double sum = 0.0, sumsq = 0.0, eta_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += x[i];
      sumsq += x[i] * x[i];
      eta_sum += h[i];
    }
    const double eta_of_sum =
        (sum == 0.0 || sum == 1.0) ? 0.0 : -(sum * std::log(sum));
    out_s1[r] = std::max(0.0, eta_sum - eta_of_sum);
    out_e2[r] = std::max(0.0, 0.5 * (sum * sum - sumsq));
  }
}

}  // namespace entrobound::kernels
