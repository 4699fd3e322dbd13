// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstddef>

#include "entrobound/kernels.hpp"

namespace entrobound::kernels {

namespace {

void scalar_log_map(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::log(x[i]);
}

void scalar_eta_map(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = x[i] == 0.0 ? 0.0 : -(x[i] * std::log(x[i]));
  }
}

bool always() { return true; }

}  // namespace

const Backend& scalar_backend() {
  static const Backend b{"scalar", always, scalar_log_map, scalar_eta_map};
  return b;
}

}  // namespace entrobound::kernels
