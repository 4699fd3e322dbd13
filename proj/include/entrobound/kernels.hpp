// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0
//
// Elementwise log/eta kernels with runtime-dispatched SIMD variants, plus a
// small batched reduction used by the sweep experiments.
//
// The scalar backend is the reference (libm); the vector backends implement
// the same maps with a polynomial log core and are equivalence-tested
// against the reference.  Dispatch picks the widest supported backend, and
// the environment variable ENTROBOUND_KERNELS (auto|scalar|avx2|avx512)
// overrides the choice.  Every report records the backend that produced it.

#pragma once

#include <cstddef>
#include <vector>

namespace entrobound::kernels {

struct Backend {
  const char* name;
  // True when the current CPU can execute this backend.
  bool (*available)();
  // out[i] = log(x[i]).  Precondition: x[i] > 0 and finite.  Subnormal
  // inputs are handled (prescaled); zero/negative/non-finite inputs are
  // outside the contract.
  void (*log_map)(const double* x, double* out, std::size_t n);
  // out[i] = -x[i]*log(x[i]) with inputs below DBL_MIN (including zero)
  // mapping to exactly 0.  Precondition: x[i] >= 0 and finite.
  void (*eta_map)(const double* x, double* out, std::size_t n);
};

// The reference backend; always available.
const Backend& scalar_backend();

// Vector backends; null on targets where they are not compiled in.
// available() must still be consulted before calling into a non-null one.
const Backend* avx2_backend();
const Backend* avx512_backend();

// All compiled-in backends (for equivalence tests).
std::vector<const Backend*> compiled_backends();

// The backend selected for this process: the ENTROBOUND_KERNELS override
// when it names a supported backend, otherwise the widest supported one.
const Backend& active_backend();

// Per-row s1 (natural log) and e2 over a row-major panel of `rows` spectra
// of length `n`.  Entries must be nonnegative; rows need not be sorted or
// normalized (both functionals are symmetric).  `eta_scratch` must hold
// rows*n doubles.  The eta pass runs through the supplied backend; the
// per-row reductions are scalar.
void batch_s1_e2(const double* panel, std::size_t rows, std::size_t n,
                 const Backend& backend, double* eta_scratch,
                 double* out_s1, double* out_e2);

}  // namespace entrobound::kernels
