// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0
//
// Shared constants and the scalar mirror of the vectorized log core, used
// by the SIMD translation units for their remainder lanes so a backend's
// output does not depend on how the input length splits into vector widths.

#pragma once

#include <bit>
#include <cfloat>
#include <cmath>
#include <cstdint>

namespace entrobound::kernels::detail {

// log(2) split so that e*LN2_HI is exact for |e| < 2^10 (the low bits of
// LN2_HI are zero), keeping the exponent contribution correctly rounded.
inline constexpr double LN2_HI = 6.93147180369123816490e-01;
inline constexpr double LN2_LO = 1.90821492927058770002e-10;
inline constexpr double SQRT2 = 1.41421356237309504880;

// atanh series: log(m) = 2z + z^3*q(z^2), z = (m-1)/(m+1), coefficients
// 2/(2j+3).  With m in [sqrt(2)/2, sqrt(2)], |z| <= 0.1716 and the first
// omitted term is below 1e-16 relative.
inline constexpr double LOG_C0 = 2.0 / 3.0;
inline constexpr double LOG_C1 = 2.0 / 5.0;
inline constexpr double LOG_C2 = 2.0 / 7.0;
inline constexpr double LOG_C3 = 2.0 / 9.0;
inline constexpr double LOG_C4 = 2.0 / 11.0;
inline constexpr double LOG_C5 = 2.0 / 13.0;
inline constexpr double LOG_C6 = 2.0 / 15.0;
inline constexpr double LOG_C7 = 2.0 / 17.0;
inline constexpr double LOG_C8 = 2.0 / 19.0;

inline constexpr std::uint64_t MANTISSA_MASK = 0x000FFFFFFFFFFFFFULL;
inline constexpr std::uint64_t ONE_BITS = 0x3FF0000000000000ULL;

// Scalar evaluation with the same operation order as the vector lanes.
inline double poly_log(double x) {
  double adj = 0.0;
  if (x < DBL_MIN) {  // prescale subnormals into the normal range
    x *= 0x1p54;
    adj = 54.0;
  }
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
  double e = static_cast<double>(bits >> 52) - 1023.0 - adj;
  double m = std::bit_cast<double>((bits & MANTISSA_MASK) | ONE_BITS);
  if (m > SQRT2) {
    m *= 0.5;
    e += 1.0;
  }
  const double z = (m - 1.0) / (m + 1.0);
  const double w = z * z;
  double q = LOG_C8;
  q = std::fma(q, w, LOG_C7);
  q = std::fma(q, w, LOG_C6);
  q = std::fma(q, w, LOG_C5);
  q = std::fma(q, w, LOG_C4);
  q = std::fma(q, w, LOG_C3);
  q = std::fma(q, w, LOG_C2);
  q = std::fma(q, w, LOG_C1);
  q = std::fma(q, w, LOG_C0);
  const double p = std::fma(z * w, q, z + z);
  return std::fma(e, LN2_HI, std::fma(e, LN2_LO, p));
}

inline double poly_eta(double x) {
  if (x < DBL_MIN) return 0.0;
  return -(x * poly_log(x));
}

}  // namespace entrobound::kernels::detail
