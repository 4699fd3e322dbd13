// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0
//
// AVX2+FMA variant of the log/eta maps.  Compiled with -mavx2 -mfma and
// entered only after a runtime CPU check.  Remainder lanes go through the
// scalar mirror in kernels_common.hpp, so results are independent of how
// the length splits into vector widths.

#if defined(ENTROBOUND_X86_KERNELS)

#include <immintrin.h>

#include <cfloat>
#include <cstddef>
#include <cstdint>

#include "entrobound/kernels.hpp"
#include "kernels_common.hpp"

namespace entrobound::kernels::detail {

namespace {

// Exact conversion of int64 lanes in [0, 2^52) to double.
inline __m256d u64_small_to_pd(__m256i v) {
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
  const __m256d biased = _mm256_castsi256_pd(_mm256_or_si256(v, magic));
  return _mm256_sub_pd(biased, _mm256_set1_pd(0x1p52));
}

inline __m256d log4(__m256d x) {
  const __m256d sub_mask = _mm256_cmp_pd(x, _mm256_set1_pd(DBL_MIN), _CMP_LT_OQ);
  const __m256d xs =
      _mm256_blendv_pd(x, _mm256_mul_pd(x, _mm256_set1_pd(0x1p54)), sub_mask);
  const __m256d adj = _mm256_and_pd(sub_mask, _mm256_set1_pd(54.0));

  const __m256i bits = _mm256_castpd_si256(xs);
  __m256d e = u64_small_to_pd(_mm256_srli_epi64(bits, 52));
  e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));
  e = _mm256_sub_pd(e, adj);

  const __m256i mbits =
      _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(static_cast<long long>(MANTISSA_MASK))),
                      _mm256_set1_epi64x(static_cast<long long>(ONE_BITS)));
  __m256d m = _mm256_castsi256_pd(mbits);
  const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(SQRT2), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d z = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d w = _mm256_mul_pd(z, z);
  __m256d q = _mm256_set1_pd(LOG_C8);
  q = _mm256_fmadd_pd(q, w, _mm256_set1_pd(LOG_C7));
  q = _mm256_fmadd_pd(q, w, _mm256_set1_pd(LOG_C6));
  q = _mm256_fmadd_pd(q, w, _mm256_set1_pd(LOG_C5));
  q = _mm256_fmadd_pd(q, w, _mm256_set1_pd(LOG_C4));
  q = _mm256_fmadd_pd(q, w, _mm256_set1_pd(LOG_C3));
  q = _mm256_fmadd_pd(q, w, _mm256_set1_pd(LOG_C2));
  q = _mm256_fmadd_pd(q, w, _mm256_set1_pd(LOG_C1));
  q = _mm256_fmadd_pd(q, w, _mm256_set1_pd(LOG_C0));
  const __m256d p = _mm256_fmadd_pd(_mm256_mul_pd(z, w), q, _mm256_add_pd(z, z));
  return _mm256_fmadd_pd(e, _mm256_set1_pd(LN2_HI),
                         _mm256_fmadd_pd(e, _mm256_set1_pd(LN2_LO), p));
}

void avx2_log_map(const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, log4(_mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) out[i] = poly_log(x[i]);
}

void avx2_eta_map(const double* x, double* out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d tiny = _mm256_set1_pd(DBL_MIN);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d l = log4(v);
    __m256d eta = _mm256_fnmadd_pd(v, l, zero);
    eta = _mm256_andnot_pd(_mm256_cmp_pd(v, tiny, _CMP_LT_OQ), eta);
    _mm256_storeu_pd(out + i, eta);
  }
  for (; i < n; ++i) out[i] = poly_eta(x[i]);
}

bool avx2_available() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

}  // namespace

const Backend& avx2_impl() {
  static const Backend b{"avx2", avx2_available, avx2_log_map, avx2_eta_map};
  return b;
}

}  // namespace entrobound::kernels::detail

#endif  // ENTROBOUND_X86_KERNELS
