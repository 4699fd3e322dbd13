// Copyright The entrobound Authors
// SPDX-License-Identifier: Apache-2.0
//
// AVX-512F variant of the log/eta maps.  Same structure as the AVX2 path
// with eight lanes and predicate masks; remainder lanes use the scalar
// mirror so results are lane-width independent.

#if defined(ENTROBOUND_X86_KERNELS)

#include <immintrin.h>

#include <cfloat>
#include <cstddef>
#include <cstdint>

#include "entrobound/kernels.hpp"
#include "kernels_common.hpp"

namespace entrobound::kernels::detail {

namespace {

inline __m512d u64_small_to_pd(__m512i v) {
  const __m512i magic = _mm512_set1_epi64(0x4330000000000000LL);
  const __m512d biased = _mm512_castsi512_pd(_mm512_or_epi64(v, magic));
  return _mm512_sub_pd(biased, _mm512_set1_pd(0x1p52));
}

inline __m512d log8(__m512d x) {
  const __mmask8 sub_mask = _mm512_cmp_pd_mask(x, _mm512_set1_pd(DBL_MIN), _CMP_LT_OQ);
  const __m512d xs = _mm512_mask_mul_pd(x, sub_mask, x, _mm512_set1_pd(0x1p54));
  const __m512d adj = _mm512_maskz_mov_pd(sub_mask, _mm512_set1_pd(54.0));

  const __m512i bits = _mm512_castpd_si512(xs);
  __m512d e = u64_small_to_pd(_mm512_srli_epi64(bits, 52));
  e = _mm512_sub_pd(e, _mm512_set1_pd(1023.0));
  e = _mm512_sub_pd(e, adj);

  const __m512i mbits =
      _mm512_or_epi64(_mm512_and_epi64(bits, _mm512_set1_epi64(static_cast<long long>(MANTISSA_MASK))),
                      _mm512_set1_epi64(static_cast<long long>(ONE_BITS)));
  __m512d m = _mm512_castsi512_pd(mbits);
  const __mmask8 big = _mm512_cmp_pd_mask(m, _mm512_set1_pd(SQRT2), _CMP_GT_OQ);
  m = _mm512_mask_mul_pd(m, big, m, _mm512_set1_pd(0.5));
  e = _mm512_mask_add_pd(e, big, e, _mm512_set1_pd(1.0));

  const __m512d one = _mm512_set1_pd(1.0);
  const __m512d z = _mm512_div_pd(_mm512_sub_pd(m, one), _mm512_add_pd(m, one));
  const __m512d w = _mm512_mul_pd(z, z);
  __m512d q = _mm512_set1_pd(LOG_C8);
  q = _mm512_fmadd_pd(q, w, _mm512_set1_pd(LOG_C7));
  q = _mm512_fmadd_pd(q, w, _mm512_set1_pd(LOG_C6));
  q = _mm512_fmadd_pd(q, w, _mm512_set1_pd(LOG_C5));
  q = _mm512_fmadd_pd(q, w, _mm512_set1_pd(LOG_C4));
  q = _mm512_fmadd_pd(q, w, _mm512_set1_pd(LOG_C3));
  q = _mm512_fmadd_pd(q, w, _mm512_set1_pd(LOG_C2));
  q = _mm512_fmadd_pd(q, w, _mm512_set1_pd(LOG_C1));
  q = _mm512_fmadd_pd(q, w, _mm512_set1_pd(LOG_C0));
  const __m512d p = _mm512_fmadd_pd(_mm512_mul_pd(z, w), q, _mm512_add_pd(z, z));
  return _mm512_fmadd_pd(e, _mm512_set1_pd(LN2_HI),
                         _mm512_fmadd_pd(e, _mm512_set1_pd(LN2_LO), p));
}

void avx512_log_map(const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm512_storeu_pd(out + i, log8(_mm512_loadu_pd(x + i)));
  }
  for (; i < n; ++i) out[i] = poly_log(x[i]);
}

void avx512_eta_map(const double* x, double* out, std::size_t n) {
  const __m512d zero = _mm512_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m512d v = _mm512_loadu_pd(x + i);
    const __m512d l = log8(v);
    __m512d eta = _mm512_fnmadd_pd(v, l, zero);
    const __mmask8 keep = _mm512_cmp_pd_mask(v, _mm512_set1_pd(DBL_MIN), _CMP_GE_OQ);
    eta = _mm512_maskz_mov_pd(keep, eta);
    _mm512_storeu_pd(out + i, eta);
  }
  for (; i < n; ++i) out[i] = poly_eta(x[i]);
}

bool avx512_available() { return __builtin_cpu_supports("avx512f"); }

}  // namespace

const Backend& avx512_impl() {
  static const Backend b{"avx512", avx512_available, avx512_log_map, avx512_eta_map};
  return b;
}

}  // namespace entrobound::kernels::detail

#endif  // ENTROBOUND_X86_KERNELS
