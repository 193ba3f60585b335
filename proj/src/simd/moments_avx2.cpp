// Compiled with -mavx2 -mfma; only reached when the CPU reports both.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "dgldpc/simd/moments.hpp"

namespace dgldpc::simd {

namespace {

// exp(x) for x <= 0. Cody-Waite reduction x = n ln2 + r, |r| <= ln2/2,
// then a degree-13 Taylor polynomial (truncation < 1e-17 relative).
// Inputs below -708 flush to zero.
__m256d exp_nonpositive(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  const __m256d underflow = _mm256_set1_pd(-708.0);

  const __m256d dead = _mm256_cmp_pd(x, underflow, _CMP_LT_OQ);
  x = _mm256_max_pd(x, underflow);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
  r = _mm256_fnmadd_pd(n, ln2_lo, r);

  static constexpr double kInvFact[] = {
      1.0,
      1.0,
      1.0 / 2,
      1.0 / 6,
      1.0 / 24,
      1.0 / 120,
      1.0 / 720,
      1.0 / 5040,
      1.0 / 40320,
      1.0 / 362880,
      1.0 / 3628800,
      1.0 / 39916800,
      1.0 / 479001600,
      1.0 / 6227020800.0,
  };
  __m256d p = _mm256_set1_pd(kInvFact[13]);
  for (int i = 12; i >= 0; --i) {
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(kInvFact[i]));
  }

  // 2^n through the exponent field; n >= -1022 after the clamp above.
  const __m128i n32 = _mm256_cvtpd_epi32(n);
  const __m256i n64 = _mm256_cvtepi32_epi64(n32);
  const __m256i bits =
      _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  const __m256d scale = _mm256_castsi256_pd(bits);

  return _mm256_andnot_pd(dead, _mm256_mul_pd(p, scale));
}

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

}  // namespace

Moments moments_avx2(const MonomialSpan& terms, double lx, double ly) {
  const std::size_t n = terms.log_coeff.size();
  const double* lc = terms.log_coeff.data();
  const double* us = terms.u.data();
  const double* vs = terms.v.data();
  const std::size_t body = n - n % 4;

  const __m256d vlx = _mm256_set1_pd(lx);
  const __m256d vly = _mm256_set1_pd(ly);
  auto exponent = [&](std::size_t i) {
    return _mm256_fmadd_pd(_mm256_loadu_pd(vs + i), vly,
                           _mm256_fmadd_pd(_mm256_loadu_pd(us + i), vlx,
                                           _mm256_loadu_pd(lc + i)));
  };

  const double neg_inf = -std::numeric_limits<double>::infinity();
  __m256d vmax = _mm256_set1_pd(neg_inf);
  for (std::size_t i = 0; i < body; i += 4) vmax = _mm256_max_pd(vmax, exponent(i));
  double wmax = hmax(vmax);
  for (std::size_t i = body; i < n; ++i) {
    wmax = std::max(wmax, lc[i] + us[i] * lx + vs[i] * ly);
  }

  const __m256d vwmax = _mm256_set1_pd(wmax);
  __m256d s0 = _mm256_setzero_pd(), su = s0, sv = s0, suu = s0, suv = s0, svv = s0;
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d e = exp_nonpositive(_mm256_sub_pd(exponent(i), vwmax));
    const __m256d u = _mm256_loadu_pd(us + i);
    const __m256d v = _mm256_loadu_pd(vs + i);
    const __m256d eu = _mm256_mul_pd(e, u);
    const __m256d ev = _mm256_mul_pd(e, v);
    s0 = _mm256_add_pd(s0, e);
    su = _mm256_add_pd(su, eu);
    sv = _mm256_add_pd(sv, ev);
    suu = _mm256_fmadd_pd(eu, u, suu);
    suv = _mm256_fmadd_pd(eu, v, suv);
    svv = _mm256_fmadd_pd(ev, v, svv);
  }
  double t0 = hsum(s0), tu = hsum(su), tv = hsum(sv);
  double tuu = hsum(suu), tuv = hsum(suv), tvv = hsum(svv);
  for (std::size_t i = body; i < n; ++i) {
    const double e = std::exp(lc[i] + us[i] * lx + vs[i] * ly - wmax);
    t0 += e;
    tu += e * us[i];
    tv += e * vs[i];
    tuu += e * us[i] * us[i];
    tuv += e * us[i] * vs[i];
    tvv += e * vs[i] * vs[i];
  }

  Moments m;
  m.log_sum = wmax + std::log(t0);
  m.mean_u = tu / t0;
  m.mean_v = tv / t0;
  m.var_u = std::max(0.0, tuu / t0 - m.mean_u * m.mean_u);
  m.cov_uv = tuv / t0 - m.mean_u * m.mean_v;
  m.var_v = std::max(0.0, tvv / t0 - m.mean_v * m.mean_v);
  return m;
}

}  // namespace dgldpc::simd
