#if EPFAMILY_BUILD_AVX2

#include "epfamily/kernels.hpp"

#include <cmath>
#include <immintrin.h>

// Vector exp/expm1/log in double precision: Cody-Waite argument reduction
// with a rational kernel for exp, and the classic s = f/(2+f) even-polynomial
// kernel for log. Tail elements fall back to libm. Accuracy is within a few
// ulp of libm across the full range, including subnormal exp results.

namespace epfamily::kernels::detail {

namespace {

const __m256d kOne = _mm256_set1_pd(1.0);
const __m256d kHalf = _mm256_set1_pd(0.5);
const __m256d kLog2E = _mm256_set1_pd(1.4426950408889634073599);
const __m256d kLn2Hi = _mm256_set1_pd(6.93145751953125e-1);
const __m256d kLn2Lo = _mm256_set1_pd(1.42860682030941723212e-6);
const __m256d kExpLo = _mm256_set1_pd(-746.0);
const __m256d kExpHi = _mm256_set1_pd(709.782712893384);
const __m256d kExpFlush = _mm256_set1_pd(-745.13321910194110842);

const __m256d kExpP0 = _mm256_set1_pd(1.26177193074810590878e-4);
const __m256d kExpP1 = _mm256_set1_pd(3.02994407707441961300e-2);
const __m256d kExpP2 = _mm256_set1_pd(9.99999999999999999910e-1);
const __m256d kExpQ0 = _mm256_set1_pd(3.00198505138664455042e-6);
const __m256d kExpQ1 = _mm256_set1_pd(2.52448340349684104192e-3);
const __m256d kExpQ2 = _mm256_set1_pd(2.27265548208155028766e-1);
const __m256d kExpQ3 = _mm256_set1_pd(2.00000000000000000005e0);

struct ExpParts {
  __m256d s;       // e^r - 1 on the reduced range
  __m256d two_n1;  // 2^(n>>1)
  __m256d two_n2;  // 2^(n - (n>>1))
  __m256d two_mn1; // 2^-(n>>1)
};

inline __m256d pow2(__m128i n32) {
  __m256i n64 = _mm256_cvtepi32_epi64(n32);
  __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  return _mm256_castsi256_pd(bits);
}

// Shared reduction: x = n*ln2 + r, s = expm1(r), n split so no 2^n overflows.
inline ExpParts exp_reduce(__m256d x) {
  x = _mm256_min_pd(_mm256_max_pd(kExpLo, x), kExpHi);
  __m256d nf = _mm256_round_pd(_mm256_mul_pd(x, kLog2E),
                               _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m128i n = _mm256_cvtpd_epi32(nf);
  __m256d r = _mm256_fnmadd_pd(nf, kLn2Hi, x);
  r = _mm256_fnmadd_pd(nf, kLn2Lo, r);

  __m256d rr = _mm256_mul_pd(r, r);
  __m256d p = _mm256_fmadd_pd(kExpP0, rr, kExpP1);
  p = _mm256_fmadd_pd(p, rr, kExpP2);
  p = _mm256_mul_pd(p, r);
  __m256d q = _mm256_fmadd_pd(kExpQ0, rr, kExpQ1);
  q = _mm256_fmadd_pd(q, rr, kExpQ2);
  q = _mm256_fmadd_pd(q, rr, kExpQ3);
  __m256d s = _mm256_div_pd(_mm256_add_pd(p, p), _mm256_sub_pd(q, p));

  __m128i n1 = _mm_srai_epi32(n, 1);
  __m128i n2 = _mm_sub_epi32(n, n1);
  return {s, pow2(n1), pow2(n2), pow2(_mm_sub_epi32(_mm_setzero_si128(), n1))};
}

inline __m256d exp_pd(__m256d x) {
  ExpParts ep = exp_reduce(x);
  __m256d e = _mm256_add_pd(ep.s, kOne);
  __m256d y = _mm256_mul_pd(_mm256_mul_pd(e, ep.two_n2), ep.two_n1);
  y = _mm256_blendv_pd(y, _mm256_setzero_pd(), _mm256_cmp_pd(x, kExpFlush, _CMP_LT_OQ));
  y = _mm256_blendv_pd(y, _mm256_set1_pd(HUGE_VAL), _mm256_cmp_pd(x, kExpHi, _CMP_GT_OQ));
  return y;
}

inline __m256d expm1_pd(__m256d x) {
  ExpParts ep = exp_reduce(x);
  // 2^n*s + (2^n - 1) regrouped so nothing overflows: n1+n2 = n
  __m256d diff = _mm256_sub_pd(ep.two_n2, ep.two_mn1);
  __m256d y = _mm256_mul_pd(ep.two_n1, _mm256_fmadd_pd(ep.s, ep.two_n2, diff));
  y = _mm256_blendv_pd(y, _mm256_set1_pd(HUGE_VAL), _mm256_cmp_pd(x, kExpHi, _CMP_GT_OQ));
  return y;
}

const __m256d kLg1 = _mm256_set1_pd(6.666666666666735130e-01);
const __m256d kLg2 = _mm256_set1_pd(3.999999999940941908e-01);
const __m256d kLg3 = _mm256_set1_pd(2.857142874366239149e-01);
const __m256d kLg4 = _mm256_set1_pd(2.222219843214978396e-01);
const __m256d kLg5 = _mm256_set1_pd(1.818357216161805012e-01);
const __m256d kLg6 = _mm256_set1_pd(1.531383769920937332e-01);
const __m256d kLg7 = _mm256_set1_pd(1.479819860511658591e-01);
const __m256d kSqrtHalf = _mm256_set1_pd(0.70710678118654752440);
const __m256d kLn2HiLog = _mm256_set1_pd(6.93147180369123816490e-01);
const __m256d kLn2LoLog = _mm256_set1_pd(1.90821492927058770002e-10);
const __m256d kDblMin = _mm256_set1_pd(2.2250738585072014e-308);

inline __m256d int64_to_pd_small(__m256i v) {
  // valid for values in [-2^31, 2^31): bias into [0, 2^52) and renormalize
  const __m256i bias = _mm256_set1_epi64x(0x4330000000000000LL + 2048);
  __m256d d = _mm256_castsi256_pd(_mm256_add_epi64(v, bias));
  return _mm256_sub_pd(d, _mm256_set1_pd(4503599627370496.0 + 2048.0));
}

inline __m256d log_pd(__m256d in) {
  __m256d sub_mask = _mm256_cmp_pd(in, kDblMin, _CMP_LT_OQ);
  __m256d x = _mm256_blendv_pd(in, _mm256_mul_pd(in, _mm256_set1_pd(0x1p54)), sub_mask);

  __m256i bits = _mm256_castpd_si256(x);
  __m256i eraw = _mm256_and_si256(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(0x7ff));
  __m256i ei = _mm256_sub_epi64(eraw, _mm256_set1_epi64x(1022));
  __m256d e = int64_to_pd_small(ei);
  e = _mm256_blendv_pd(e, _mm256_sub_pd(e, _mm256_set1_pd(54.0)), sub_mask);

  __m256i mbits = _mm256_or_si256(
      _mm256_and_si256(bits, _mm256_set1_epi64x(0x000fffffffffffffLL)),
      _mm256_set1_epi64x(0x3fe0000000000000LL));
  __m256d m = _mm256_castsi256_pd(mbits);

  __m256d adj = _mm256_cmp_pd(m, kSqrtHalf, _CMP_LT_OQ);
  m = _mm256_blendv_pd(m, _mm256_add_pd(m, m), adj);
  e = _mm256_sub_pd(e, _mm256_and_pd(adj, kOne));

  // log(m) = f - (hfsq - s*(hfsq + R)), s = f/(2+f), R an even series in s
  __m256d f = _mm256_sub_pd(m, kOne);
  __m256d s = _mm256_div_pd(f, _mm256_add_pd(_mm256_set1_pd(2.0), f));
  __m256d z2 = _mm256_mul_pd(s, s);
  __m256d w = _mm256_mul_pd(z2, z2);
  __m256d t1 = _mm256_fmadd_pd(w, kLg6, kLg4);
  t1 = _mm256_fmadd_pd(w, t1, kLg2);
  t1 = _mm256_mul_pd(w, t1);
  __m256d t2 = _mm256_fmadd_pd(w, kLg7, kLg5);
  t2 = _mm256_fmadd_pd(w, t2, kLg3);
  t2 = _mm256_fmadd_pd(w, t2, kLg1);
  t2 = _mm256_mul_pd(z2, t2);
  __m256d R = _mm256_add_pd(t1, t2);
  __m256d hfsq = _mm256_mul_pd(_mm256_mul_pd(kHalf, f), f);
  __m256d inner = _mm256_fmadd_pd(s, _mm256_add_pd(hfsq, R), _mm256_mul_pd(e, kLn2LoLog));
  __m256d r = _mm256_sub_pd(f, _mm256_sub_pd(hfsq, inner));
  r = _mm256_fmadd_pd(e, kLn2HiLog, r);

  __m256d zero = _mm256_setzero_pd();
  r = _mm256_blendv_pd(r, _mm256_set1_pd(-HUGE_VAL), _mm256_cmp_pd(in, zero, _CMP_EQ_OQ));
  __m256d bad = _mm256_or_pd(_mm256_cmp_pd(in, zero, _CMP_LT_OQ),
                             _mm256_cmp_pd(in, in, _CMP_UNORD_Q));
  r = _mm256_blendv_pd(r, _mm256_set1_pd(std::nan("")), bad);
  r = _mm256_blendv_pd(r, in, _mm256_cmp_pd(in, _mm256_set1_pd(HUGE_VAL), _CMP_EQ_OQ));
  return r;
}

} // namespace

void exp_v_avx2(const double* x, double* y, std::size_t n) noexcept {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, exp_pd(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) y[i] = std::exp(x[i]);
}

void expm1_v_avx2(const double* x, double* y, std::size_t n) noexcept {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, expm1_pd(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) y[i] = std::expm1(x[i]);
}

void log_v_avx2(const double* x, double* y, std::size_t n) noexcept {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, log_pd(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) y[i] = std::log(x[i]);
}

} // namespace epfamily::kernels::detail

#endif
