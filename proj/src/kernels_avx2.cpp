// AVX2+FMA kernel variants. Compiled with -mavx2 -mfma; only executed when
// runtime dispatch in kernels.cpp selects them.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>

#include "kiri/kernels.hpp"

#if KIRI_HAVE_AVX2_KERNELS

#include <immintrin.h>

namespace kiri::kernels::avx2 {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// exp for 4 doubles, cephes-style rational approximation after Cody-Waite
// range reduction. Accurate to ~1 ulp over the normal range; returns 0 below
// -708.39 (covers -inf) and +inf above 709.78.
inline __m256d exp_pd(__m256d x) {
  const __m256d hi = _mm256_set1_pd(709.782712893383996843);
  const __m256d lo = _mm256_set1_pd(-708.396418532264078749);
  const __m256d log2e = _mm256_set1_pd(1.44269504088896340736);
  const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);

  const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
  const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
  const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
  const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
  const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
  const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
  const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);

  const __m256d underflow = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  const __m256d overflow = _mm256_cmp_pd(x, hi, _CMP_GT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
  r = _mm256_fnmadd_pd(n, ln2_lo, r);
  const __m256d r2 = _mm256_mul_pd(r, r);

  __m256d px = _mm256_fmadd_pd(p0, r2, p1);
  px = _mm256_fmadd_pd(px, r2, p2);
  px = _mm256_mul_pd(px, r);
  __m256d qx = _mm256_fmadd_pd(q0, r2, q1);
  qx = _mm256_fmadd_pd(qx, r2, q2);
  qx = _mm256_fmadd_pd(qx, r2, q3);
  // exp(r) = 1 + 2 px / (qx - px)
  const __m256d e = _mm256_add_pd(
      _mm256_set1_pd(1.0),
      _mm256_div_pd(_mm256_add_pd(px, px), _mm256_sub_pd(qx, px)));

  // 2^n via exponent bits, in two stages so n = 1024 (x near the upper
  // clamp) stays representable: 2^n = 2^(n>>1) * 2^(n - (n>>1)).
  const __m128i n32 = _mm256_cvtpd_epi32(n);
  const __m128i half32 = _mm_srai_epi32(n32, 1);
  const __m256i n64 = _mm256_cvtepi32_epi64(n32);
  const __m256i half64 = _mm256_cvtepi32_epi64(half32);
  const __m256i bias = _mm256_set1_epi64x(1023);
  const __m256i bits_a = _mm256_slli_epi64(_mm256_add_epi64(half64, bias), 52);
  const __m256i bits_b = _mm256_slli_epi64(
      _mm256_add_epi64(_mm256_sub_epi64(n64, half64), bias), 52);
  __m256d result = _mm256_mul_pd(e, _mm256_castsi256_pd(bits_a));
  result = _mm256_mul_pd(result, _mm256_castsi256_pd(bits_b));

  result = _mm256_andnot_pd(underflow, result);
  result = _mm256_blendv_pd(result,
                            _mm256_set1_pd(std::numeric_limits<double>::infinity()),
                            overflow);
  return result;
}

inline double hadd_pd(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax_pd(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

}  // namespace

double logsumexp(const double* x, std::size_t n) {
  std::size_t i = 0;
  __m256d vm = _mm256_set1_pd(kNegInf);
  for (; i + 4 <= n; i += 4) vm = _mm256_max_pd(vm, _mm256_loadu_pd(x + i));
  double m = hmax_pd(vm);
  for (; i < n; ++i) m = std::max(m, x[i]);
  if (!(m > kNegInf)) return m;

  const __m256d vshift = _mm256_set1_pd(-m);
  __m256d vs = _mm256_setzero_pd();
  for (i = 0; i + 4 <= n; i += 4)
    vs = _mm256_add_pd(vs, exp_pd(_mm256_add_pd(_mm256_loadu_pd(x + i), vshift)));
  double s = hadd_pd(vs);
  for (; i < n; ++i) s += std::exp(x[i] - m);
  return m + std::log(s);
}

double logsumexp_add(const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  __m256d vm = _mm256_set1_pd(kNegInf);
  for (; i + 4 <= n; i += 4)
    vm = _mm256_max_pd(
        vm, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  double m = hmax_pd(vm);
  for (; i < n; ++i) m = std::max(m, a[i] + b[i]);
  if (!(m > kNegInf)) return m;

  const __m256d vshift = _mm256_set1_pd(-m);
  __m256d vs = _mm256_setzero_pd();
  for (i = 0; i + 4 <= n; i += 4) {
    const __m256d v =
        _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    vs = _mm256_add_pd(vs, exp_pd(_mm256_add_pd(v, vshift)));
  }
  double s = hadd_pd(vs);
  for (; i < n; ++i) s += std::exp(a[i] + b[i] - m);
  return m + std::log(s);
}

MaxIndex max_add(const double* a, const double* b, std::size_t n) {
  MaxIndex best{kNegInf, 0};
  std::size_t i = 0;
  if (n >= 4) {
    __m256d vbest = _mm256_set1_pd(kNegInf);
    __m256i ibest = _mm256_setzero_si256();
    __m256i idx = _mm256_set_epi64x(3, 2, 1, 0);
    const __m256i four = _mm256_set1_epi64x(4);
    for (; i + 4 <= n; i += 4) {
      const __m256d v =
          _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
      const __m256d gt = _mm256_cmp_pd(v, vbest, _CMP_GT_OQ);
      vbest = _mm256_blendv_pd(vbest, v, gt);
      ibest = _mm256_blendv_epi8(ibest, idx, _mm256_castpd_si256(gt));
      idx = _mm256_add_epi64(idx, four);
    }
    alignas(32) double vals[4];
    alignas(32) std::int64_t idxs[4];
    _mm256_store_pd(vals, vbest);
    _mm256_store_si256(reinterpret_cast<__m256i*>(idxs), ibest);
    // Cross-lane ties must resolve to the lowest index to match scalar.
    for (int k = 0; k < 4; ++k) {
      const auto id = static_cast<std::size_t>(idxs[k]);
      if (vals[k] > best.value ||
          (vals[k] == best.value && vals[k] > kNegInf && id < best.index)) {
        best.value = vals[k];
        best.index = id;
      }
    }
  }
  for (; i < n; ++i) {
    const double v = a[i] + b[i];
    if (v > best.value) {
      best.value = v;
      best.index = i;
    }
  }
  return best;
}

void exp_add_shift(double* dst, const double* a, const double* b, double shift,
                   std::size_t n) {
  const __m256d vshift = _mm256_set1_pd(shift);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_add_pd(
        _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)), vshift);
    _mm256_storeu_pd(dst + i, exp_pd(v));
  }
  for (; i < n; ++i) dst[i] = std::exp(a[i] + b[i] + shift);
}

void axpy(double* y, double a, const double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vy =
        _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d vs = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    vs = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), vs);
  double s = hadd_pd(vs);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void scale(double* x, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

double l1_norm(const double* x, std::size_t n) {
  const __m256d absmask =
      _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));
  __m256d vs = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    vs = _mm256_add_pd(vs, _mm256_and_pd(absmask, _mm256_loadu_pd(x + i)));
  double s = hadd_pd(vs);
  for (; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

double sq_norm(const double* x, std::size_t n) {
  __m256d vs = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    vs = _mm256_fmadd_pd(v, v, vs);
  }
  double s = hadd_pd(vs);
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

}  // namespace kiri::kernels::avx2

#endif  // KIRI_HAVE_AVX2_KERNELS
