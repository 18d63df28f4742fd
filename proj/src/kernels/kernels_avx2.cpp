#include <cmath>

#include "lochardy/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define LOCHARDY_HAVE_AVX2_TU 1
#include <immintrin.h>
#else
#define LOCHARDY_HAVE_AVX2_TU 0
#endif

namespace lochardy::kernels {

#if LOCHARDY_HAVE_AVX2_TU
namespace {

#define LOCHARDY_AVX2 __attribute__((target("avx2,fma")))

LOCHARDY_AVX2 inline __m256d abs_pd(__m256d x) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
}

LOCHARDY_AVX2 inline double hsum(__m256d acc) {
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

LOCHARDY_AVX2 double sum_avx2(const double* v, const double* w, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(v + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i + 4), _mm256_loadu_pd(v + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(v + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += w[i] * v[i];
  return s;
}

LOCHARDY_AVX2 double abs_sum_avx2(const double* v, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), abs_pd(_mm256_loadu_pd(v + i)), acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * std::fabs(v[i]);
  return s;
}

LOCHARDY_AVX2 double abs_dev_avx2(const double* v, const double* w, std::size_t n, double c) {
  const __m256d cc = _mm256_set1_pd(c);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(v + i), cc));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), d, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * std::fabs(v[i] - c);
  return s;
}

LOCHARDY_AVX2 double sq_dev_avx2(const double* v, const double* w, std::size_t n, double c) {
  const __m256d cc = _mm256_set1_pd(c);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(v + i), cc);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i), d), d, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double d = v[i] - c;
    s += w[i] * d * d;
  }
  return s;
}

LOCHARDY_AVX2 double max_abs_avx2(const double* v, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, abs_pd(_mm256_loadu_pd(v + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = std::fmax(std::fmax(lanes[0], lanes[1]), std::fmax(lanes[2], lanes[3]));
  for (; i < n; ++i) r = std::fmax(r, std::fabs(v[i]));
  return r;
}

LOCHARDY_AVX2 void axpy_avx2(double* y, const double* x, double a, std::size_t n) {
  const __m256d aa = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(aa, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

#undef LOCHARDY_AVX2

}  // namespace

const KernelTable* avx2_table() {
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  static const KernelTable table{Isa::avx2,  sum_avx2,     abs_sum_avx2, abs_dev_avx2,
                                 sq_dev_avx2, max_abs_avx2, axpy_avx2};
  return supported ? &table : nullptr;
}

#else

const KernelTable* avx2_table() { return nullptr; }

#endif

}  // namespace lochardy::kernels
