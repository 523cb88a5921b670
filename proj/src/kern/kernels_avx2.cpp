#include "entlab/kern.hpp"

#ifdef ENTLAB_HAVE_AVX2

#include <immintrin.h>

namespace entlab::kern::detail {
namespace {

double dot_avx2(const double* x, const double* y, std::size_t n) noexcept {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4),
                           acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  __m128d lo = _mm256_castpd256_pd128(acc0);
  __m128d hi = _mm256_extractf128_pd(acc0, 1);
  lo = _mm_add_pd(lo, hi);
  double acc = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) noexcept {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void rotate_pair_avx2(double* x, double* y, double c, double s,
                      std::size_t n) noexcept {
  const __m256d cv = _mm256_set1_pd(c);
  const __m256d sv = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d yv = _mm256_loadu_pd(y + i);
    // x' = c*x - s*y ; y' = s*x + c*y
    _mm256_storeu_pd(x + i, _mm256_fmsub_pd(cv, xv, _mm256_mul_pd(sv, yv)));
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(sv, xv, _mm256_mul_pd(cv, yv)));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

void phasor_mul_avx2(double* re, double* im, const double* sre,
                     const double* sim, std::size_t n) noexcept {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_loadu_pd(re + i);
    const __m256d m = _mm256_loadu_pd(im + i);
    const __m256d cr = _mm256_loadu_pd(sre + i);
    const __m256d ci = _mm256_loadu_pd(sim + i);
    _mm256_storeu_pd(re + i, _mm256_fmsub_pd(r, cr, _mm256_mul_pd(m, ci)));
    _mm256_storeu_pd(im + i, _mm256_fmadd_pd(r, ci, _mm256_mul_pd(m, cr)));
  }
  for (; i < n; ++i) {
    const double r = re[i];
    const double m = im[i];
    re[i] = r * sre[i] - m * sim[i];
    im[i] = r * sim[i] + m * sre[i];
  }
}

}  // namespace

const Ops avx2_ops = {dot_avx2, axpy_avx2, rotate_pair_avx2, phasor_mul_avx2};

}  // namespace entlab::kern::detail

#endif  // ENTLAB_HAVE_AVX2
