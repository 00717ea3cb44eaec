// Compiled with -mavx2 only; callers reach it through the dispatch table
// after a CPUID check.

#include "tlo/kernels.hpp"

#include <immintrin.h>

namespace tlo::kernels {

namespace {

void row_axpy_avx2(double* dst, const double* src, double factor, std::size_t n) {
  const __m256d f = _mm256_set1_pd(factor);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d prod = _mm256_mul_pd(f, _mm256_loadu_pd(src + j));
    _mm256_storeu_pd(dst + j, _mm256_sub_pd(_mm256_loadu_pd(dst + j), prod));
  }
  for (; j < n; ++j) dst[j] -= factor * src[j];
}

void row_scale_avx2(double* dst, double factor, std::size_t n) {
  const __m256d f = _mm256_set1_pd(factor);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) _mm256_storeu_pd(dst + j, _mm256_mul_pd(_mm256_loadu_pd(dst + j), f));
  for (; j < n; ++j) dst[j] *= factor;
}

std::size_t count_dominators_avx2(const double* xs, const double* ys, std::size_t n, double px, double py) {
  const __m256d vx = _mm256_set1_pd(px);
  const __m256d vy = _mm256_set1_pd(py);
  std::size_t count = 0;
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d x = _mm256_loadu_pd(xs + j);
    const __m256d y = _mm256_loadu_pd(ys + j);
    const __m256d weak = _mm256_and_pd(_mm256_cmp_pd(x, vx, _CMP_LE_OQ), _mm256_cmp_pd(y, vy, _CMP_LE_OQ));
    const __m256d strict = _mm256_or_pd(_mm256_cmp_pd(x, vx, _CMP_LT_OQ), _mm256_cmp_pd(y, vy, _CMP_LT_OQ));
    const int mask = _mm256_movemask_pd(_mm256_and_pd(weak, strict));
    count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
  }
  for (; j < n; ++j) {
    const bool weak = xs[j] <= px && ys[j] <= py;
    const bool strict = xs[j] < px || ys[j] < py;
    count += (weak && strict) ? 1 : 0;
  }
  return count;
}

} // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{row_axpy_avx2, row_scale_avx2, count_dominators_avx2};
  return t;
}

} // namespace tlo::kernels
