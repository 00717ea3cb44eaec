#include "tlo/kernels.hpp"

#include <arm_neon.h>

namespace tlo::kernels {

namespace {

void row_axpy_neon(double* dst, const double* src, double factor, std::size_t n) {
  const float64x2_t f = vdupq_n_f64(factor);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t prod = vmulq_f64(f, vld1q_f64(src + j));
    vst1q_f64(dst + j, vsubq_f64(vld1q_f64(dst + j), prod));
  }
  for (; j < n; ++j) dst[j] -= factor * src[j];
}

void row_scale_neon(double* dst, double factor, std::size_t n) {
  const float64x2_t f = vdupq_n_f64(factor);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) vst1q_f64(dst + j, vmulq_f64(vld1q_f64(dst + j), f));
  for (; j < n; ++j) dst[j] *= factor;
}

std::size_t count_dominators_neon(const double* xs, const double* ys, std::size_t n, double px, double py) {
  const float64x2_t vx = vdupq_n_f64(px);
  const float64x2_t vy = vdupq_n_f64(py);
  std::size_t count = 0;
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t x = vld1q_f64(xs + j);
    const float64x2_t y = vld1q_f64(ys + j);
    const uint64x2_t weak = vandq_u64(vcleq_f64(x, vx), vcleq_f64(y, vy));
    const uint64x2_t strict = vorrq_u64(vcltq_f64(x, vx), vcltq_f64(y, vy));
    const uint64x2_t both = vshrq_n_u64(vandq_u64(weak, strict), 63);
    count += static_cast<std::size_t>(vgetq_lane_u64(both, 0) + vgetq_lane_u64(both, 1));
  }
  for (; j < n; ++j) {
    const bool weak = xs[j] <= px && ys[j] <= py;
    const bool strict = xs[j] < px || ys[j] < py;
    count += (weak && strict) ? 1 : 0;
  }
  return count;
}

} // namespace

const KernelTable& neon_table() {
  static const KernelTable t{row_axpy_neon, row_scale_neon, count_dominators_neon};
  return t;
}

} // namespace tlo::kernels
