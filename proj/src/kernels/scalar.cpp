#include "tlo/kernels.hpp"

namespace tlo::kernels {

namespace {

void row_axpy_scalar(double* dst, const double* src, double factor, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) dst[j] -= factor * src[j];
}

void row_scale_scalar(double* dst, double factor, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) dst[j] *= factor;
}

std::size_t count_dominators_scalar(const double* xs, const double* ys, std::size_t n, double px, double py) {
  std::size_t count = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const bool weak = xs[j] <= px && ys[j] <= py;
    const bool strict = xs[j] < px || ys[j] < py;
    count += (weak && strict) ? 1 : 0;
  }
  return count;
}

} // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{row_axpy_scalar, row_scale_scalar, count_dominators_scalar};
  return t;
}

} // namespace tlo::kernels
