#pragma once

// Data-parallel inner loops with a scalar reference and SIMD variants chosen
// at runtime. Every backend produces bit-identical results: the vector code
// uses separate multiply and subtract (no FMA), exactly like the scalar loop.

#include <cstddef>
#include <span>
#include <string_view>

namespace tlo::kernels {

enum class Backend { Scalar, Avx2, Neon };

struct KernelTable {
  /// dst[j] -= factor * src[j]
  void (*row_axpy)(double* dst, const double* src, double factor, std::size_t n);
  /// dst[j] *= factor
  void (*row_scale)(double* dst, double factor, std::size_t n);
  /// Number of points (xs[j], ys[j]) that Pareto-dominate (px, py) under
  /// minimization: <= in both coordinates and < in at least one.
  std::size_t (*count_dominators)(const double* xs, const double* ys, std::size_t n, double px, double py);
};

const KernelTable& scalar_table();
#if defined(TLO_HAVE_AVX2_TU)
const KernelTable& avx2_table();
#endif
#if defined(TLO_HAVE_NEON_TU)
const KernelTable& neon_table();
#endif

/// True when the backend was compiled in and the running CPU supports it.
bool available(Backend b);

/// Backend in use. Picked on first use: TLO_SIMD=scalar|avx2|neon forces a
/// choice, otherwise the widest available one wins.
Backend active_backend();

/// Switches backend for the whole process; returns false if unavailable.
bool set_backend(Backend b);

std::string_view backend_name(Backend b);

const KernelTable& table();

inline void row_axpy(std::span<double> dst, std::span<const double> src, double factor) {
  table().row_axpy(dst.data(), src.data(), factor, dst.size());
}

inline void row_scale(std::span<double> dst, double factor) { table().row_scale(dst.data(), factor, dst.size()); }

inline std::size_t count_dominators(std::span<const double> xs, std::span<const double> ys, double px, double py) {
  return table().count_dominators(xs.data(), ys.data(), xs.size(), px, py);
}

} // namespace tlo::kernels
