#include "tlo/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace tlo::kernels {

namespace {

const KernelTable* table_for(Backend b) {
  switch (b) {
  case Backend::Scalar:
    return &scalar_table();
  case Backend::Avx2:
#if defined(TLO_HAVE_AVX2_TU)
    return &avx2_table();
#else
    return nullptr;
#endif
  case Backend::Neon:
#if defined(TLO_HAVE_NEON_TU)
    return &neon_table();
#else
    return nullptr;
#endif
  }
  return nullptr;
}

Backend pick_default() {
  if (const char* env = std::getenv("TLO_SIMD")) {
    const std::string v = env;
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2" && available(Backend::Avx2)) return Backend::Avx2;
    if (v == "neon" && available(Backend::Neon)) return Backend::Neon;
  }
  if (available(Backend::Avx2)) return Backend::Avx2;
  if (available(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

struct State {
  std::atomic<Backend> backend;
  std::atomic<const KernelTable*> table;

  State() {
    const Backend b = pick_default();
    backend.store(b);
    table.store(table_for(b));
  }
};

State& state() {
  static State s;
  return s;
}

} // namespace

bool available(Backend b) {
  switch (b) {
  case Backend::Scalar:
    return true;
  case Backend::Avx2:
#if defined(TLO_HAVE_AVX2_TU)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
  case Backend::Neon:
#if defined(TLO_HAVE_NEON_TU)
    return true; // baseline on AArch64
#else
    return false;
#endif
  }
  return false;
}

Backend active_backend() { return state().backend.load(); }

bool set_backend(Backend b) {
  if (!available(b)) return false;
  state().table.store(table_for(b));
  state().backend.store(b);
  return true;
}

std::string_view backend_name(Backend b) {
  switch (b) {
  case Backend::Scalar:
    return "scalar";
  case Backend::Avx2:
    return "avx2";
  case Backend::Neon:
    return "neon";
  }
  return "unknown";
}

const KernelTable& table() { return *state().table.load(std::memory_order_relaxed); }

} // namespace tlo::kernels
