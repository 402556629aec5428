#include <atomic>
#include <string>

#include "pdm/errors.hpp"
#include "pdm/kernels.hpp"

namespace pdm::kernels {

namespace {

Backend detect() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) return Backend::Avx2;
#endif
#if defined(__aarch64__) && defined(__ARM_NEON)
  return Backend::Neon;
#endif
  return Backend::Scalar;
}

std::atomic<int> forced{-1};

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "?";
}

bool backend_available(Backend b) {
  switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(__aarch64__) && defined(__ARM_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() {
  const int f = forced.load(std::memory_order_relaxed);
  if (f >= 0) return static_cast<Backend>(f);
  static const Backend detected = detect();
  return detected;
}

void force_backend(Backend b) {
  if (!backend_available(b))
    throw ConfigError("SIMD backend " + std::string(backend_name(b)) + " is not available");
  forced.store(static_cast<int>(b), std::memory_order_relaxed);
}

void reset_backend() { forced.store(-1, std::memory_order_relaxed); }

void flux_stencil_row(const StencilRow& row) {
  switch (active_backend()) {
    case Backend::Avx2: return avx2::flux_stencil_row(row);
    case Backend::Neon: return neon::flux_stencil_row(row);
    case Backend::Scalar: break;
  }
  scalar::flux_stencil_row(row);
}

double weighted_dot(const double* a, const double* b, const double* w, std::size_t n) {
  switch (active_backend()) {
    case Backend::Avx2: return avx2::weighted_dot(a, b, w, n);
    case Backend::Neon: return neon::weighted_dot(a, b, w, n);
    case Backend::Scalar: break;
  }
  return scalar::weighted_dot(a, b, w, n);
}

}  // namespace pdm::kernels
