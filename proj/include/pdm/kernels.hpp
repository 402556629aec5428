#pragma once
// Hot loops of the verification engine with scalar reference versions and
// SIMD variants chosen at runtime. Every variant performs the same
// operations in the same order as the scalar code (reductions use four
// interleaved partial sums) and agrees with it bit-for-bit.

#include <cstddef>
#include <string_view>

namespace pdm::kernels {

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b);
bool backend_available(Backend b);
/// Backend used by the dispatching entry points.
Backend active_backend();
/// Override the dispatch (tests). Throws ConfigError if unavailable.
void force_backend(Backend b);
/// Return to automatic selection.
void reset_backend();

/// One row of the conservative stencil
///   out[i] = -inv_h2 * (kx[i] (c[i+1]-c[i]) - kx[i-1] (c[i]-c[i-1])
///                     + ky_n[i] (n[i]-c[i]) - ky_s[i] (c[i]-s[i])) + u[i] c[i]
/// for i in [1, nx-2]. kx has nx-1 entries (face i+1/2), ky_s/ky_n hold the
/// faces below/above each node.
struct StencilRow {
  const double* s;
  const double* c;
  const double* n;
  const double* kx;
  const double* ky_s;
  const double* ky_n;
  const double* u;
  double* out;
  int nx;
  double inv_h2;
};

void flux_stencil_row(const StencilRow& row);
/// sum_k w[k] a[k] b[k]
double weighted_dot(const double* a, const double* b, const double* w, std::size_t n);

namespace scalar {
void flux_stencil_row(const StencilRow& row);
double weighted_dot(const double* a, const double* b, const double* w, std::size_t n);
}  // namespace scalar

namespace avx2 {
void flux_stencil_row(const StencilRow& row);
double weighted_dot(const double* a, const double* b, const double* w, std::size_t n);
}  // namespace avx2

namespace neon {
void flux_stencil_row(const StencilRow& row);
double weighted_dot(const double* a, const double* b, const double* w, std::size_t n);
}  // namespace neon

}  // namespace pdm::kernels
