#include "pdm/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace pdm::kernels::avx2 {

__attribute__((target("avx2"))) void flux_stencil_row(const StencilRow& r) {
  const __m256d inv_h2 = _mm256_set1_pd(r.inv_h2);
  int i = 1;
  for (; i + 4 <= r.nx - 1; i += 4) {
    const __m256d c = _mm256_loadu_pd(r.c + i);
    const __m256d ce = _mm256_loadu_pd(r.c + i + 1);
    const __m256d cw = _mm256_loadu_pd(r.c + i - 1);
    const __m256d east = _mm256_mul_pd(_mm256_loadu_pd(r.kx + i), _mm256_sub_pd(ce, c));
    const __m256d west = _mm256_mul_pd(_mm256_loadu_pd(r.kx + i - 1), _mm256_sub_pd(c, cw));
    const __m256d north =
        _mm256_mul_pd(_mm256_loadu_pd(r.ky_n + i), _mm256_sub_pd(_mm256_loadu_pd(r.n + i), c));
    const __m256d south =
        _mm256_mul_pd(_mm256_loadu_pd(r.ky_s + i), _mm256_sub_pd(c, _mm256_loadu_pd(r.s + i)));
    const __m256d flux =
        _mm256_sub_pd(_mm256_add_pd(_mm256_sub_pd(east, west), north), south);
    const __m256d out = _mm256_sub_pd(_mm256_mul_pd(_mm256_loadu_pd(r.u + i), c),
                                      _mm256_mul_pd(inv_h2, flux));
    _mm256_storeu_pd(r.out + i, out);
  }
  for (; i < r.nx - 1; ++i) {
    const double c = r.c[i];
    const double east = r.kx[i] * (r.c[i + 1] - c);
    const double west = r.kx[i - 1] * (c - r.c[i - 1]);
    const double north = r.ky_n[i] * (r.n[i] - c);
    const double south = r.ky_s[i] * (c - r.s[i]);
    const double flux = ((east - west) + north) - south;
    r.out[i] = r.u[i] * c - r.inv_h2 * flux;
  }
}

__attribute__((target("avx2"))) double weighted_dot(const double* a, const double* b,
                                                    const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(w + k), _mm256_loadu_pd(a + k));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(p, _mm256_loadu_pd(b + k)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double tail = 0.0;
  for (; k < n; ++k) tail += w[k] * a[k] * b[k];
  return ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3])) + tail;
}

}  // namespace pdm::kernels::avx2

#else

namespace pdm::kernels::avx2 {
void flux_stencil_row(const StencilRow& r) { scalar::flux_stencil_row(r); }
double weighted_dot(const double* a, const double* b, const double* w, std::size_t n) {
  return scalar::weighted_dot(a, b, w, n);
}
}  // namespace pdm::kernels::avx2

#endif
