#include "pdm/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>

namespace pdm::kernels::neon {

void flux_stencil_row(const StencilRow& r) {
  const float64x2_t inv_h2 = vdupq_n_f64(r.inv_h2);
  int i = 1;
  for (; i + 2 <= r.nx - 1; i += 2) {
    const float64x2_t c = vld1q_f64(r.c + i);
    const float64x2_t east = vmulq_f64(vld1q_f64(r.kx + i), vsubq_f64(vld1q_f64(r.c + i + 1), c));
    const float64x2_t west =
        vmulq_f64(vld1q_f64(r.kx + i - 1), vsubq_f64(c, vld1q_f64(r.c + i - 1)));
    const float64x2_t north = vmulq_f64(vld1q_f64(r.ky_n + i), vsubq_f64(vld1q_f64(r.n + i), c));
    const float64x2_t south = vmulq_f64(vld1q_f64(r.ky_s + i), vsubq_f64(c, vld1q_f64(r.s + i)));
    const float64x2_t flux = vsubq_f64(vaddq_f64(vsubq_f64(east, west), north), south);
    vst1q_f64(r.out + i, vsubq_f64(vmulq_f64(vld1q_f64(r.u + i), c), vmulq_f64(inv_h2, flux)));
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

double weighted_dot(const double* a, const double* b, const double* w, std::size_t n) {
  float64x2_t lo = vdupq_n_f64(0.0), hi = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    lo = vaddq_f64(lo, vmulq_f64(vmulq_f64(vld1q_f64(w + k), vld1q_f64(a + k)), vld1q_f64(b + k)));
    hi = vaddq_f64(
        hi, vmulq_f64(vmulq_f64(vld1q_f64(w + k + 2), vld1q_f64(a + k + 2)), vld1q_f64(b + k + 2)));
  }
  double tail = 0.0;
  for (; k < n; ++k) tail += w[k] * a[k] * b[k];
  return ((vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1)) +
          (vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1))) +
         tail;
}

}  // namespace pdm::kernels::neon

#else

namespace pdm::kernels::neon {
void flux_stencil_row(const StencilRow& r) { scalar::flux_stencil_row(r); }
double weighted_dot(const double* a, const double* b, const double* w, std::size_t n) {
  return scalar::weighted_dot(a, b, w, n);
}
}  // namespace pdm::kernels::neon

#endif
