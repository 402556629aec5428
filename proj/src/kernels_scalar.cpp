#include "pdm/kernels.hpp"

namespace pdm::kernels::scalar {

void flux_stencil_row(const StencilRow& r) {
  for (int i = 1; i < r.nx - 1; ++i) {
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
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4)
    for (int l = 0; l < 4; ++l) acc[l] += w[k + l] * a[k + l] * b[k + l];
  double tail = 0.0;
  for (; k < n; ++k) tail += w[k] * a[k] * b[k];
  return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + tail;
}

}  // namespace pdm::kernels::scalar
