#include "pdm/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdm/errors.hpp"

namespace pdm {

int sturm_count(const SymTridiagonal& t, double sigma) {
  const int n = t.size();
  const double tiny = std::numeric_limits<double>::min();
  int count = 0;
  double q = 1.0;
  for (int i = 0; i < n; ++i) {
    const double b2 = i > 0 ? t.off[i - 1] * t.off[i - 1] : 0.0;
    q = (t.diag[i] - sigma) - (i > 0 ? b2 / q : 0.0);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

void gershgorin_bounds(const SymTridiagonal& t, double& lo, double& hi) {
  const int n = t.size();
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i + 1 < n) r += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
}

double kth_eigenvalue(const SymTridiagonal& t, int k) {
  if (k < 0 || k >= t.size()) throw ConfigError("eigenvalue index out of range");
  double lo, hi;
  gershgorin_bounds(t, lo, hi);
  const double pad = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  lo -= pad;
  hi += pad;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(t, mid) > k) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> inverse_iteration(const SymTridiagonal& t, double lambda) {
  const int n = t.size();
  if (n == 0) return {};
  double lo, hi;
  gershgorin_bounds(t, lo, hi);
  const double scale = std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  const double shift = lambda + 1e-13 * scale;
  const double tiny = 1e-300;

  // LU factorization of (T - shift) with partial pivoting (dgttrf layout).
  std::vector<double> d(n), dl(t.off), du(t.off), du2(n > 2 ? n - 2 : 0, 0.0);
  std::vector<char> swapped(n, 0);
  for (int i = 0; i < n; ++i) d[i] = t.diag[i] - shift;
  for (int i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double fact = dl[i] / d[i];
      dl[i] = fact;
      d[i + 1] -= fact * du[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = temp - fact * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      swapped[i] = 1;
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = tiny;

  auto solve = [&](std::vector<double>& x) {
    for (int i = 0; i + 1 < n; ++i) {
      if (swapped[i]) {
        const double temp = x[i];
        x[i] = x[i + 1];
        x[i + 1] = temp - dl[i] * x[i];
      } else {
        x[i + 1] -= dl[i] * x[i];
      }
    }
    x[n - 1] /= d[n - 1];
    if (n > 1) x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    for (int i = n - 3; i >= 0; --i)
      x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
  };

  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = 1.0 + 0.25 * std::sin(0.7 * i + 0.3);
  for (int it = 0; it < 5; ++it) {
    solve(x);
    double nrm = 0.0;
    for (double v : x) nrm += v * v;
    nrm = std::sqrt(nrm);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw Error("inverse iteration failed");
    for (double& v : x) v /= nrm;
  }
  return x;
}

}  // namespace pdm
