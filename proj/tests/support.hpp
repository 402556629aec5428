#pragma once
// Shared generators and oracles for the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pdm/errors.hpp"
#include "pdm/maps.hpp"

namespace testsupport {

using pdm::Complex;
using pdm::MapFamily;
using pdm::XPoint;
using pdm::YPoint;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  double sign() { return integer(0, 1) ? 1.0 : -1.0; }
  /// Magnitude in [lo, hi] with a random sign.
  double nonzero(double lo, double hi) { return sign() * uniform(lo, hi); }
  Complex complex_in(double r) { return {uniform(-r, r), uniform(-r, r)}; }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline double rel_err(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline double rel_err(Complex a, Complex b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

/// Unit or caption parameters, one family per catalog entry.
inline std::vector<MapFamily> reference_families() {
  return {MapFamily::log(1.0, 1.0, 0.0),    MapFamily::asinh(1.0, 1.0),
          MapFamily::power(1.0, 1.0, 0.0),  MapFamily::exp_radial(1.0, 1.0),
          MapFamily::inverse(1.0),          MapFamily::quadratic(0.125),
          MapFamily::logistic(1.0, 1.0, 1.0)};
}

/// Family of the given catalog index with random valid parameters.
inline MapFamily random_family(Rng& rng, int kind) {
  switch (kind) {
    case 0:
      return MapFamily::log(rng.nonzero(0.3, 2.0), rng.nonzero(0.3, 2.0), rng.uniform(-1.0, 1.0));
    case 1:
      return MapFamily::asinh(rng.nonzero(0.3, 2.0), rng.nonzero(0.3, 2.0));
    case 2: {
      double lambda = rng.uniform(-0.9, 2.0);
      if (std::abs(lambda + 1.0) < 0.1) lambda = 0.5;
      return MapFamily::power(lambda, rng.nonzero(0.3, 2.0), rng.uniform(-0.5, 0.5));
    }
    case 3:
      return MapFamily::exp_radial(rng.nonzero(0.3, 2.0), rng.nonzero(0.5, 2.0));
    case 4:
      return MapFamily::inverse(rng.nonzero(0.3, 2.0));
    case 5:
      return MapFamily::quadratic(rng.nonzero(0.05, 2.0));
    default:
      return MapFamily::logistic(rng.nonzero(0.3, 2.0), rng.uniform(-1.5, 1.5),
                                 rng.uniform(0.3, 2.0));
  }
}

inline constexpr int kFamilyKinds = 7;

/// Random x on the principal sheet where the map and its inverse are regular:
/// y is in the image region and at least `margin` (relative to |y|+1) away
/// from excluded points and cuts.
inline XPoint random_sheet_point(const MapFamily& f, Rng& rng, double box = 2.5,
                                 double margin = 1e-3) {
  const pdm::DomainSpec dom = pdm::domain_of(f);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const XPoint x{rng.uniform(-box, box), rng.uniform(-box, box)};
    try {
      const pdm::MapJet j = pdm::f_derivs(f, pdm::to_complex(x));
      if (!(std::abs(j.fp) > 1e-6) || !std::isfinite(std::abs(j.fpp))) continue;
      const YPoint y = pdm::y_of_x(f, x);
      const double scale = 1.0 + std::hypot(y.y1, y.y2);
      if (std::hypot(y.y1, y.y2) > 1e6) continue;
      if (!pdm::in_image_region(f, y)) continue;
      if (dom.distance_to_excluded(y) < margin * scale) continue;
      if (dom.distance_to_cut(y) < margin * scale) continue;
      if (!pdm::in_principal_sheet(f, x)) continue;
      return x;
    } catch (const pdm::Error&) {
      continue;
    }
  }
  throw std::runtime_error("no sheet point found for " + f.describe());
}

/// Least-squares slope of log r against log h.
inline double fitted_order(const std::vector<double>& h, const std::vector<double>& r) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double lx = std::log(h[k]), ly = std::log(r[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Pairwise observed orders log(r_k/r_{k+1}) / log(h_k/h_{k+1}).
inline std::vector<double> pairwise_orders(const std::vector<double>& h,
                                           const std::vector<double>& r) {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < h.size(); ++k) {
    out.push_back(std::log(r[k] / r[k + 1]) / std::log(h[k] / h[k + 1]));
  }
  return out;
}

}  // namespace testsupport
