#include "pdm/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pdm/errors.hpp"

namespace pdm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(what);
}

bool finite(double v) { return std::isfinite(v); }

bool is_integer(double v) { return std::floor(v) == v; }

bool on_negative_real_axis(Complex z) { return z.imag() == 0.0 && z.real() < 0.0; }

Complex ipow(Complex z, long n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  Complex r(1.0);
  while (n > 0) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

// Principal power; exact repeated products for integer exponents.
Complex principal_pow(Complex z, double p) {
  if (is_integer(p) && std::abs(p) < 64) return ipow(z, static_cast<long>(p));
  return std::exp(p * std::log(z));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// construction

MapFamily MapFamily::log(double alpha, double gamma, double delta) {
  require(finite(alpha) && finite(gamma) && finite(delta), "log: parameters must be finite");
  require(alpha != 0.0, "log: alpha must be nonzero");
  require(gamma != 0.0, "log: gamma must be nonzero");
  return MapFamily(LogMap{alpha, gamma, delta});
}

MapFamily MapFamily::asinh(double amplitude, double lambda) {
  require(finite(amplitude) && finite(lambda), "asinh: parameters must be finite");
  require(amplitude != 0.0, "asinh: A must be nonzero");
  require(lambda != 0.0, "asinh: lambda must be nonzero");
  return MapFamily(AsinhMap{amplitude, lambda});
}

MapFamily MapFamily::power(double lambda, double beta, double alpha_shift) {
  require(finite(lambda) && finite(beta) && finite(alpha_shift),
          "power: parameters must be finite");
  require(lambda != -1.0, "power: lambda = -1 is the exponential branch; use exp_radial");
  require(beta != 0.0, "power: beta must be nonzero");
  return MapFamily(PowerMap{lambda, beta, alpha_shift});
}

MapFamily MapFamily::exp_radial(double gamma, double beta) {
  require(finite(gamma) && finite(beta), "exp_radial: parameters must be finite");
  require(gamma != 0.0, "exp_radial: gamma must be nonzero");
  require(beta != 0.0, "exp_radial: beta must be nonzero");
  return MapFamily(ExpRadialMap{gamma, beta});
}

MapFamily MapFamily::inverse(double b) {
  require(finite(b) && b != 0.0, "inverse: b must be finite and nonzero");
  return MapFamily(InverseMap{b});
}

MapFamily MapFamily::quadratic(double a) {
  require(finite(a) && a != 0.0, "quadratic: a must be finite and nonzero");
  return MapFamily(QuadraticMap{a});
}

MapFamily MapFamily::logistic(double a, double b, double lambda) {
  require(finite(a) && finite(b) && finite(lambda), "logistic: parameters must be finite");
  require(a != 0.0, "logistic: a must be nonzero");
  require(lambda > 0.0, "logistic: lambda must be positive");
  return MapFamily(LogisticMap{a, b, lambda});
}

std::string_view MapFamily::name() const noexcept {
  return std::visit(overloaded{
                        [](const LogMap&) { return std::string_view("log"); },
                        [](const AsinhMap&) { return std::string_view("asinh"); },
                        [](const PowerMap&) { return std::string_view("power"); },
                        [](const ExpRadialMap&) { return std::string_view("exp_radial"); },
                        [](const InverseMap&) { return std::string_view("inverse"); },
                        [](const QuadraticMap&) { return std::string_view("quadratic"); },
                        [](const LogisticMap&) { return std::string_view("logistic"); },
                    },
                    params_);
}

std::string MapFamily::describe() const {
  const std::string n(name());
  return std::visit(
      overloaded{
          [&](const LogMap& m) {
            return n + "(alpha=" + fmt(m.alpha) + ", gamma=" + fmt(m.gamma) +
                   ", delta=" + fmt(m.delta) + ")";
          },
          [&](const AsinhMap& m) {
            return n + "(A=" + fmt(m.amplitude) + ", lambda=" + fmt(m.lambda) + ")";
          },
          [&](const PowerMap& m) {
            return n + "(lambda=" + fmt(m.lambda) + ", beta=" + fmt(m.beta) +
                   ", alpha=" + fmt(m.alpha_shift) + ")";
          },
          [&](const ExpRadialMap& m) {
            return n + "(gamma=" + fmt(m.gamma) + ", beta=" + fmt(m.beta) + ")";
          },
          [&](const InverseMap& m) { return n + "(b=" + fmt(m.b) + ")"; },
          [&](const QuadraticMap& m) { return n + "(a=" + fmt(m.a) + ")"; },
          [&](const LogisticMap& m) {
            return n + "(a=" + fmt(m.a) + ", b=" + fmt(m.b) + ", lambda=" + fmt(m.lambda) + ")";
          },
      },
      params_);
}

const std::vector<std::string_view>& family_catalog() {
  static const std::vector<std::string_view> names = {
      "log", "asinh", "power", "exp_radial", "inverse", "quadratic", "logistic"};
  return names;
}

std::string_view to_string(RegionKind k) {
  switch (k) {
    case RegionKind::FullPlane: return "full plane";
    case RegionKind::Strip: return "strip in y2";
    case RegionKind::PuncturedPlane: return "punctured plane";
    case RegionKind::HalfPlaneImage: return "half-plane image";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// DomainSpec

bool DomainSpec::contains(YPoint y) const {
  if (!std::isfinite(y.y1) || !std::isfinite(y.y2)) return false;
  if (y2_half_width && std::abs(y.y2) > *y2_half_width) return false;
  if (sector_half_angle) {
    if (y.y1 == 0.0 && y.y2 == 0.0) return false;
    if (std::abs(std::atan2(-y.y2, y.y1)) > *sector_half_angle) return false;
  }
  return true;
}

double DomainSpec::distance_to_excluded(YPoint y) const {
  double d = kInf;
  for (const auto& p : excluded) d = std::min(d, std::hypot(y.y1 - p.y1, y.y2 - p.y2));
  return d;
}

double DomainSpec::distance_to_cut(YPoint y) const {
  double d = kInf;
  for (const auto& c : cuts) {
    if (y.y1 >= c.lo && y.y1 <= c.hi) {
      d = std::min(d, std::abs(y.y2));
    } else {
      const double end = y.y1 < c.lo ? c.lo : c.hi;
      d = std::min(d, std::hypot(y.y1 - end, y.y2));
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// f, f', f''

Complex f_of_z(const MapFamily& family, Complex z) {
  return std::visit(
      overloaded{
          [&](const LogMap& m) -> Complex {
            const Complex u = m.alpha * z / (2.0 * m.gamma) + m.delta;
            if (std::abs(u) == 0.0) throw SingularityError("log map: argument vanishes", z);
            if (on_negative_real_axis(u)) throw DomainError("log map: on branch cut", z);
            return std::log(u) / m.alpha;
          },
          [&](const AsinhMap& m) -> Complex {
            const Complex s = m.lambda * z / (2.0 * m.amplitude);
            if (s.real() == 0.0 && std::abs(s.imag()) >= 1.0) {
              if (std::abs(s.imag()) == 1.0) throw SingularityError("asinh map: branch point", z);
              throw DomainError("asinh map: on branch cut", z);
            }
            return std::asinh(s) / m.lambda;
          },
          [&](const PowerMap& m) -> Complex {
            const double q = m.lambda + 1.0;
            const double p = 1.0 / q;
            const Complex u = q * (z / m.beta + m.alpha_shift);
            if (std::abs(u) == 0.0 && !(is_integer(p) && p > 0.0))
              throw SingularityError("power map: base vanishes", z);
            if (!is_integer(p) && on_negative_real_axis(u))
              throw DomainError("power map: on branch cut", z);
            return principal_pow(u, p);
          },
          [&](const ExpRadialMap& m) -> Complex { return m.gamma * std::exp(z / m.beta); },
          [&](const InverseMap& m) -> Complex {
            if (std::abs(z) == 0.0) throw SingularityError("inverse map: pole", z);
            return m.b / z;
          },
          [&](const QuadraticMap& m) -> Complex { return m.a * z * z; },
          [&](const LogisticMap& m) -> Complex {
            const Complex d = m.a * std::exp(-m.lambda * z) + m.b;
            if (std::abs(d) == 0.0) throw SingularityError("logistic map: pole", z);
            return 1.0 / d;
          },
      },
      family.params());
}

MapJet f_derivs(const MapFamily& family, Complex z) {
  const Complex f = f_of_z(family, z);
  return std::visit(
      overloaded{
          [&](const LogMap& m) -> MapJet {
            const Complex u = m.alpha * z / (2.0 * m.gamma) + m.delta;
            const Complex fp = 1.0 / (2.0 * m.gamma * u);
            const Complex fpp = -m.alpha / (4.0 * m.gamma * m.gamma * u * u);
            return {f, fp, fpp};
          },
          [&](const AsinhMap& m) -> MapJet {
            const double c = m.lambda / (2.0 * m.amplitude);
            const Complex s = c * z;
            const Complex root = std::sqrt(1.0 + s * s);
            const Complex fp = 1.0 / (2.0 * m.amplitude * root);
            const Complex fpp = -s * c / (2.0 * m.amplitude * root * root * root);
            return {f, fp, fpp};
          },
          [&](const PowerMap& m) -> MapJet {
            const double q = m.lambda + 1.0;
            const Complex u = q * (z / m.beta + m.alpha_shift);
            if (std::abs(u) == 0.0) throw SingularityError("power map: base vanishes", z);
            const Complex fp = f / (m.beta * u);
            const Complex fpp = -m.lambda * f / (m.beta * m.beta * u * u);
            return {f, fp, fpp};
          },
          [&](const ExpRadialMap& m) -> MapJet {
            return {f, f / m.beta, f / (m.beta * m.beta)};
          },
          [&](const InverseMap& m) -> MapJet {
            return {f, -m.b / (z * z), 2.0 * m.b / (z * z * z)};
          },
          [&](const QuadraticMap& m) -> MapJet { return {f, 2.0 * m.a * z, Complex(2.0 * m.a)}; },
          [&](const LogisticMap& m) -> MapJet {
            // f' = lambda f (1 - b f), f'' = lambda (1 - 2 b f) f'
            const Complex fp = m.lambda * f * (1.0 - m.b * f);
            const Complex fpp = m.lambda * (1.0 - 2.0 * m.b * f) * fp;
            return {f, fp, fpp};
          },
      },
      family.params());
}

YPoint y_of_x(const MapFamily& family, XPoint x) {
  const Complex f = f_of_z(family, to_complex(x));
  return {2.0 * f.real(), -2.0 * f.imag()};
}

XPoint x_of_y(const MapFamily& family, YPoint y) {
  const Complex w{y.y1, y.y2};
  if (!in_image_region(family, y)) throw DomainError("point outside the image region", w);
  const Complex f = map_value(y);
  const bool at_origin = std::abs(f) == 0.0;
  const Complex z = std::visit(
      overloaded{
          [&](const LogMap& m) -> Complex {
            return (2.0 * m.gamma / m.alpha) * (std::exp(m.alpha * f) - m.delta);
          },
          [&](const AsinhMap& m) -> Complex {
            return (2.0 * m.amplitude / m.lambda) * std::sinh(m.lambda * f);
          },
          [&](const PowerMap& m) -> Complex {
            const double q = m.lambda + 1.0;
            if (at_origin && q < 0.0) throw SingularityError("power map: origin", w);
            if (at_origin && !(is_integer(q) && q > 0.0))
              throw SingularityError("power map: origin", w);
            const Complex u = principal_pow(f, q);
            return m.beta * (u / q - m.alpha_shift);
          },
          [&](const ExpRadialMap& m) -> Complex {
            if (at_origin) throw SingularityError("exp_radial map: origin", w);
            return m.beta * std::log(f / m.gamma);
          },
          [&](const InverseMap& m) -> Complex {
            if (at_origin) throw SingularityError("inverse map: origin", w);
            return m.b / f;
          },
          [&](const QuadraticMap& m) -> Complex {
            if (at_origin) throw SingularityError("quadratic map: origin", w);
            // Sheet with arg z in (-pi, 0]; the cut is where f/a is positive real.
            const Complex s = f / m.a;
            double theta = std::arg(s);
            if (theta > 0.0) theta -= 2.0 * kPi;
            return std::polar(std::sqrt(std::abs(s)), 0.5 * theta);
          },
          [&](const LogisticMap& m) -> Complex {
            if (at_origin) throw SingularityError("logistic map: origin", w);
            const Complex s = (1.0 / f - m.b) / m.a;
            if (std::abs(s) == 0.0) throw SingularityError("logistic map: f = 1/b", w);
            return -std::log(s) / m.lambda;
          },
      },
      family.params());
  if (!is_finite(z)) throw SingularityError("inverse map is not finite", w);
  return to_xpoint(z);
}

DomainSpec domain_of(const MapFamily& family) {
  return std::visit(
      overloaded{
          [](const LogMap& m) {
            DomainSpec d;
            d.kind = RegionKind::Strip;
            d.y2_half_width = 2.0 * kPi / std::abs(m.alpha);
            d.y2_period = 4.0 * kPi / std::abs(m.alpha);
            d.description = "strip |y2| <= 2 pi/|alpha| with glued edges";
            return d;
          },
          [](const AsinhMap& m) {
            DomainSpec d;
            d.kind = RegionKind::Strip;
            const double w = kPi / std::abs(m.lambda);
            d.y2_half_width = w;
            d.excluded = {{0.0, w}, {0.0, -w}};
            d.description = "strip |y2| <= pi/|lambda|; M vanishes at (0, +-pi/|lambda|)";
            return d;
          },
          [](const PowerMap& m) {
            DomainSpec d;
            const double q = m.lambda + 1.0;
            if (m.lambda == 0.0) {
              d.kind = RegionKind::FullPlane;
              d.description = "full plane (constant mass)";
              return d;
            }
            d.excluded = {{0.0, 0.0}};
            if (std::abs(q) > 1.0) {
              d.kind = RegionKind::HalfPlaneImage;
              d.sector_half_angle = kPi / std::abs(q);
              d.description = "sector |arg(y1 - i y2)| <= pi/|lambda+1| minus the origin";
            } else {
              d.kind = RegionKind::PuncturedPlane;
              d.description = "plane minus the origin";
              if (!is_integer(q)) {
                d.cuts.push_back({-kInf, 0.0});
                d.description += ", cut along y1 < 0";
              }
            }
            return d;
          },
          [](const ExpRadialMap& m) {
            DomainSpec d;
            d.kind = RegionKind::PuncturedPlane;
            d.excluded = {{0.0, 0.0}};
            if (m.gamma > 0.0) {
              d.cuts.push_back({-kInf, 0.0});
              d.description = "plane minus the origin, cut along y1 < 0";
            } else {
              d.cuts.push_back({0.0, kInf});
              d.description = "plane minus the origin, cut along y1 > 0";
            }
            return d;
          },
          [](const InverseMap&) {
            DomainSpec d;
            d.kind = RegionKind::PuncturedPlane;
            d.excluded = {{0.0, 0.0}};
            d.description = "plane minus the origin";
            return d;
          },
          [](const QuadraticMap& m) {
            DomainSpec d;
            d.kind = RegionKind::PuncturedPlane;
            d.excluded = {{0.0, 0.0}};
            if (m.a > 0.0) {
              d.cuts.push_back({0.0, kInf});
              d.description = "plane minus the origin, sheet cut along y1 > 0";
            } else {
              d.cuts.push_back({-kInf, 0.0});
              d.description = "plane minus the origin, sheet cut along y1 < 0";
            }
            return d;
          },
          [](const LogisticMap& m) {
            DomainSpec d;
            d.kind = RegionKind::PuncturedPlane;
            d.excluded = {{0.0, 0.0}};
            std::vector<double> breaks = {0.0};
            if (m.b != 0.0) {
              d.excluded.push_back({2.0 / m.b, 0.0});
              breaks.push_back(2.0 / m.b);
            }
            std::sort(breaks.begin(), breaks.end());
            // The principal log jumps where (2/y1 - b)/a < 0 on the y1 axis.
            std::vector<double> edges = {-kInf};
            edges.insert(edges.end(), breaks.begin(), breaks.end());
            edges.push_back(kInf);
            for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
              const double lo = edges[i], hi = edges[i + 1];
              double probe;
              if (std::isinf(lo)) probe = hi - 1.0;
              else if (std::isinf(hi)) probe = lo + 1.0;
              else probe = 0.5 * (lo + hi);
              if ((2.0 / probe - m.b) / m.a < 0.0) d.cuts.push_back({lo, hi});
            }
            d.description = "plane minus the images of f = 0 and f = 1/b (pole image at infinity)";
            return d;
          },
      },
      family.params());
}

bool in_image_region(const MapFamily& family, YPoint y) {
  if (!std::isfinite(y.y1) || !std::isfinite(y.y2)) return false;
  if (const auto* m = family.get<LogMap>()) return std::abs(y.y2) <= 2.0 * kPi / std::abs(m->alpha);
  if (const auto* m = family.get<AsinhMap>()) return std::abs(y.y2) <= kPi / std::abs(m->lambda);
  if (const auto* m = family.get<PowerMap>()) {
    const double q = m->lambda + 1.0;
    if (m->lambda == 0.0 || std::abs(q) <= 1.0) return true;
    if (y.y1 == 0.0 && y.y2 == 0.0) return false;
    return std::abs(std::atan2(-y.y2, y.y1)) <= kPi / std::abs(q);
  }
  return true;
}

bool in_principal_sheet(const MapFamily& family, XPoint x) {
  const Complex z = to_complex(x);
  return std::visit(
      overloaded{
          [&](const LogMap& m) {
            const Complex u = m.alpha * z / (2.0 * m.gamma) + m.delta;
            return std::abs(u) > 0.0 && !on_negative_real_axis(u);
          },
          [&](const AsinhMap& m) {
            const Complex s = m.lambda * z / (2.0 * m.amplitude);
            return !(s.real() == 0.0 && std::abs(s.imag()) >= 1.0);
          },
          [&](const PowerMap& m) {
            const double q = m.lambda + 1.0;
            const Complex u = q * (z / m.beta + m.alpha_shift);
            if (std::abs(u) == 0.0) return m.lambda == 0.0;
            const double p = 1.0 / q;
            if (std::abs(p) <= 1.0) return is_integer(p) || !on_negative_real_axis(u);
            return std::abs(std::arg(u)) < kPi / std::abs(p);
          },
          [&](const ExpRadialMap& m) { return std::abs((z / m.beta).imag()) < kPi; },
          [&](const InverseMap&) { return std::abs(z) > 0.0; },
          [&](const QuadraticMap&) {
            return x.x2 < 0.0 || (x.x2 == 0.0 && x.x1 > 0.0);
          },
          [&](const LogisticMap& m) {
            const Complex d = m.a * std::exp(-m.lambda * z) + m.b;
            return std::abs(m.lambda * x.x2) < kPi && std::abs(d) > 0.0;
          },
      },
      family.params());
}

int sheet_count(const MapFamily& family) {
  if (family.get<QuadraticMap>()) return 2;
  if (const auto* m = family.get<PowerMap>(); m && m->lambda == -0.5 && m->alpha_shift == 0.0)
    return 2;
  return 1;
}

Jacobian jacobian_from_derivative(Complex fp) {
  return {2.0 * fp.real(), -2.0 * fp.imag(), -2.0 * fp.imag(), -2.0 * fp.real()};
}

}  // namespace pdm
