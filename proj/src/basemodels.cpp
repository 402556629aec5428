#include "pdm/basemodels.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pdm/errors.hpp"
#include "pdm/tridiag.hpp"

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

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// potentials

OneDimPotential OneDimPotential::oscillator(double omega) {
  require(positive(omega), "oscillator: omega must be positive");
  return OneDimPotential(Oscillator1D{omega});
}

OneDimPotential OneDimPotential::morse(double depth, double lambda) {
  require(positive(depth), "morse: C must be positive");
  require(positive(lambda), "morse: lambda must be positive");
  return OneDimPotential(Morse{depth, lambda});
}

OneDimPotential OneDimPotential::rosen_morse_trig(double a, double b, double lambda) {
  require(positive(a), "rosen_morse: A must be positive");
  require(positive(b), "rosen_morse: B must be positive");
  require(positive(lambda), "rosen_morse: lambda must be positive");
  return OneDimPotential(RosenMorseTrig{a, b, lambda});
}

std::string OneDimPotential::describe() const {
  return std::visit(
      overloaded{
          [](const Oscillator1D& p) { return "oscillator(omega=" + fmt(p.omega) + ")"; },
          [](const Morse& p) {
            return "morse(C=" + fmt(p.depth) + ", lambda=" + fmt(p.lambda) + ")";
          },
          [](const RosenMorseTrig& p) {
            return "rosen_morse(A=" + fmt(p.a) + ", B=" + fmt(p.b) + ", lambda=" + fmt(p.lambda) +
                   ")";
          },
      },
      params_);
}

bool OneDimPotential::in_domain(double x) const {
  return std::isfinite(x) && x > lower() && x < upper();
}

double OneDimPotential::lower() const {
  return get<RosenMorseTrig>() ? 0.0 : -kInf;
}

double OneDimPotential::upper() const {
  if (const auto* p = get<RosenMorseTrig>()) return kPi / p->lambda;
  return kInf;
}

double OneDimPotential::continuum_threshold() const {
  return get<Morse>() ? 0.0 : kInf;
}

double OneDimPotential::operator()(double x) const {
  if (!in_domain(x)) throw DomainError("1D potential evaluated outside its interval", {x, 0.0});
  return std::visit(
      overloaded{
          [&](const Oscillator1D& p) { return p.omega * p.omega * x * x; },
          [&](const Morse& p) {
            const double e = std::exp(-p.lambda * x);
            return p.depth * (e * e - 2.0 * e);
          },
          [&](const RosenMorseTrig& p) {
            const double c = 1.0 / std::tan(p.lambda * x);
            return p.a * c * c + p.b * c;
          },
      },
      params_);
}

BasePotential BasePotential::oscillator(double omega1, double omega2) {
  require(positive(omega1) && positive(omega2), "oscillator: frequencies must be positive");
  return BasePotential(AnisotropicOscillator{omega1, omega2});
}

BasePotential BasePotential::separable(OneDimPotential v1, OneDimPotential v2) {
  return BasePotential(Separable{std::move(v1), std::move(v2)});
}

std::string BasePotential::describe() const {
  return std::visit(
      overloaded{
          [](const AnisotropicOscillator& p) {
            return "oscillator(omega1=" + fmt(p.omega1) + ", omega2=" + fmt(p.omega2) + ")";
          },
          [](const Separable& p) {
            return "separable(" + p.v1.describe() + ", " + p.v2.describe() + ")";
          },
      },
      params_);
}

double potential_eval(const BasePotential& v, XPoint x) {
  return std::visit(
      overloaded{
          [&](const AnisotropicOscillator& p) {
            return p.omega1 * p.omega1 * x.x1 * x.x1 + p.omega2 * p.omega2 * x.x2 * x.x2;
          },
          [&](const Separable& p) { return p.v1(x.x1) + p.v2(x.x2); },
      },
      v.params());
}

// ---------------------------------------------------------------------------
// Hermite

double hermite_eval(int n, double u) {
  if (n < 0) throw ConfigError("hermite order must be non-negative");
  if (n > kMaxHermiteOrder) throw CapacityError("hermite order exceeds 200");
  double h0 = 1.0;
  if (n == 0) return h0;
  double h1 = 2.0 * u;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * u * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  if (!std::isfinite(h1)) throw CapacityError("hermite value overflows double range");
  return h1;
}

double hermite_function(int n, double u) {
  if (n < 0) throw ConfigError("hermite order must be non-negative");
  if (n > kMaxHermiteOrder) throw CapacityError("hermite order exceeds 200");
  double p0 = std::pow(kPi, -0.25) * std::exp(-0.5 * u * u);
  if (n == 0) return p0;
  double p1 = std::sqrt(2.0) * u * p0;
  for (int k = 1; k < n; ++k) {
    const double p2 = std::sqrt(2.0 / (k + 1)) * u * p1 - std::sqrt(double(k) / (k + 1)) * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// ---------------------------------------------------------------------------
// states

BaseState oscillator_state(double omega1, double omega2, int n1, int n2) {
  require(positive(omega1) && positive(omega2), "oscillator: frequencies must be positive");
  require(n1 >= 0 && n2 >= 0, "oscillator: quantum numbers must be non-negative");
  if (n1 > kMaxOscillatorQuantum || n2 > kMaxOscillatorQuantum)
    throw CapacityError("oscillator quantum numbers are capped at 60");
  BaseState s;
  s.kind = OscillatorState{n1, n2, omega1, omega2};
  s.energy = (2.0 * n1 + 1.0) * omega1 + (2.0 * n2 + 1.0) * omega2;
  return s;
}

BaseState separable_state(Eigenpair1D e1, Eigenpair1D e2) {
  BaseState s;
  s.energy = e1.energy + e2.energy;
  s.kind = SeparableState{std::move(e1), std::move(e2)};
  return s;
}

double base_state_eval(const BaseState& s, XPoint x) {
  return std::visit(
      overloaded{
          [&](const OscillatorState& o) {
            const double s1 = std::sqrt(o.omega1), s2 = std::sqrt(o.omega2);
            return std::sqrt(s1) * hermite_function(o.n1, s1 * x.x1) * std::sqrt(s2) *
                   hermite_function(o.n2, s2 * x.x2);
          },
          [&](const SeparableState& p) { return p.e1.eval(x.x1) * p.e2.eval(x.x2); },
      },
      s.kind);
}

double Eigenpair1D::eval(double x) const {
  const int n = grid.n;
  const double t = (x - grid.x0) / grid.h;
  if (!std::isfinite(t) || t <= -1.0 || t >= n) return 0.0;
  const int i = static_cast<int>(std::floor(t));
  const double s = t - i;
  auto at = [&](int j) { return j < 0 || j >= n ? 0.0 : samples[j]; };
  const double fm = at(i - 1), f0 = at(i), f1 = at(i + 1), f2 = at(i + 2);
  // Lagrange weights on nodes -1, 0, 1, 2.
  const double wm = -s * (s - 1.0) * (s - 2.0) / 6.0;
  const double w0 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
  const double w1 = -(s + 1.0) * s * (s - 2.0) / 2.0;
  const double w2 = (s + 1.0) * s * (s - 1.0) / 6.0;
  return wm * fm + w0 * f0 + w1 * f1 + w2 * f2;
}

std::vector<Eigenpair1D> solve_1d(const OneDimPotential& v, Grid1D grid, int k) {
  require(k >= 1, "solve_1d: k must be at least 1");
  require(grid.n >= 3 && positive(grid.h) && std::isfinite(grid.x0),
          "solve_1d: grid needs n >= 3 and h > 0");
  require(k <= grid.n, "solve_1d: k exceeds grid size");
  const int n = grid.n;
  const double inv_h2 = 1.0 / (grid.h * grid.h);
  SymTridiagonal t;
  t.diag.resize(n);
  t.off.assign(n - 1, -inv_h2);
  for (int i = 0; i < n; ++i) t.diag[i] = 2.0 * inv_h2 + v(grid.at(i));

  const double threshold = v.continuum_threshold();
  if (std::isfinite(threshold)) {
    const int available = sturm_count(t, threshold);
    if (available < k)
      throw CountError("only " + std::to_string(available) + " bound states below threshold, " +
                           std::to_string(k) + " requested",
                       available);
  }

  std::vector<Eigenpair1D> out;
  out.reserve(k);
  for (int j = 0; j < k; ++j) {
    const double e = kth_eigenvalue(t, j);
    std::vector<double> vec = inverse_iteration(t, e);
    for (const auto& prev : out) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += vec[i] * prev.samples[i];
      dot *= grid.h;
      for (int i = 0; i < n; ++i) vec[i] -= dot * prev.samples[i];
    }
    double ss = 0.0;
    for (double s : vec) ss += s * s;
    const double scale = 1.0 / std::sqrt(ss * grid.h);
    double peak = 0.0;
    for (double& s : vec) {
      s *= scale;
      peak = std::max(peak, std::abs(s));
    }
    for (double s : vec) {
      if (std::abs(s) > 1e-12 * peak) {
        if (s < 0.0)
          for (double& r : vec) r = -r;
        break;
      }
    }
    Eigenpair1D p;
    p.energy = e;
    p.grid = grid;
    double nrm = 0.0;
    for (double s : vec) nrm += s * s;
    p.norm = nrm * grid.h;
    p.samples = std::move(vec);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace pdm
