#pragma once
// Constant-mass solvable problems H = -d^2/dx1^2 - d^2/dx2^2 + V(x).

#include <string>
#include <variant>
#include <vector>

#include "pdm/maps.hpp"

namespace pdm {

/// Hermite functions and oscillator states are capped at this order.
inline constexpr int kMaxHermiteOrder = 200;
inline constexpr int kMaxOscillatorQuantum = 60;

/// v(x) = omega^2 x^2.
struct Oscillator1D {
  double omega;
  friend bool operator==(const Oscillator1D&, const Oscillator1D&) = default;
};

/// v(x) = C (exp(-2 lambda x) - 2 exp(-lambda x)).
struct Morse {
  double depth;  // C
  double lambda;
  friend bool operator==(const Morse&, const Morse&) = default;
};

/// v(x) = A cot^2(lambda x) + B cot(lambda x) on 0 < lambda x < pi.
struct RosenMorseTrig {
  double a;
  double b;
  double lambda;
  friend bool operator==(const RosenMorseTrig&, const RosenMorseTrig&) = default;
};

class OneDimPotential {
 public:
  using Params = std::variant<Oscillator1D, Morse, RosenMorseTrig>;

  static OneDimPotential oscillator(double omega);
  static OneDimPotential morse(double depth, double lambda);
  static OneDimPotential rosen_morse_trig(double a, double b, double lambda);

  const Params& params() const noexcept { return params_; }
  template <class T>
  const T* get() const noexcept {
    return std::get_if<T>(&params_);
  }
  std::string describe() const;

  /// Throws DomainError outside the open interval of definition.
  double operator()(double x) const;
  bool in_domain(double x) const;
  /// Open interval of definition; infinite ends for full-line potentials.
  double lower() const;
  double upper() const;
  /// Continuum edge (infinity when the spectrum is purely discrete).
  double continuum_threshold() const;

  friend bool operator==(const OneDimPotential&, const OneDimPotential&) = default;

 private:
  explicit OneDimPotential(Params p) : params_(p) {}
  Params params_;
};

/// V = omega1^2 x1^2 + omega2^2 x2^2.
struct AnisotropicOscillator {
  double omega1;
  double omega2;
  friend bool operator==(const AnisotropicOscillator&, const AnisotropicOscillator&) = default;
};

/// V = v1(x1) + v2(x2).
struct Separable {
  OneDimPotential v1;
  OneDimPotential v2;
  friend bool operator==(const Separable&, const Separable&) = default;
};

class BasePotential {
 public:
  using Params = std::variant<AnisotropicOscillator, Separable>;

  static BasePotential oscillator(double omega1, double omega2);
  static BasePotential separable(OneDimPotential v1, OneDimPotential v2);

  const Params& params() const noexcept { return params_; }
  template <class T>
  const T* get() const noexcept {
    return std::get_if<T>(&params_);
  }
  std::string describe() const;

  friend bool operator==(const BasePotential&, const BasePotential&) = default;

 private:
  explicit BasePotential(Params p) : params_(std::move(p)) {}
  Params params_;
};

struct Grid1D {
  double x0 = 0.0;
  double h = 0.0;
  int n = 0;
  double at(int i) const noexcept { return x0 + h * i; }
  friend bool operator==(const Grid1D&, const Grid1D&) = default;
};

/// Bound state sampled on a uniform grid; zero outside [x0 - h, x0 + n h].
struct Eigenpair1D {
  double energy = 0.0;
  std::vector<double> samples;
  Grid1D grid;
  double norm = 0.0;

  /// Cubic (4-point Lagrange) interpolation of the samples.
  double eval(double x) const;
};

struct OscillatorState {
  int n1;
  int n2;
  double omega1;
  double omega2;
};

struct SeparableState {
  Eigenpair1D e1;
  Eigenpair1D e2;
};

struct BaseState {
  std::variant<OscillatorState, SeparableState> kind;
  double energy = 0.0;
};

/// Physicists' Hermite polynomial by the three-term recurrence.
double hermite_eval(int n, double u);

/// Normalized Hermite function pi^(-1/4) (2^n n!)^(-1/2) H_n(u) exp(-u^2/2).
double hermite_function(int n, double u);

double potential_eval(const BasePotential& v, XPoint x);

BaseState oscillator_state(double omega1, double omega2, int n1, int n2);
BaseState separable_state(Eigenpair1D e1, Eigenpair1D e2);
double base_state_eval(const BaseState& s, XPoint x);

/// Lowest k eigenpairs of -d^2/dx^2 + v with Dirichlet ends at x0 - h and
/// x0 + n h. Throws CountError when fewer than k lie below the continuum.
std::vector<Eigenpair1D> solve_1d(const OneDimPotential& v, Grid1D grid, int k);

}  // namespace pdm
