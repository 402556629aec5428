#pragma once
// Second-order Taylor jets over the complex numbers.
//
// A Jet2 carries (f, f', f'') of a holomorphic function at one point. Jet
// arithmetic propagates the first two derivatives exactly (up to rounding),
// which makes it an independent oracle for the hand-derived derivatives of
// every map family in maps.hpp.

#include <complex>

namespace pdm {

using Complex = std::complex<double>;

struct Jet2 {
  Complex val{};
  Complex d1{};
  Complex d2{};

  /// Jet of the identity map z -> z.
  static constexpr Jet2 identity(Complex z) { return {z, Complex(1.0), Complex(0.0)}; }
  /// Jet of a constant.
  static constexpr Jet2 constant(Complex c) { return {c, Complex(0.0), Complex(0.0)}; }
};

bool is_finite(Complex z) noexcept;

Jet2 jet_add(const Jet2& a, const Jet2& b);
Jet2 jet_sub(const Jet2& a, const Jet2& b);
Jet2 jet_mul(const Jet2& a, const Jet2& b);
/// Throws SingularityError when |b.val| == 0.
Jet2 jet_div(const Jet2& a, const Jet2& b);
Jet2 jet_neg(const Jet2& a);
Jet2 jet_scale(const Jet2& a, Complex c);

Jet2 jet_exp(const Jet2& a);
/// Principal logarithm; the cut is the closed negative real axis.
Jet2 jet_ln(const Jet2& a);
Jet2 jet_sinh(const Jet2& a);
/// Principal inverse hyperbolic sine; cuts on the imaginary axis beyond +-i.
Jet2 jet_asinh(const Jet2& a);
/// Principal power a^p. Integer p is single-valued (only a == 0 with p < 0
/// is singular); fractional p shares the logarithm's cut.
Jet2 jet_pow(const Jet2& a, double p);

inline Jet2 operator+(const Jet2& a, const Jet2& b) { return jet_add(a, b); }
inline Jet2 operator-(const Jet2& a, const Jet2& b) { return jet_sub(a, b); }
inline Jet2 operator*(const Jet2& a, const Jet2& b) { return jet_mul(a, b); }
inline Jet2 operator/(const Jet2& a, const Jet2& b) { return jet_div(a, b); }
inline Jet2 operator-(const Jet2& a) { return jet_neg(a); }
inline Jet2 operator*(Complex c, const Jet2& a) { return jet_scale(a, c); }
inline Jet2 operator+(const Jet2& a, Complex c) { return {a.val + c, a.d1, a.d2}; }

}  // namespace pdm
