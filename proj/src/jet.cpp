#include "pdm/jet.hpp"

#include <cmath>

#include "pdm/errors.hpp"

namespace pdm {

namespace {

// Chain rule for g(a) given g, g', g'' evaluated at a.val.
Jet2 compose(const Jet2& a, Complex g0, Complex g1, Complex g2) {
  return {g0, g1 * a.d1, g2 * a.d1 * a.d1 + g1 * a.d2};
}

bool on_negative_real_axis(Complex z) { return z.imag() == 0.0 && z.real() < 0.0; }

Complex ipow(Complex z, long n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  Complex result(1.0);
  Complex base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

}  // namespace

bool is_finite(Complex z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Jet2 jet_add(const Jet2& a, const Jet2& b) { return {a.val + b.val, a.d1 + b.d1, a.d2 + b.d2}; }

Jet2 jet_sub(const Jet2& a, const Jet2& b) { return {a.val - b.val, a.d1 - b.d1, a.d2 - b.d2}; }

Jet2 jet_mul(const Jet2& a, const Jet2& b) {
  return {a.val * b.val, a.d1 * b.val + a.val * b.d1,
          a.d2 * b.val + 2.0 * a.d1 * b.d1 + a.val * b.d2};
}

Jet2 jet_div(const Jet2& a, const Jet2& b) {
  if (std::abs(b.val) == 0.0) throw SingularityError("jet division by zero", b.val);
  const Complex q = a.val / b.val;
  const Complex q1 = (a.d1 - q * b.d1) / b.val;
  const Complex q2 = (a.d2 - 2.0 * q1 * b.d1 - q * b.d2) / b.val;
  return {q, q1, q2};
}

Jet2 jet_neg(const Jet2& a) { return {-a.val, -a.d1, -a.d2}; }

Jet2 jet_scale(const Jet2& a, Complex c) { return {c * a.val, c * a.d1, c * a.d2}; }

Jet2 jet_exp(const Jet2& a) {
  const Complex e = std::exp(a.val);
  return compose(a, e, e, e);
}

Jet2 jet_ln(const Jet2& a) {
  if (std::abs(a.val) == 0.0) throw SingularityError("logarithm of zero", a.val);
  if (on_negative_real_axis(a.val)) throw DomainError("logarithm on its branch cut", a.val);
  const Complex inv = 1.0 / a.val;
  return compose(a, std::log(a.val), inv, -inv * inv);
}

Jet2 jet_sinh(const Jet2& a) {
  const Complex s = std::sinh(a.val);
  return compose(a, s, std::cosh(a.val), s);
}

Jet2 jet_asinh(const Jet2& a) {
  const Complex z = a.val;
  if (z.real() == 0.0 && std::abs(z.imag()) >= 1.0) {
    if (std::abs(z.imag()) == 1.0) throw SingularityError("asinh branch point", z);
    throw DomainError("asinh on its branch cut", z);
  }
  const Complex root = std::sqrt(1.0 + z * z);
  const Complex g1 = 1.0 / root;
  const Complex g2 = -z * g1 * g1 * g1;
  return compose(a, std::asinh(z), g1, g2);
}

Jet2 jet_pow(const Jet2& a, double p) {
  const Complex z = a.val;
  const bool integral = std::floor(p) == p;
  if (std::abs(z) == 0.0) {
    if (p < 0.0 || !integral) throw SingularityError("power at zero", z);
  } else if (!integral && on_negative_real_axis(z)) {
    throw DomainError("fractional power on its branch cut", z);
  }
  if (integral) {
    if (p == 0.0) return Jet2::constant(1.0);
    if (p == 1.0) return a;
    const long n = static_cast<long>(p);
    return compose(a, ipow(z, n), p * ipow(z, n - 1), p * (p - 1.0) * ipow(z, n - 2));
  }
  const Complex g0 = std::exp(p * std::log(z));
  return compose(a, g0, p * g0 / z, p * (p - 1.0) * g0 / (z * z));
}

}  // namespace pdm
