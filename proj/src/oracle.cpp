#include "pdm/oracle.hpp"

#include <variant>

namespace pdm {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

MapJet to_map_jet(const Jet2& j) { return {j.val, j.d1, j.d2}; }

}  // namespace

MapJet oracle_derivs(const MapFamily& family, Complex z) {
  const Jet2 id = Jet2::identity(z);
  const Jet2 out = std::visit(
      overloaded{
          [&](const LogMap& m) {
            const Jet2 u = Complex(m.alpha / (2.0 * m.gamma)) * id + Complex(m.delta);
            return Complex(1.0 / m.alpha) * jet_ln(u);
          },
          [&](const AsinhMap& m) {
            const Jet2 s = Complex(m.lambda / (2.0 * m.amplitude)) * id;
            return Complex(1.0 / m.lambda) * jet_asinh(s);
          },
          [&](const PowerMap& m) {
            const double q = m.lambda + 1.0;
            const Jet2 u = Complex(q / m.beta) * id + Complex(q * m.alpha_shift);
            return jet_pow(u, 1.0 / q);
          },
          [&](const ExpRadialMap& m) {
            return Complex(m.gamma) * jet_exp(Complex(1.0 / m.beta) * id);
          },
          [&](const InverseMap& m) { return jet_div(Jet2::constant(m.b), id); },
          [&](const QuadraticMap& m) { return Complex(m.a) * (id * id); },
          [&](const LogisticMap& m) {
            const Jet2 d = Complex(m.a) * jet_exp(Complex(-m.lambda) * id) + Complex(m.b);
            return jet_div(Jet2::constant(1.0), d);
          },
      },
      family.params());
  return to_map_jet(out);
}

}  // namespace pdm
