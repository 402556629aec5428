#include "pdm/pdm_model.hpp"

#include <cmath>
#include <numbers>

#include "pdm/errors.hpp"

namespace pdm {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double rho_of(YPoint y) { return std::hypot(y.y1, y.y2); }

double nonzero_rho(YPoint y) {
  const double r = rho_of(y);
  if (r == 0.0) throw SingularityError("closed form singular at the origin", {0.0, 0.0});
  return r;
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

PdmModel::PdmModel(MapFamily f, BasePotential v)
    : family(std::move(f)), base(std::move(v)), domain(domain_of(family)) {}

std::string PdmModel::describe() const { return family.describe() + " over " + base.describe(); }

PullBack pull_back(const MapFamily& family, YPoint y) {
  const XPoint x = x_of_y(family, y);
  const MapJet jet = f_derivs(family, to_complex(x));
  const double fp2 = std::norm(jet.fp);
  if (!(fp2 > 0.0) || !std::isfinite(fp2))
    throw SingularityError("f' vanishes or diverges", {y.y1, y.y2});
  return {x, jet, 1.0 / (4.0 * fp2)};
}

double mass_of(const MapFamily& family, YPoint y) { return pull_back(family, y).mass; }

double mass_of(const PdmModel& model, YPoint y) { return mass_of(model.family, y); }

double mass_closed_form(const MapFamily& family, YPoint y) {
  return std::visit(
      overloaded{
          [&](const LogMap& m) { return m.gamma * m.gamma * std::exp(m.alpha * y.y1); },
          [&](const AsinhMap& m) {
            return 2.0 * m.amplitude * m.amplitude / (m.lambda * m.lambda) *
                   (std::cosh(m.lambda * y.y1) + std::cos(m.lambda * y.y2));
          },
          [&](const PowerMap& m) {
            const double r2 = rho_of(y) * rho_of(y);
            if (r2 == 0.0 && m.lambda < 0.0)
              throw SingularityError("closed form singular at the origin", {0.0, 0.0});
            return m.beta * m.beta / std::pow(4.0, m.lambda + 1.0) * std::pow(r2, m.lambda);
          },
          [&](const ExpRadialMap& m) {
            const double r = nonzero_rho(y);
            return m.beta * m.beta / (r * r);
          },
          [&](const InverseMap& m) {
            const double r = nonzero_rho(y);
            return 4.0 * m.b * m.b / (r * r * r * r);
          },
          [&](const QuadraticMap& m) {
            const double r = nonzero_rho(y);
            return 1.0 / (8.0 * std::abs(m.a) * r);
          },
          [&](const LogisticMap& m) {
            const double r = nonzero_rho(y);
            const double c = y.y1 / r;
            return 4.0 / (m.lambda * m.lambda * r * r * (m.b * m.b * r * r - 4.0 * m.b * r * c + 4.0));
          },
      },
      family.params());
}

double weight_g(const PdmModel& model, YPoint y) {
  return 1.0 / std::sqrt(mass_of(model, y));
}

double weight_laplacian_ratio(const MapFamily& family, YPoint y) {
  const PullBack pb = pull_back(family, y);
  const double fp2 = std::norm(pb.jet.fp);
  return std::norm(pb.jet.fpp) / (4.0 * fp2 * fp2);
}

double potential_shift(const MapFamily& family, YPoint y) {
  const PullBack pb = pull_back(family, y);
  return -std::norm(pb.jet.fpp) / std::norm(pb.jet.fp);
}

double potential_U(const PdmModel& model, YPoint y) {
  const PullBack pb = pull_back(model.family, y);
  return potential_eval(model.base, pb.x) - std::norm(pb.jet.fpp) / std::norm(pb.jet.fp);
}

double potential_U_printed(const PdmModel& model, YPoint y) {
  const PullBack pb = pull_back(model.family, y);
  const double fp2 = std::norm(pb.jet.fp);
  return potential_eval(model.base, pb.x) - std::norm(pb.jet.fpp) / (4.0 * fp2 * fp2);
}

double potential_shift_closed_form(const MapFamily& family, YPoint y) {
  return std::visit(
      overloaded{
          [&](const LogMap& m) { return -m.alpha * m.alpha / 4.0; },
          [&](const AsinhMap& m) {
            const double ch = std::cosh(m.lambda * y.y1), c = std::cos(m.lambda * y.y2);
            return -m.lambda * m.lambda * (ch - c) / (4.0 * (ch + c));
          },
          [&](const PowerMap& m) {
            const double r = nonzero_rho(y);
            return -m.lambda * m.lambda / (r * r);
          },
          [&](const ExpRadialMap&) {
            const double r = nonzero_rho(y);
            return -1.0 / (r * r);
          },
          [&](const InverseMap&) {
            const double r = nonzero_rho(y);
            return -4.0 / (r * r);
          },
          [&](const QuadraticMap&) {
            const double r = nonzero_rho(y);
            return -1.0 / (4.0 * r * r);
          },
          [&](const LogisticMap& m) {
            const double r = nonzero_rho(y);
            const double c = y.y1 / r;
            const double b = m.b;
            return -4.0 * (b * b * r * r - 2.0 * b * r * c + 1.0) /
                   (r * r * (b * b * r * r - 4.0 * b * r * c + 4.0));
          },
      },
      family.params());
}

std::vector<PrintedFormAudit> printed_form_audit(const MapFamily& family, YPoint y) {
  constexpr double tol = 1e-10;
  std::vector<PrintedFormAudit> out;
  auto add = [&](std::string name, double printed, double reference, double predicted) {
    const double ratio = printed / reference;
    out.push_back({std::move(name), printed, reference, ratio, predicted,
                   close_rel(ratio, predicted, tol)});
  };

  const PullBack pb = pull_back(family, y);
  const double fp2 = std::norm(pb.jet.fp);
  const double laplacian_ratio = std::norm(pb.jet.fpp) / (4.0 * fp2 * fp2);
  // Correction without the 1/M factor vs the exact -g Delta g.
  if (std::norm(pb.jet.fpp) > 0.0)
    add("effective potential correction f''f*''/(4(f'f*')^2) vs g*Laplacian(g)", laplacian_ratio,
        std::norm(pb.jet.fpp) / fp2, pb.mass);

  const Complex f = pb.jet.f;
  if (const auto* m = family.get<AsinhMap>()) {
    add("asinh mass closed form vs 1/(4|f'|^2)", mass_closed_form(family, y), pb.mass,
        4.0 / (m->lambda * m->lambda));
  } else if (const auto* m = family.get<QuadraticMap>()) {
    const double r = nonzero_rho(y);
    add("quadratic shift -1/(4 a^2 rho^2) vs -(Laplacian g)/g", -1.0 / (4.0 * m->a * m->a * r * r),
        -laplacian_ratio, 1.0 / (m->a * m->a));
  } else if (const auto* m = family.get<LogisticMap>()) {
    const double lam = m->lambda, b = m->b;
    const double ff = std::norm(f);
    const double printed_f =
        -lam * lam * (1.0 - 2.0 * b * 2.0 * f.real() + 4.0 * b * b * ff) / (4.0 * ff);
    add("logistic shift f-form vs -(Laplacian g)/g", printed_f, -laplacian_ratio,
        lam * lam * std::norm(1.0 - b * f));
    const Complex fp_printed = -lam * f * (1.0 - b * f);
    const Complex fpp_printed = -lam * (1.0 - 2.0 * b * f) * pb.jet.fp;
    add("logistic f' = -lambda f (1 - b f) vs f'", (fp_printed / pb.jet.fp).real(), 1.0, -1.0);
    add("logistic f'' = -lambda (1 - 2 b f) f' vs f''", (fpp_printed / pb.jet.fpp).real(), 1.0,
        -1.0);
  }
  return out;
}

TransformedState::TransformedState(PdmModel m, BaseState s)
    : model(std::move(m)),
      base_state(std::move(s)),
      energy(base_state.energy),
      sheet_factor(std::sqrt(static_cast<double>(sheet_count(model.family)))) {
  const bool osc_state = std::holds_alternative<OscillatorState>(base_state.kind);
  const auto* osc = model.base.get<AnisotropicOscillator>();
  if (osc_state != (osc != nullptr))
    throw ConfigError("base state does not belong to the model's base potential");
  if (osc) {
    const auto& o = std::get<OscillatorState>(base_state.kind);
    if (o.omega1 != osc->omega1 || o.omega2 != osc->omega2)
      throw ConfigError("oscillator state frequencies differ from the base potential");
  }
}

double transformed_state_eval(const TransformedState& ts, YPoint y, double eps) {
  const DomainSpec& dom = ts.model.domain;
  if (!dom.contains(y)) throw DomainError("point outside the image region", {y.y1, y.y2});
  if (dom.distance_to_excluded(y) < eps)
    throw SingularityError("evaluation refused near an excluded point", {y.y1, y.y2});
  const PullBack pb = pull_back(ts.model.family, y);
  return ts.sheet_factor * std::sqrt(pb.mass) * base_state_eval(ts.base_state, pb.x);
}

}  // namespace pdm
