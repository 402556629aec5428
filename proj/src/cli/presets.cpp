#include "pdm/presets.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "pdm/errors.hpp"

namespace pdm::cli {

namespace {

constexpr double kPi = std::numbers::pi;

ModelConfig oscillator_config(ParamSet family, int n1, int n2) {
  ModelConfig c;
  c.family = std::move(family);
  c.base_kind = "oscillator";
  c.omega1 = 1.0;
  c.omega2 = std::numbers::sqrt2;
  c.state.n1 = n1;
  c.state.n2 = n2;
  return c;
}

// Log map with alpha = gamma = 1 on y1 in [-4, 2], y2 over two periods of the figure.
ModelConfig log_config(int n1, int n2) {
  ModelConfig c =
      oscillator_config(ParamSet{"log", {{"alpha", 1.0}, {"gamma", 1.0}, {"delta", 0.0}}}, n1, n2);
  c.grid = GridConfig{-4.0, -2.0 * kPi, 0.02, 301, 630, std::nullopt};
  return c;
}

// Quadratic map a = 1/8 on [-4, 4]^2; the origin is masked.
ModelConfig quadratic_config(int n1, int n2, bool mask_cuts) {
  ModelConfig c = oscillator_config(ParamSet{"quadratic", {{"a", 0.125}}}, n1, n2);
  c.grid = GridConfig{-4.0, -4.0, 0.02, 401, 401, std::nullopt};
  c.numerics.mask_cuts = mask_cuts;
  return c;
}

}  // namespace

FieldKind parse_field_kind(const std::string& name) {
  if (name == "mass") return FieldKind::Mass;
  if (name == "potential") return FieldKind::Potential;
  if (name == "potential_printed") return FieldKind::PotentialPrinted;
  if (name == "state") return FieldKind::State;
  throw ConfigError("unknown field '" + name + "'");
}

std::string to_string(FieldKind k) {
  switch (k) {
    case FieldKind::Mass:
      return "mass";
    case FieldKind::Potential:
      return "potential";
    case FieldKind::PotentialPrinted:
      return "potential_printed";
    case FieldKind::State:
      return "state";
  }
  return "?";
}

const std::vector<FigurePreset>& figure_presets() {
  static const std::vector<FigurePreset> presets = [] {
    std::vector<FigurePreset> p;
    p.push_back({"fig1", "mass M(y) = exp(y1) for the log map", log_config(0, 0), FieldKind::Mass,
                 std::nullopt});
    p.push_back({"fig2", "effective potential U(y) for the log map", log_config(0, 0),
                 FieldKind::Potential, std::nullopt});
    p.push_back({"fig3", "transformed ground state (0,0) for the log map", log_config(0, 0),
                 FieldKind::State, std::nullopt});
    p.push_back({"fig4", "transformed state (1,0) for the log map", log_config(1, 0),
                 FieldKind::State, Transect{{0.0, 0.0}, {0.0, 2.0 * kPi}, 401, 1}});
    p.push_back({"fig5", "transformed state (0,1) for the log map", log_config(0, 1),
                 FieldKind::State, std::nullopt});
    p.push_back({"fig6", "mass M = 1/rho for the quadratic map", quadratic_config(0, 0, false),
                 FieldKind::Mass, std::nullopt});
    p.push_back({"fig7", "effective potential U(y) for the quadratic map",
                 quadratic_config(0, 0, false), FieldKind::Potential, std::nullopt});
    p.push_back({"fig8", "transformed ground state (0,0) for the quadratic map",
                 quadratic_config(0, 0, false), FieldKind::State, std::nullopt});
    p.push_back({"fig9", "transformed state (1,0) for the quadratic map",
                 quadratic_config(1, 0, true), FieldKind::State,
                 Transect{{-2.0, -4.0}, {-2.0, 4.0}, 401, 1}});
    p.push_back({"fig10", "transformed state (0,1) for the quadratic map",
                 quadratic_config(0, 1, true), FieldKind::State, std::nullopt});
    for (auto& f : p) {
      f.config.outputs.fields = {to_string(f.field)};
    }
    return p;
  }();
  return presets;
}

const FigurePreset& find_preset(const std::string& name) {
  for (const auto& p : figure_presets()) {
    if (p.name == name) return p;
  }
  std::string names;
  for (const auto& p : figure_presets()) names += (names.empty() ? "" : ", ") + p.name;
  throw ConfigError("unknown figure preset '" + name + "' (expected one of: " + names + ")");
}

Field2D compute_field(const TransformedState& ts, FieldKind kind,
                      std::shared_ptr<const Grid2D> grid) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const PdmModel& model = ts.model;
  switch (kind) {
    case FieldKind::Mass:
      return Field2D::sample(grid, [&](YPoint y) { return mass_of(model, y); }, nan);
    case FieldKind::Potential:
      return Field2D::sample(grid, [&](YPoint y) { return potential_U(model, y); }, nan);
    case FieldKind::PotentialPrinted:
      return Field2D::sample(grid, [&](YPoint y) { return potential_U_printed(model, y); }, nan);
    case FieldKind::State:
      return Field2D::sample(grid, [&](YPoint y) { return transformed_state_eval(ts, y, 0.0); },
                             nan);
  }
  throw ConfigError("unknown field kind");
}

}  // namespace pdm::cli
