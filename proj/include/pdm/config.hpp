#pragma once
// Declarative model configuration (TOML). Physical parameters are required;
// numerics, checks, tolerances and outputs have defaults.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdm/basemodels.hpp"
#include "pdm/grid.hpp"
#include "pdm/pdm_model.hpp"

namespace pdm::cli {

/// A catalog entry: kind name plus its named parameters in canonical order.
struct ParamSet {
  std::string kind;
  std::vector<std::pair<std::string, double>> values;

  double get(const std::string& name) const;
  friend bool operator==(const ParamSet&, const ParamSet&) = default;
};

struct SolverSpec {
  double x0 = 0.0;
  double h = 0.0;
  int n = 0;
  friend bool operator==(const SolverSpec&, const SolverSpec&) = default;
};

struct StateConfig {
  // oscillator base
  int n1 = 0;
  int n2 = 0;
  // separable base: k-th 1D level in each factor
  int k1 = 0;
  int k2 = 0;
  std::optional<SolverSpec> solver1;
  std::optional<SolverSpec> solver2;
  friend bool operator==(const StateConfig&, const StateConfig&) = default;
};

struct GridConfig {
  double origin_y1 = 0.0;
  double origin_y2 = 0.0;
  double h = 0.0;
  int nx = 0;
  int ny = 0;
  std::optional<std::pair<double, double>> annulus;
  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct NumericsConfig {
  std::optional<double> mask_eps;
  std::optional<double> cut_eps;
  bool mask_cuts = true;
  double strip_margin = 1e-2;
  bool periodic_y2 = false;
  /// Added to the energy in eigen-residual checks (negative control).
  double energy_shift = 0.0;
  friend bool operator==(const NumericsConfig&, const NumericsConfig&) = default;
};

struct NormalizationCheckConfig {
  std::string method = "trapezoid";  // trapezoid | richardson
  std::optional<std::pair<double, double>> y1;
  std::optional<std::pair<double, double>> y2;
  std::optional<double> h;
  bool periodic_y2 = false;
  double tail_tolerance = 1e-4;
  friend bool operator==(const NormalizationCheckConfig&, const NormalizationCheckConfig&) =
      default;
};

struct HermiticityCheckConfig {
  /// Vertical boundary lines y1 = const spanning the grid's y2 range.
  std::vector<double> lines_y1;
  /// Circle of this radius around the origin.
  std::optional<double> circle_radius;
  int samples = 400;
  friend bool operator==(const HermiticityCheckConfig&, const HermiticityCheckConfig&) = default;
};

struct ConvergenceCheckConfig {
  std::vector<double> h = {0.04, 0.02, 0.01};
  friend bool operator==(const ConvergenceCheckConfig&, const ConvergenceCheckConfig&) = default;
};

struct ChecksConfig {
  std::vector<std::string> run;
  NormalizationCheckConfig normalization;
  HermiticityCheckConfig hermiticity;
  ConvergenceCheckConfig convergence;
  friend bool operator==(const ChecksConfig&, const ChecksConfig&) = default;
};

struct Tolerances {
  double metric = 1e-12;
  double eigen_residual = 5e-3;
  double normalization = 1e-3;
  double hermiticity = 1e-6;
  double symmetry = 1e-12;
  double convergence_order = 0.2;  // allowed |order - 2|
  double closed_forms = 1e-10;
  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct OutputsConfig {
  std::string dir = "out";
  std::vector<std::string> fields = {"mass", "potential", "state"};
  bool png = true;
  friend bool operator==(const OutputsConfig&, const OutputsConfig&) = default;
};

struct ModelConfig {
  ParamSet family;
  std::string base_kind;  // oscillator | separable
  std::optional<double> omega1;
  std::optional<double> omega2;
  std::optional<ParamSet> v1;
  std::optional<ParamSet> v2;
  StateConfig state;
  std::optional<GridConfig> grid;
  NumericsConfig numerics;
  ChecksConfig checks;
  Tolerances tolerances;
  OutputsConfig outputs;
  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// Every check name accepted in [checks].run.
const std::vector<std::string>& check_catalog();
/// Every field name accepted in [outputs].fields.
const std::vector<std::string>& field_catalog();

/// Strict parse; throws ConfigError with "source:line:col: message".
ModelConfig parse_config(const std::string& text, const std::string& source = "config");
ModelConfig load_config(const std::string& path);
std::string serialize_config(const ModelConfig& cfg);

MapFamily build_family(const ParamSet& p);
OneDimPotential build_potential_1d(const ParamSet& p);
PdmModel build_model(const ModelConfig& cfg);
BaseState build_base_state(const ModelConfig& cfg);
TransformedState build_state(const ModelConfig& cfg);
/// Mask options from [numerics] and the grid annulus.
MaskOptions build_mask_options(const ModelConfig& cfg);
/// Grid from [grid]; throws ConfigError when the section is missing.
Grid2D build_grid(const ModelConfig& cfg, const PdmModel& model);

}  // namespace pdm::cli
