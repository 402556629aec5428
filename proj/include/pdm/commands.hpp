#pragma once
// Subcommands of the pdmtool executable.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pdm/config.hpp"
#include "pdm/verify.hpp"

namespace pdm::cli {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitConfig = 2, kExitNumerical = 3 };

struct Overrides {
  std::optional<double> grid_h;
  std::optional<double> mask_eps;
  std::optional<double> tol_scale;
  std::optional<bool> png;
  std::optional<std::string> out;
};

/// --grid-h keeps the grid box and changes the node count.
void apply_overrides(ModelConfig& cfg, const Overrides& o);

/// Family, domain, mass and effective potential in closed form, base problem
/// and the lowest levels.
std::string model_show(const ModelConfig& cfg);

/// Writes one CSV (and PNG unless disabled) per requested field; returns the paths.
std::vector<std::string> export_fields(const ModelConfig& cfg);

/// Runs [checks].run (all checks when empty).
VerificationReport run_verify(const ModelConfig& cfg);

struct FigureSummary {
  std::string name;
  std::vector<std::string> files;
  std::optional<int> sign_changes;
  bool transect_ok = true;
};

/// preset is a name or "all".
std::vector<FigureSummary> render_figures(const std::string& preset, const std::string& out_dir,
                                          bool png, std::optional<double> grid_h);

/// Parses argv and dispatches; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pdm::cli
