#pragma once
// Figure presets: fixed model configurations and the field each one shows.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdm/config.hpp"
#include "pdm/grid.hpp"

namespace pdm::cli {

enum class FieldKind { Mass, Potential, PotentialPrinted, State };

FieldKind parse_field_kind(const std::string& name);
std::string to_string(FieldKind k);

/// Segment along which a field is expected to change sign a fixed number of times.
struct Transect {
  YPoint from;
  YPoint to;
  int samples;
  int expected_sign_changes;
};

struct FigurePreset {
  std::string name;
  std::string caption;
  ModelConfig config;
  FieldKind field;
  std::optional<Transect> transect;
};

const std::vector<FigurePreset>& figure_presets();
/// Throws ConfigError for unknown names.
const FigurePreset& find_preset(const std::string& name);

/// Field values on the unmasked nodes; masked nodes and nodes that cannot be
/// evaluated hold NaN.
Field2D compute_field(const TransformedState& ts, FieldKind kind,
                      std::shared_ptr<const Grid2D> grid);

}  // namespace pdm::cli
