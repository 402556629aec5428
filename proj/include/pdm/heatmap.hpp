#pragma once
// PNG heatmaps of grid fields with a JSON sidecar describing the color scale.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pdm/grid.hpp"

namespace pdm::cli {

struct HeatmapOptions {
  std::string title;
  /// Color limits; default to the finite range of the unmasked values.
  std::optional<double> vmin;
  std::optional<double> vmax;
  /// Center the scale on zero (diverging palette), used for wavefunctions.
  bool symmetric = false;
};

struct HeatmapMeta {
  std::string title;
  double vmin = 0.0;
  double vmax = 0.0;
  bool symmetric = false;
  YPoint lower;  // y-plane coordinates of the bottom-left pixel
  YPoint upper;  // top-right pixel
  int width = 0;
  int height = 0;
  int masked = 0;

  std::string to_json() const;
};

/// RGB bytes, top row first (largest y2), masked and non-finite cells gray.
std::vector<std::uint8_t> render_heatmap(const Field2D& field, const HeatmapOptions& opts,
                                         HeatmapMeta& meta);

/// Encodes an RGB image as PNG.
std::string encode_png(const std::vector<std::uint8_t>& rgb, int width, int height);

/// Writes path (PNG) and the sidecar path + ".json", both atomically.
HeatmapMeta write_heatmap(const Field2D& field, const std::string& path,
                          const HeatmapOptions& opts = {});

/// Pixel color for a normalized value t in [0, 1].
std::array<std::uint8_t, 3> palette_color(double t, bool diverging);
inline constexpr std::array<std::uint8_t, 3> kMaskColor = {128, 128, 128};

}  // namespace pdm::cli
