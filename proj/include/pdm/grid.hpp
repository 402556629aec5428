#pragma once
// Uniform lattices in the y-plane and scalar fields sampled on them.
// Layout is row-major: index = j * nx + i, i along y1, j along y2.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdm/maps.hpp"

namespace pdm {

struct PdmModel;

class Grid2D {
 public:
  /// Throws ConfigError unless h > 0 and nx, ny >= 8.
  Grid2D(YPoint origin, double h, int nx, int ny);

  YPoint origin() const noexcept { return origin_; }
  double h() const noexcept { return h_; }
  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  std::size_t size() const noexcept { return mask_.size(); }
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j) * nx_ + i;
  }
  YPoint at(int i, int j) const noexcept { return {origin_.y1 + h_ * i, origin_.y2 + h_ * j}; }

  /// Rows wrap around: row ny-1 neighbors row 0.
  bool periodic_y2() const noexcept { return periodic_y2_; }
  void set_periodic_y2(bool on) noexcept { periodic_y2_ = on; }

  bool masked(int i, int j) const noexcept { return mask_[index(i, j)] != 0; }
  void set_masked(int i, int j, bool m) noexcept { mask_[index(i, j)] = m ? 1 : 0; }
  const std::vector<std::uint8_t>& mask() const noexcept { return mask_; }

  /// Unmasked, off the boundary, and all four neighbors unmasked.
  bool valid(int i, int j) const noexcept;
  int count_valid() const noexcept;
  int count_masked() const noexcept;

  std::string describe() const;

 private:
  YPoint origin_;
  double h_;
  int nx_;
  int ny_;
  bool periodic_y2_ = false;
  std::vector<std::uint8_t> mask_;
};

struct Annulus {
  double r_min;
  double r_max;
};

struct MaskOptions {
  /// Radius around excluded points; default max(3h, 1e-3).
  std::optional<double> eps;
  /// Half-width of the band masked around sheet cuts; default max(0.1, h).
  std::optional<double> cut_eps;
  bool mask_cuts = true;
  std::optional<Annulus> annulus;
  /// Margin delta kept away from the walls of a Rosen-Morse factor.
  double strip_margin = 1e-2;
  /// Extra predicate; true masks the node.
  std::function<bool(YPoint)> extra;
  /// Request periodic rows; honored when the domain is periodic in y2 and
  /// ny * h equals the period.
  bool periodic_y2 = false;
};

double default_mask_eps(double h);
double default_cut_eps(double h);

/// Grid with the model's singular set, cuts and invalid pull-backs masked.
/// Throws ConfigError when fewer than 16 valid cells remain.
Grid2D make_grid(const PdmModel& model, YPoint origin, double h, int nx, int ny,
                 const MaskOptions& opts = {});

/// Grid covering [y1_lo, y1_hi] x [y2_lo, y2_hi] with spacing h (rounded to
/// whole cells; the upper edges are included).
Grid2D make_grid_box(const PdmModel& model, double y1_lo, double y1_hi, double y2_lo,
                     double y2_hi, double h, const MaskOptions& opts = {});

class Field2D {
 public:
  Field2D(std::shared_ptr<const Grid2D> grid, std::vector<double> values);
  explicit Field2D(std::shared_ptr<const Grid2D> grid, double fill = 0.0);

  const Grid2D& grid() const noexcept { return *grid_; }
  std::shared_ptr<const Grid2D> grid_ptr() const noexcept { return grid_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double>& values() noexcept { return values_; }
  double operator()(int i, int j) const noexcept { return values_[grid_->index(i, j)]; }
  double& operator()(int i, int j) noexcept { return values_[grid_->index(i, j)]; }

  /// Sample fn at every unmasked node; masked nodes and nodes where fn throws
  /// a library error are set to `fallback`.
  static Field2D sample(std::shared_ptr<const Grid2D> grid,
                        const std::function<double(YPoint)>& fn, double fallback = 0.0);

 private:
  std::shared_ptr<const Grid2D> grid_;
  std::vector<double> values_;
};

/// Header "y1,y2,value", one row per node (row-major), %.17g, masked nodes as nan.
std::string field_to_csv(const Field2D& field);
/// Writes atomically (temporary file, then rename).
void write_csv(const Field2D& field, const std::string& path);
/// Reads a CSV written by write_csv back onto a known grid.
Field2D read_csv(const std::string& path, std::shared_ptr<const Grid2D> grid);

/// Bilinear samples of the field at n evenly spaced points from a to b
/// (inclusive); NaN where a stencil node is masked, non-finite or off the grid.
std::vector<double> transect(const Field2D& field, YPoint a, YPoint b, int n);

/// Sign changes along a sequence, skipping NaN entries and |v| <= floor.
int count_sign_changes(const std::vector<double>& values, double floor = 0.0);

/// Write text to path via a temporary sibling and rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace pdm
