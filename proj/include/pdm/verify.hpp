#pragma once
// Grid-based verification of the PDM construction: the flux-form Hamiltonian,
// eigen-residuals, metric identity, normalization, boundary decay, discrete
// symmetry, and convergence studies.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdm/grid.hpp"
#include "pdm/pdm_model.hpp"

namespace pdm {

enum class PotentialForm { Exact, Printed };

/// Conservative: 1/M at face midpoints. NodeValued: each face takes 1/M from
/// the neighbor node it points to; not symmetric, kept as a negative control.
enum class StencilKind { Conservative, NodeValued };

/// Five-point coefficients of one cell row-major over the grid; zero rows
/// outside the valid cells.
struct Stencil5 {
  std::vector<double> c, e, w, n, s;
};

/// Discretized -d_i (1/M) d_i + U on a masked grid, with 1/M sampled at face
/// midpoints. Only valid cells (see Grid2D::valid) carry output.
class PdmOperator {
 public:
  PdmOperator(const PdmModel& model, std::shared_ptr<const Grid2D> grid,
              PotentialForm form = PotentialForm::Exact);

  const Grid2D& grid() const noexcept { return *grid_; }
  std::shared_ptr<const Grid2D> grid_ptr() const noexcept { return grid_; }
  const std::vector<std::uint8_t>& valid() const noexcept { return valid_; }
  int valid_count() const noexcept { return valid_count_; }
  const std::vector<double>& potential() const noexcept { return u_; }

  /// H psi on valid cells, NaN elsewhere.
  Field2D apply(const Field2D& psi) const;
  /// H psi on valid cells, 0 elsewhere; in/out have grid().size() entries.
  void apply_raw(const double* in, double* out) const;
  /// Gershgorin bound on the operator norm restricted to valid cells.
  double norm_estimate() const;
  /// Explicit coefficients of the chosen discretization restricted to valid cells.
  Stencil5 assemble(StencilKind kind) const;

 private:
  std::shared_ptr<const Grid2D> grid_;
  std::vector<double> kx_;       // ny rows of nx-1 faces
  std::vector<double> ky_;       // ny rows of nx faces, face above each node
  std::vector<double> k_node_;   // 1/M at nodes
  std::vector<double> u_;
  std::vector<std::uint8_t> valid_;
  int valid_count_ = 0;
};

Field2D apply_pdm_hamiltonian(const PdmModel& model, const Field2D& psi,
                              PotentialForm form = PotentialForm::Exact);

/// Transformed state sampled on the unmasked nodes (0 on masked nodes).
Field2D sample_state(const TransformedState& ts, std::shared_ptr<const Grid2D> grid,
                     double scale = 1.0);

struct ResidualOptions {
  /// Added to the energy; a nonzero value is a negative control.
  double energy_shift = 0.0;
  PotentialForm form = PotentialForm::Exact;
};

struct ResidualResult {
  double relative;   // ||H psi - E psi|| / ||psi|| over valid cells
  double max_abs;    // max |H psi - E psi| over valid cells
  double state_norm; // discrete L2 norm of psi over valid cells
  int cells;
};

ResidualResult eigen_residual(const TransformedState& ts, std::shared_ptr<const Grid2D> grid,
                              const ResidualOptions& opts = {});

/// Uniform lattice in the x-plane.
struct XGrid {
  XPoint origin;
  double h;
  int nx;
  int ny;
  XPoint at(int i, int j) const noexcept { return {origin.x1 + h * i, origin.x2 + h * j}; }
};

enum class Derivatives { Analytic, FiniteDifference };

/// max |M (d_i y_k)(d_i y_n) - delta_kn| at one point with analytic derivatives.
double metric_residual_at(const MapFamily& family, XPoint x);
/// Maximum of the metric defect over the lattice nodes. Finite differences use
/// central differences of y(x) with step grid.h. Nodes where the map or a
/// stencil neighbor is undefined are skipped.
double metric_residual(const MapFamily& family, const XGrid& grid,
                       Derivatives mode = Derivatives::Analytic);

struct HolomorphyResidual {
  double cauchy_riemann;  // max |D1 y1 + D2 y2| + |D2 y1 - D1 y2|
  double harmonic;        // max |Lap_h y1| + |Lap_h y2|
  int points;
};

/// Central-difference Cauchy-Riemann and 5-point harmonicity defects of y(x).
HolomorphyResidual holomorphy_residual(const MapFamily& family, const XGrid& grid);

struct NormalizationOptions {
  /// Allowed line integral of |psi~|^2 along non-periodic grid edges.
  double tail_tolerance = 1e-4;
  /// Multiplies the state before squaring.
  double scale = 1.0;
};

struct NormalizationResult {
  double integral;
  double edge_tail;
};

/// Trapezoid integral of |psi~|^2 over the unmasked nodes. Throws ExtentError
/// when the edge tail exceeds the tolerance.
NormalizationResult normalization_check(const TransformedState& ts,
                                        std::shared_ptr<const Grid2D> grid,
                                        const NormalizationOptions& opts = {});

struct Box {
  double y1_lo, y1_hi, y2_lo, y2_hi;
};

struct RichardsonResult {
  double coarse;
  double fine;
  double extrapolated;  // 2 I(h/2) - I(h)
};

/// Normalization with only the excluded nodes themselves removed (mask radius
/// h/2, cuts kept), extrapolated over h and h/2. The punctured trapezoid rule
/// has a first-order error around an integrable singularity.
RichardsonResult normalization_richardson(const TransformedState& ts, const Box& box,
                                          double h_coarse, const NormalizationOptions& opts = {});

struct HermiticityResult {
  double boundary_max;  // max |psi~|^2 / sqrt(M) over boundary samples
  double interior_max;  // same over interior samples
  double ratio;
  int boundary_used;
  int interior_used;
};

/// Samples that cannot be evaluated (excluded points, outside the image) are
/// skipped.
HermiticityResult hermiticity_decay(const TransformedState& ts,
                                    const std::vector<YPoint>& boundary,
                                    const std::vector<YPoint>& interior);

std::vector<YPoint> line_samples(YPoint a, YPoint b, int n);
std::vector<YPoint> circle_samples(double radius, int n);
std::vector<YPoint> lattice_samples(const Box& box, int n_per_axis);

/// |<phi, H psi> - <H phi, psi>| / (||phi|| ||psi|| ||H||) for fields
/// supported on the valid cells. The fields start random; psi is then refined
/// by power iteration on the antisymmetric part K = H - H^T and phi = K psi,
/// which drives the ratio toward ||K|| / ||H||.
double symmetry_check(const PdmModel& model, std::shared_ptr<const Grid2D> grid,
                      StencilKind kind = StencilKind::Conservative, std::uint64_t seed = 1);

struct ConvergenceRow {
  double h;
  double residual;
  std::optional<double> order;  // log(r_prev / r) / log(h_prev / h)
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
  std::vector<std::string> warnings;
  double min_order() const;
  double max_order() const;
};

/// h_list strictly decreasing with at least three entries.
ConvergenceResult convergence_study(const std::vector<double>& h_list,
                                    const std::function<double(double)>& residual_at);

struct CheckEntry {
  std::string check_name;
  double measured;
  double tolerance;
  bool pass;
  std::string notes;
};

class VerificationReport {
 public:
  VerificationReport(std::string model, std::string grid)
      : model_(std::move(model)), grid_(std::move(grid)) {}

  /// pass is measured <= tolerance (NaN fails).
  const CheckEntry& add(std::string check_name, double measured, double tolerance,
                        std::string notes = {});
  /// Informational entry: recorded, always passes.
  const CheckEntry& note(std::string check_name, double measured, std::string notes);

  const std::vector<CheckEntry>& entries() const noexcept { return entries_; }
  const std::string& model() const noexcept { return model_; }
  const std::string& grid() const noexcept { return grid_; }
  bool all_passed() const noexcept;

  std::string to_json() const;
  static VerificationReport from_json(const std::string& text);

 private:
  std::string model_;
  std::string grid_;
  std::vector<CheckEntry> entries_;
};

}  // namespace pdm
