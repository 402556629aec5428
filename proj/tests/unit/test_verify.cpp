#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pdm/config.hpp"
#include "pdm/errors.hpp"
#include "pdm/verify.hpp"
#include "support.hpp"

using namespace pdm;
using testsupport::Rng;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::numbers::sqrt2;

PdmModel log_model() {
  return PdmModel(MapFamily::log(1.0, 1.0, 0.0), BasePotential::oscillator(1.0, kSqrt2));
}

PdmModel quadratic_model() {
  return PdmModel(MapFamily::quadratic(0.125), BasePotential::oscillator(1.0, kSqrt2));
}

// f = z / 2, so M = 1 and U = V.
PdmModel flat_model() {
  return PdmModel(MapFamily::power(0.0, 2.0, 0.0), BasePotential::oscillator(1.0, 1.0));
}

std::shared_ptr<const Grid2D> box_grid(const PdmModel& m, Box b, double h,
                                       const MaskOptions& mo = {}) {
  return std::make_shared<const Grid2D>(make_grid_box(m, b.y1_lo, b.y1_hi, b.y2_lo, b.y2_hi, h, mo));
}

const Box kLogBox{-3.0, 2.0, -3.0, 3.0};

}  // namespace

TEST_CASE("operator on a constant field reduces to the potential") {
  const PdmModel m = log_model();
  const auto g = box_grid(m, kLogBox, 0.05);
  const PdmOperator op(m, g);
  const Field2D out = op.apply(Field2D(g, 2.5));
  int checked = 0;
  for (int j = 0; j < g->ny(); ++j) {
    for (int i = 0; i < g->nx(); ++i) {
      const std::size_t k = g->index(i, j);
      if (!op.valid()[k]) {
        CHECK(std::isnan(out(i, j)));
        continue;
      }
      CHECK(out(i, j) == doctest::Approx(2.5 * op.potential()[k]).epsilon(1e-13));
      ++checked;
    }
  }
  CHECK(checked == op.valid_count());
  CHECK(checked > 0);
}

TEST_CASE("unit mass operator is the five-point Laplacian") {
  const PdmModel m = flat_model();
  const auto g = box_grid(m, {-2.0, 2.0, -1.0, 1.0}, 0.05);
  const PdmOperator op(m, g);
  const Field2D psi = Field2D::sample(g, [](YPoint y) { return y.y1 * y.y1; });
  const Field2D out = op.apply(psi);
  double worst = 0.0;
  for (int j = 0; j < g->ny(); ++j) {
    for (int i = 0; i < g->nx(); ++i) {
      const std::size_t k = g->index(i, j);
      if (!op.valid()[k]) continue;
      worst = std::max(worst, std::abs(out(i, j) - op.potential()[k] * psi(i, j) + 2.0));
    }
  }
  CHECK(worst < 1e-9);
  CHECK(op.norm_estimate() > 8.0 / (0.05 * 0.05));
}

TEST_CASE("log ground state residual is small and second order") {
  const PdmModel m = log_model();
  const TransformedState ts(m, oscillator_state(1.0, kSqrt2, 0, 0));
  MaskOptions mo;
  mo.eps = default_mask_eps(0.02);
  const ResidualResult coarse = eigen_residual(ts, box_grid(m, kLogBox, 0.02, mo));
  const ResidualResult fine = eigen_residual(ts, box_grid(m, kLogBox, 0.01, mo));
  CHECK(coarse.relative < 5e-3);
  CHECK(coarse.relative / fine.relative == doctest::Approx(4.0).epsilon(0.2));
  CHECK(coarse.state_norm > 0.0);

  ResidualOptions shifted;
  shifted.energy_shift = 0.1;
  CHECK(eigen_residual(ts, box_grid(m, kLogBox, 0.02, mo), shifted).relative > 0.05);

  // The correction without its mass factor leaves a visible residual.
  ResidualOptions printed;
  printed.form = PotentialForm::Printed;
  CHECK(eigen_residual(ts, box_grid(m, kLogBox, 0.02, mo), printed).relative > 10 * coarse.relative);
}

TEST_CASE("quadratic state residual on an annulus") {
  const PdmModel m = quadratic_model();
  const TransformedState ts(m, oscillator_state(1.0, kSqrt2, 0, 1));
  MaskOptions mo;
  mo.annulus = Annulus{0.3, 6.0};
  const auto g = std::make_shared<const Grid2D>(make_grid(m, {-6.0, -6.0}, 0.02, 601, 601, mo));
  const ResidualResult r = eigen_residual(ts, g);
  CHECK(r.relative < 1e-2);
  CHECK(r.cells > 100000);
}

TEST_CASE("metric identity holds with analytic derivatives") {
  const XGrid lattice{{0.5, 0.2}, 0.05, 21, 21};
  for (const MapFamily& f : testsupport::reference_families()) {
    CAPTURE(f.describe());
    CHECK(metric_residual(f, lattice) < 1e-12);
  }
  Rng rng(8);
  for (int kind = 0; kind < testsupport::kFamilyKinds; ++kind) {
    const MapFamily f = testsupport::random_family(rng, kind);
    for (int k = 0; k < 200; ++k) {
      CHECK(metric_residual_at(f, testsupport::random_sheet_point(f, rng)) < 1e-12);
    }
  }
}

TEST_CASE("finite-difference metric defect shrinks fourfold per halving") {
  for (const MapFamily& f : testsupport::reference_families()) {
    CAPTURE(f.describe());
    const double r1 = metric_residual(f, XGrid{{0.5, 0.2}, 0.02, 51, 51}, Derivatives::FiniteDifference);
    const double r2 = metric_residual(f, XGrid{{0.5, 0.2}, 0.01, 101, 101}, Derivatives::FiniteDifference);
    if (f.get<QuadraticMap>()) {
      // Central differences are exact on a quadratic map.
      CHECK(r1 < 1e-12);
      CHECK(r2 < 1e-12);
    } else {
      CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.2));
    }
  }
}

TEST_CASE("normalization over one period of the log strip") {
  const PdmModel m = log_model();
  const TransformedState ts(m, oscillator_state(1.0, kSqrt2, 1, 0));
  MaskOptions mo;
  mo.periodic_y2 = true;
  const int ny = 1000;
  const double h = 4.0 * kPi / ny;
  const int nx = static_cast<int>(std::lround(18.0 / h)) + 1;
  const auto g = std::make_shared<const Grid2D>(make_grid(m, {-14.0, -2.0 * kPi}, h, nx, ny, mo));
  REQUIRE(g->periodic_y2());
  const NormalizationResult r = normalization_check(ts, g);
  CHECK(std::abs(r.integral - 1.0) < 1e-3);
  CHECK(r.edge_tail < 1e-4);

  NormalizationOptions scaled;
  scaled.scale = 3.0;
  scaled.tail_tolerance = 1e-3;
  CHECK(normalization_check(ts, g, scaled).integral == doctest::Approx(9.0 * r.integral).epsilon(1e-12));

  // A box that cuts through the state is reported, not integrated.
  CHECK_THROWS_AS(normalization_check(ts, box_grid(m, kLogBox, 0.05)), ExtentError);
}

TEST_CASE("normalization of the quadratic state by extrapolation") {
  const TransformedState ts(quadratic_model(), oscillator_state(1.0, kSqrt2, 0, 0));
  const RichardsonResult r = normalization_richardson(ts, {-6.0, 6.0, -6.0, 6.0}, 0.02);
  CHECK(std::abs(r.extrapolated - 1.0) < 1e-3);
  CHECK(std::abs(r.extrapolated - 1.0) < std::abs(r.coarse - 1.0));
}

TEST_CASE("boundary flux of the log states decays") {
  const TransformedState ts(log_model(), oscillator_state(1.0, kSqrt2, 0, 0));
  std::vector<YPoint> boundary = line_samples({-40.0, -2.0 * kPi}, {-40.0, 2.0 * kPi}, 400);
  const auto right = line_samples({6.0, -2.0 * kPi}, {6.0, 2.0 * kPi}, 400);
  boundary.insert(boundary.end(), right.begin(), right.end());
  const auto interior = lattice_samples({-2.0, 2.0, -3.0, 3.0}, 48);
  const HermiticityResult r = hermiticity_decay(ts, boundary, interior);
  CHECK(r.ratio < 1e-6);
  CHECK(r.boundary_used > 0);
  CHECK(r.interior_used == 48 * 48);

  // The image of the x1 = 0 half-line is a node line of the first excited state.
  const TransformedState odd(log_model(), oscillator_state(1.0, kSqrt2, 1, 0));
  const HermiticityResult z =
      hermiticity_decay(odd, line_samples({-3.0, kPi}, {3.0, kPi}, 100), interior);
  CHECK(z.boundary_max < 1e-30);
  CHECK(z.interior_max > 0.0);
}

TEST_CASE("sample generators") {
  const auto line = line_samples({0.0, 0.0}, {1.0, 2.0}, 5);
  REQUIRE(line.size() == 5);
  CHECK(line.back().y1 == doctest::Approx(1.0));
  CHECK(line[2].y2 == doctest::Approx(1.0));
  const auto circle = circle_samples(10.0, 64);
  REQUIRE(circle.size() == 64);
  for (const YPoint& p : circle) CHECK(std::hypot(p.y1, p.y2) == doctest::Approx(10.0));
  CHECK(lattice_samples({0.0, 1.0, 0.0, 1.0}, 7).size() == 49);
  CHECK_THROWS_AS(line_samples({0.0, 0.0}, {1.0, 0.0}, 1), ConfigError);
}

TEST_CASE("conservative discretization is symmetric") {
  const PdmModel m = log_model();
  const auto g = box_grid(m, kLogBox, 0.05);
  CHECK(symmetry_check(m, g) < 1e-12);
  CHECK(symmetry_check(m, g, StencilKind::NodeValued) > 1e-3);
  const PdmModel flat = flat_model();
  CHECK(symmetry_check(flat, box_grid(flat, {-1.0, 1.0, -1.0, 1.0}, 0.05)) < 1e-14);

  const PdmModel q = quadratic_model();
  CHECK(symmetry_check(q, box_grid(q, {-3.0, 3.0, -3.0, 3.0}, 0.05), StencilKind::Conservative, 7) <
        1e-12);
}

TEST_CASE("assembled stencil reproduces the operator") {
  const PdmModel m = log_model();
  const auto g = box_grid(m, kLogBox, 0.1);
  const PdmOperator op(m, g);
  const Stencil5 st = op.assemble(StencilKind::Conservative);
  Rng rng(3);
  Field2D psi(g);
  for (double& v : psi.values()) v = rng.uniform(-1.0, 1.0);
  const Field2D out = op.apply(psi);
  for (int j = 1; j + 1 < g->ny(); ++j) {
    for (int i = 1; i + 1 < g->nx(); ++i) {
      const std::size_t k = g->index(i, j);
      if (!op.valid()[k]) continue;
      const double ref = st.c[k] * psi(i, j) + st.e[k] * psi(i + 1, j) + st.w[k] * psi(i - 1, j) +
                         st.n[k] * psi(i, j + 1) + st.s[k] * psi(i, j - 1);
      CHECK(out(i, j) == doctest::Approx(ref).epsilon(1e-12));
    }
  }
}

TEST_CASE("convergence study validates its input") {
  const auto f = [](double h) { return h * h; };
  CHECK_THROWS_AS(convergence_study({0.1, 0.05}, f), ConfigError);
  CHECK_THROWS_AS(convergence_study({0.1, 0.1, 0.05}, f), ConfigError);
  CHECK_THROWS_AS(convergence_study({0.1, 0.05, -0.01}, f), ConfigError);
}

TEST_CASE("convergence study recovers exact power laws") {
  const std::vector<double> hs{0.04, 0.02, 0.01, 0.005};
  for (double p : {1.0, 2.0, 4.0}) {
    const ConvergenceResult r = convergence_study(hs, [p](double h) { return 3.0 * std::pow(h, p); });
    CHECK(r.rows.size() == 4);
    CHECK_FALSE(r.rows[0].order.has_value());
    CHECK(r.min_order() == doctest::Approx(p).epsilon(1e-12));
    CHECK(r.max_order() == doctest::Approx(p).epsilon(1e-12));
    CHECK(r.warnings.empty());
  }
  const ConvergenceResult flat = convergence_study(hs, [](double) { return 1.0; });
  CHECK(flat.warnings.size() == 3);
}

TEST_CASE("verification report round-trips through JSON") {
  VerificationReport rep("log(alpha=1, gamma=1, delta=0)", "grid 10x10");
  CHECK(rep.add("a", 1e-3, 1e-2).pass);
  CHECK_FALSE(rep.add("b", 0.5, 1e-2, "too large").pass);
  CHECK_FALSE(rep.add("c", std::nan(""), 1.0).pass);
  CHECK(rep.note("d", 4.0, "informational").pass);
  CHECK_FALSE(rep.all_passed());

  const VerificationReport back = VerificationReport::from_json(rep.to_json());
  CHECK(back.model() == rep.model());
  CHECK(back.grid() == rep.grid());
  REQUIRE(back.entries().size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    const CheckEntry& a = rep.entries()[k];
    const CheckEntry& b = back.entries()[k];
    CHECK(a.check_name == b.check_name);
    CHECK(a.pass == b.pass);
    CHECK(a.notes == b.notes);
    if (std::isnan(a.measured)) {
      CHECK(std::isnan(b.measured));
    } else {
      CHECK(a.measured == b.measured);
    }
  }

  VerificationReport ok("m", "g");
  ok.add("x", 0.0, 0.0);
  CHECK(ok.all_passed());
}

TEST_CASE("grid masking") {
  const PdmModel q = quadratic_model();
  const Grid2D g = make_grid(q, {-1.0, -1.0}, 0.05, 41, 41);
  // Origin is excluded; the sheet cut along y1 > 0 (a > 0) is banded out.
  CHECK(g.masked(20, 20));
  CHECK(g.masked(35, 20));
  CHECK_FALSE(g.masked(5, 20));
  MaskOptions keep;
  keep.mask_cuts = false;
  CHECK_FALSE(make_grid(q, {-1.0, -1.0}, 0.05, 41, 41, keep).masked(35, 20));
  CHECK_THROWS_AS(make_grid(q, {-0.1, -0.1}, 0.025, 9, 9), ConfigError);

  MaskOptions periodic;
  periodic.periodic_y2 = true;
  const PdmModel lg = log_model();
  CHECK(make_grid(lg, {-1.0, -2.0 * kPi}, 4.0 * kPi / 100, 20, 100, periodic).periodic_y2());
  CHECK_FALSE(make_grid(lg, {-1.0, -2.0 * kPi}, 0.1, 20, 100, periodic).periodic_y2());
}

TEST_CASE("logistic separable state converges at second order") {
  const cli::ModelConfig cfg = cli::load_config(PDM_SOURCE_DIR "/configs/ex4_logistic.toml");
  const PdmModel m = cli::build_model(cfg);
  const TransformedState ts = cli::build_state(cfg);
  MaskOptions mo = cli::build_mask_options(cfg);
  mo.eps = default_mask_eps(0.04);
  mo.cut_eps = default_cut_eps(0.04);
  const ConvergenceResult c = convergence_study({0.04, 0.02, 0.01}, [&](double h) {
    return eigen_residual(ts, box_grid(m, {-2.0, 4.0, -4.0, 0.0}, h, mo)).relative;
  });
  for (const auto& row : c.rows) {
    if (!row.order) continue;
    CHECK(*row.order >= 1.5);
    CHECK(*row.order <= 2.2);
  }
  CHECK(c.rows[1].residual < 2e-2);
}
