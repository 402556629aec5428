#include "pdm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <json.hpp>

#include "pdm/errors.hpp"
#include "pdm/kernels.hpp"

namespace pdm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

struct NodeTerms {
  double k;  // 1/M
  double u;
};

// 1/M and U at a point; NaN when the model is undefined there.
NodeTerms node_terms(const PdmModel& model, YPoint y, PotentialForm form) {
  try {
    const PullBack pb = pull_back(model.family, y);
    const double fp2 = std::norm(pb.jet.fp);
    const double fpp2 = std::norm(pb.jet.fpp);
    const double v = potential_eval(model.base, pb.x);
    const double shift = form == PotentialForm::Exact ? fpp2 / fp2 : fpp2 / (4.0 * fp2 * fp2);
    return {4.0 * fp2, v - shift};
  } catch (const Error&) {
    return {kNaN, kNaN};
  }
}

double face_k(const PdmModel& model, YPoint y) {
  try {
    return 4.0 * std::norm(pull_back(model.family, y).jet.fp);
  } catch (const Error&) {
    return kNaN;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// operator

PdmOperator::PdmOperator(const PdmModel& model, std::shared_ptr<const Grid2D> grid,
                         PotentialForm form)
    : grid_(std::move(grid)) {
  if (!grid_) throw ConfigError("operator needs a grid");
  const Grid2D& g = *grid_;
  const int nx = g.nx(), ny = g.ny();
  const double h = g.h();
  const bool periodic = g.periodic_y2();
  kx_.assign(static_cast<std::size_t>(ny) * (nx - 1), kNaN);
  ky_.assign(g.size(), kNaN);
  k_node_.assign(g.size(), kNaN);
  u_.assign(g.size(), kNaN);
  valid_.assign(g.size(), 0);

  for (int j = 0; j < ny; ++j) {
    const int jn = j + 1 < ny ? j + 1 : (periodic ? 0 : -1);
    for (int i = 0; i < nx; ++i) {
      if (g.masked(i, j)) continue;
      const YPoint y = g.at(i, j);
      const NodeTerms t = node_terms(model, y, form);
      k_node_[g.index(i, j)] = t.k;
      u_[g.index(i, j)] = t.u;
      if (i + 1 < nx && !g.masked(i + 1, j))
        kx_[static_cast<std::size_t>(j) * (nx - 1) + i] = face_k(model, {y.y1 + 0.5 * h, y.y2});
      if (jn >= 0 && !g.masked(i, jn))
        ky_[g.index(i, j)] = face_k(model, {y.y1, y.y2 + 0.5 * h});
    }
  }

  for (int j = 0; j < ny; ++j) {
    const int js = j > 0 ? j - 1 : ny - 1;
    for (int i = 0; i < nx; ++i) {
      if (!g.valid(i, j)) continue;
      const std::size_t c = g.index(i, j);
      const double faces[4] = {kx_[static_cast<std::size_t>(j) * (nx - 1) + i],
                               kx_[static_cast<std::size_t>(j) * (nx - 1) + i - 1], ky_[c],
                               ky_[g.index(i, js)]};
      bool ok = std::isfinite(u_[c]);
      for (double f : faces) ok = ok && std::isfinite(f) && f > 0.0;
      if (!ok) {
        const YPoint y = g.at(i, j);
        throw SingularityError("model is singular inside the unmasked region", {y.y1, y.y2});
      }
      valid_[c] = 1;
      ++valid_count_;
    }
  }
  if (valid_count_ < 16) throw ConfigError("grid has fewer than 16 valid interior cells");
}

void PdmOperator::apply_raw(const double* in, double* out) const {
  const Grid2D& g = *grid_;
  const int nx = g.nx(), ny = g.ny();
  const bool periodic = g.periodic_y2();
  const double inv_h2 = 1.0 / (g.h() * g.h());
  std::fill(out, out + g.size(), 0.0);
  const int j0 = periodic ? 0 : 1;
  const int j1 = periodic ? ny : ny - 1;
  for (int j = j0; j < j1; ++j) {
    const int js = j > 0 ? j - 1 : ny - 1;
    const int jn = j + 1 < ny ? j + 1 : 0;
    kernels::StencilRow row{in + g.index(0, js),
                            in + g.index(0, j),
                            in + g.index(0, jn),
                            kx_.data() + static_cast<std::size_t>(j) * (nx - 1),
                            ky_.data() + g.index(0, js),
                            ky_.data() + g.index(0, j),
                            u_.data() + g.index(0, j),
                            out + g.index(0, j),
                            nx,
                            inv_h2};
    kernels::flux_stencil_row(row);
    for (int i = 0; i < nx; ++i)
      if (!valid_[g.index(i, j)]) out[g.index(i, j)] = 0.0;
  }
}

Field2D PdmOperator::apply(const Field2D& psi) const {
  if (psi.grid_ptr() != grid_ && psi.values().size() != grid_->size())
    throw ConfigError("field does not live on the operator's grid");
  Field2D out(grid_, 0.0);
  apply_raw(psi.values().data(), out.values().data());
  for (std::size_t k = 0; k < grid_->size(); ++k)
    if (!valid_[k]) out.values()[k] = kNaN;
  return out;
}

double PdmOperator::norm_estimate() const {
  const Grid2D& g = *grid_;
  const int nx = g.nx(), ny = g.ny();
  const double inv_h2 = 1.0 / (g.h() * g.h());
  double best = 0.0;
  for (int j = 0; j < ny; ++j) {
    const int js = j > 0 ? j - 1 : ny - 1;
    for (int i = 0; i < nx; ++i) {
      const std::size_t c = g.index(i, j);
      if (!valid_[c]) continue;
      const double faces = kx_[static_cast<std::size_t>(j) * (nx - 1) + i] +
                           kx_[static_cast<std::size_t>(j) * (nx - 1) + i - 1] + ky_[c] +
                           ky_[g.index(i, js)];
      best = std::max(best, std::abs(u_[c]) + 2.0 * inv_h2 * faces);
    }
  }
  return best;
}

Stencil5 PdmOperator::assemble(StencilKind kind) const {
  const Grid2D& g = *grid_;
  const int nx = g.nx(), ny = g.ny();
  const double inv_h2 = 1.0 / (g.h() * g.h());
  const std::size_t size = g.size();
  Stencil5 st{std::vector<double>(size, 0.0), std::vector<double>(size, 0.0),
              std::vector<double>(size, 0.0), std::vector<double>(size, 0.0),
              std::vector<double>(size, 0.0)};
  for (int j = 0; j < ny; ++j) {
    const int js = j > 0 ? j - 1 : ny - 1;
    const int jn = j + 1 < ny ? j + 1 : 0;
    for (int i = 0; i < nx; ++i) {
      const std::size_t c = g.index(i, j);
      if (!valid_[c]) continue;
      double ke, kw, kn, ks;
      if (kind == StencilKind::Conservative) {
        ke = kx_[static_cast<std::size_t>(j) * (nx - 1) + i];
        kw = kx_[static_cast<std::size_t>(j) * (nx - 1) + i - 1];
        kn = ky_[c];
        ks = ky_[g.index(i, js)];
      } else {
        ke = k_node_[g.index(i + 1, j)];
        kw = k_node_[g.index(i - 1, j)];
        kn = k_node_[g.index(i, jn)];
        ks = k_node_[g.index(i, js)];
      }
      st.e[c] = -inv_h2 * ke;
      st.w[c] = -inv_h2 * kw;
      st.n[c] = -inv_h2 * kn;
      st.s[c] = -inv_h2 * ks;
      st.c[c] = u_[c] + inv_h2 * (ke + kw + kn + ks);
    }
  }
  return st;
}

namespace {

// y = P A P x or its transpose, P the projection onto valid cells.
void stencil_apply(const Grid2D& g, const Stencil5& st, const std::vector<std::uint8_t>& valid,
                   const std::vector<double>& x, std::vector<double>& y, bool transpose) {
  const int nx = g.nx(), ny = g.ny();
  std::fill(y.begin(), y.end(), 0.0);
  for (int j = 0; j < ny; ++j) {
    const int js = j > 0 ? j - 1 : ny - 1;
    const int jn = j + 1 < ny ? j + 1 : 0;
    for (int i = 0; i < nx; ++i) {
      const std::size_t c = g.index(i, j);
      if (!valid[c]) continue;
      const std::size_t nb[4] = {g.index(i + 1, j), g.index(i - 1, j), g.index(i, jn),
                                 g.index(i, js)};
      const double cf[4] = {st.e[c], st.w[c], st.n[c], st.s[c]};
      if (!transpose) {
        double acc = st.c[c] * x[c];
        for (int k = 0; k < 4; ++k)
          if (valid[nb[k]]) acc += cf[k] * x[nb[k]];
        y[c] = acc;
      } else {
        y[c] += st.c[c] * x[c];
        for (int k = 0; k < 4; ++k)
          if (valid[nb[k]]) y[nb[k]] += cf[k] * x[c];
      }
    }
  }
}

}  // namespace

Field2D apply_pdm_hamiltonian(const PdmModel& model, const Field2D& psi, PotentialForm form) {
  const PdmOperator op(model, psi.grid_ptr(), form);
  return op.apply(psi);
}

Field2D sample_state(const TransformedState& ts, std::shared_ptr<const Grid2D> grid,
                     double scale) {
  return Field2D::sample(
      std::move(grid), [&](YPoint y) { return scale * transformed_state_eval(ts, y); }, 0.0);
}

ResidualResult eigen_residual(const TransformedState& ts, std::shared_ptr<const Grid2D> grid,
                              const ResidualOptions& opts) {
  const PdmOperator op(ts.model, grid, opts.form);
  const Field2D psi = sample_state(ts, grid);
  std::vector<double> hpsi(grid->size());
  op.apply_raw(psi.values().data(), hpsi.data());
  const double e = ts.energy + opts.energy_shift;
  std::vector<double> r(grid->size(), 0.0), w(grid->size(), 0.0);
  double max_abs = 0.0;
  for (std::size_t k = 0; k < grid->size(); ++k) {
    if (!op.valid()[k]) continue;
    w[k] = 1.0;
    r[k] = hpsi[k] - e * psi.values()[k];
    max_abs = std::max(max_abs, std::abs(r[k]));
  }
  const double rr = kernels::weighted_dot(r.data(), r.data(), w.data(), r.size());
  const double pp =
      kernels::weighted_dot(psi.values().data(), psi.values().data(), w.data(), r.size());
  const double h = grid->h();
  return {std::sqrt(rr / pp), max_abs, std::sqrt(pp) * h, op.valid_count()};
}

// ---------------------------------------------------------------------------
// metric and holomorphy

double metric_residual_at(const MapFamily& family, XPoint x) {
  const MapJet jet = f_derivs(family, to_complex(x));
  const double mass = 1.0 / (4.0 * std::norm(jet.fp));
  const Jacobian jac = jacobian_from_derivative(jet.fp);
  const double g11 = jac.d1y1 * jac.d1y1 + jac.d2y1 * jac.d2y1;
  const double g22 = jac.d1y2 * jac.d1y2 + jac.d2y2 * jac.d2y2;
  const double g12 = jac.d1y1 * jac.d1y2 + jac.d2y1 * jac.d2y2;
  return std::max({std::abs(mass * g11 - 1.0), std::abs(mass * g22 - 1.0),
                   std::abs(mass * g12)});
}

double metric_residual(const MapFamily& family, const XGrid& grid, Derivatives mode) {
  double worst = 0.0;
  const double h = grid.h;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const XPoint x = grid.at(i, j);
      try {
        if (mode == Derivatives::Analytic) {
          worst = std::max(worst, metric_residual_at(family, x));
          continue;
        }
        const MapJet jet = f_derivs(family, to_complex(x));
        const double mass = 1.0 / (4.0 * std::norm(jet.fp));
        const YPoint e = y_of_x(family, {x.x1 + h, x.x2});
        const YPoint w = y_of_x(family, {x.x1 - h, x.x2});
        const YPoint n = y_of_x(family, {x.x1, x.x2 + h});
        const YPoint s = y_of_x(family, {x.x1, x.x2 - h});
        const double d1y1 = (e.y1 - w.y1) / (2 * h), d2y1 = (n.y1 - s.y1) / (2 * h);
        const double d1y2 = (e.y2 - w.y2) / (2 * h), d2y2 = (n.y2 - s.y2) / (2 * h);
        const double g11 = d1y1 * d1y1 + d2y1 * d2y1;
        const double g22 = d1y2 * d1y2 + d2y2 * d2y2;
        const double g12 = d1y1 * d1y2 + d2y1 * d2y2;
        worst = std::max({worst, std::abs(mass * g11 - 1.0), std::abs(mass * g22 - 1.0),
                          std::abs(mass * g12)});
      } catch (const Error&) {
      }
    }
  }
  return worst;
}

HolomorphyResidual holomorphy_residual(const MapFamily& family, const XGrid& grid) {
  HolomorphyResidual out{0.0, 0.0, 0};
  const double h = grid.h;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const XPoint x = grid.at(i, j);
      try {
        const YPoint c = y_of_x(family, x);
        const YPoint e = y_of_x(family, {x.x1 + h, x.x2});
        const YPoint w = y_of_x(family, {x.x1 - h, x.x2});
        const YPoint n = y_of_x(family, {x.x1, x.x2 + h});
        const YPoint s = y_of_x(family, {x.x1, x.x2 - h});
        const double d1y1 = (e.y1 - w.y1) / (2 * h), d2y1 = (n.y1 - s.y1) / (2 * h);
        const double d1y2 = (e.y2 - w.y2) / (2 * h), d2y2 = (n.y2 - s.y2) / (2 * h);
        const double cr = std::abs(d1y1 + d2y2) + std::abs(d2y1 - d1y2);
        const double lap1 = (e.y1 + w.y1 + n.y1 + s.y1 - 4.0 * c.y1) / (h * h);
        const double lap2 = (e.y2 + w.y2 + n.y2 + s.y2 - 4.0 * c.y2) / (h * h);
        out.cauchy_riemann = std::max(out.cauchy_riemann, cr);
        out.harmonic = std::max(out.harmonic, std::abs(lap1) + std::abs(lap2));
        ++out.points;
      } catch (const Error&) {
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// normalization

NormalizationResult normalization_check(const TransformedState& ts,
                                        std::shared_ptr<const Grid2D> grid,
                                        const NormalizationOptions& opts) {
  const Grid2D& g = *grid;
  const Field2D psi = sample_state(ts, grid, opts.scale);
  const int nx = g.nx(), ny = g.ny();
  const double h = g.h();
  std::vector<double> w(g.size(), 0.0);
  double tail = 0.0;
  for (int j = 0; j < ny; ++j) {
    const bool edge_y = !g.periodic_y2() && (j == 0 || j == ny - 1);
    const double wy = edge_y ? 0.5 : 1.0;
    for (int i = 0; i < nx; ++i) {
      const bool edge_x = i == 0 || i == nx - 1;
      const double wx = edge_x ? 0.5 : 1.0;
      if (g.masked(i, j)) continue;
      w[g.index(i, j)] = wx * wy * h * h;
      const double p = psi(i, j);
      if (edge_x) tail += p * p * h;
      if (edge_y) tail += p * p * h;
    }
  }
  const double integral =
      kernels::weighted_dot(psi.values().data(), psi.values().data(), w.data(), w.size());
  if (tail > opts.tail_tolerance)
    throw ExtentError("grid truncates the state: edge integral " + std::to_string(tail) +
                      " exceeds " + std::to_string(opts.tail_tolerance));
  return {integral, tail};
}

RichardsonResult normalization_richardson(const TransformedState& ts, const Box& box,
                                          double h_coarse, const NormalizationOptions& opts) {
  auto at = [&](double h) {
    MaskOptions mo;
    mo.eps = 0.5 * h;
    mo.mask_cuts = false;
    auto g = std::make_shared<const Grid2D>(
        make_grid_box(ts.model, box.y1_lo, box.y1_hi, box.y2_lo, box.y2_hi, h, mo));
    return normalization_check(ts, g, opts).integral;
  };
  const double coarse = at(h_coarse);
  const double fine = at(0.5 * h_coarse);
  return {coarse, fine, 2.0 * fine - coarse};
}

// ---------------------------------------------------------------------------
// hermiticity

HermiticityResult hermiticity_decay(const TransformedState& ts,
                                    const std::vector<YPoint>& boundary,
                                    const std::vector<YPoint>& interior) {
  auto scan = [&](const std::vector<YPoint>& pts, int& used) {
    double best = 0.0;
    used = 0;
    for (const YPoint& y : pts) {
      try {
        const double psi = transformed_state_eval(ts, y);
        const double m = mass_of(ts.model, y);
        best = std::max(best, psi * psi / std::sqrt(m));
        ++used;
      } catch (const Error&) {
      }
    }
    return best;
  };
  HermiticityResult r{};
  r.boundary_max = scan(boundary, r.boundary_used);
  r.interior_max = scan(interior, r.interior_used);
  r.ratio = r.interior_max > 0.0 ? r.boundary_max / r.interior_max : 0.0;
  return r;
}

std::vector<YPoint> line_samples(YPoint a, YPoint b, int n) {
  if (n < 2) throw ConfigError("line needs at least two samples");
  std::vector<YPoint> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double t = double(k) / (n - 1);
    out.push_back({a.y1 + t * (b.y1 - a.y1), a.y2 + t * (b.y2 - a.y2)});
  }
  return out;
}

std::vector<YPoint> circle_samples(double radius, int n) {
  if (n < 3 || !(radius > 0.0)) throw ConfigError("circle needs r > 0 and n >= 3");
  std::vector<YPoint> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    // Half-step offset keeps samples off the y1 axis, where the cuts lie.
    const double t = 2.0 * std::numbers::pi * (k + 0.5) / n;
    out.push_back({radius * std::cos(t), radius * std::sin(t)});
  }
  return out;
}

std::vector<YPoint> lattice_samples(const Box& box, int n) {
  if (n < 2) throw ConfigError("lattice needs at least two samples per axis");
  std::vector<YPoint> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      out.push_back({box.y1_lo + (box.y1_hi - box.y1_lo) * i / (n - 1),
                     box.y2_lo + (box.y2_hi - box.y2_lo) * j / (n - 1)});
  return out;
}

// ---------------------------------------------------------------------------
// symmetry

double symmetry_check(const PdmModel& model, std::shared_ptr<const Grid2D> grid,
                      StencilKind kind, std::uint64_t seed) {
  const PdmOperator op(model, grid);
  const Grid2D& g = *grid;
  const std::size_t n = g.size();
  const auto& valid = op.valid();
  const Stencil5 st = op.assemble(kind);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> phi(n, 0.0), psi(n, 0.0), w(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (!valid[k]) continue;
    phi[k] = dist(rng);
    psi[k] = dist(rng);
    w[k] = 1.0;
  }
  auto norm = [&](const std::vector<double>& v) {
    return std::sqrt(kernels::weighted_dot(v.data(), v.data(), w.data(), n));
  };

  // K x = A x - A^T x
  std::vector<double> ax(n), atx(n), kx(n), kkx(n);
  auto apply_k = [&](const std::vector<double>& x, std::vector<double>& out) {
    stencil_apply(g, st, valid, x, ax, false);
    stencil_apply(g, st, valid, x, atx, true);
    for (std::size_t k = 0; k < n; ++k) out[k] = ax[k] - atx[k];
  };
  for (int it = 0; it < 30; ++it) {
    apply_k(psi, kx);
    if (!(norm(kx) > 0.0)) break;
    apply_k(kx, kkx);
    const double nk = norm(kkx);
    if (!(nk > 0.0)) break;
    for (std::size_t k = 0; k < n; ++k) psi[k] = -kkx[k] / nk;
  }
  apply_k(psi, kx);
  if (norm(kx) > 0.0) phi = kx;

  std::vector<double> hphi(n), hpsi(n);
  if (kind == StencilKind::Conservative) {
    op.apply_raw(phi.data(), hphi.data());
    op.apply_raw(psi.data(), hpsi.data());
  } else {
    stencil_apply(g, st, valid, phi, hphi, false);
    stencil_apply(g, st, valid, psi, hpsi, false);
  }
  const double a = kernels::weighted_dot(phi.data(), hpsi.data(), w.data(), n);
  const double b = kernels::weighted_dot(hphi.data(), psi.data(), w.data(), n);
  return std::abs(a - b) / (norm(phi) * norm(psi) * op.norm_estimate());
}

// ---------------------------------------------------------------------------
// convergence

double ConvergenceResult::min_order() const {
  double m = kInf;
  for (const auto& r : rows)
    if (r.order) m = std::min(m, *r.order);
  return m;
}

double ConvergenceResult::max_order() const {
  double m = -kInf;
  for (const auto& r : rows)
    if (r.order) m = std::max(m, *r.order);
  return m;
}

ConvergenceResult convergence_study(const std::vector<double>& h_list,
                                    const std::function<double(double)>& residual_at) {
  if (h_list.size() < 3) throw ConfigError("convergence study needs at least three h values");
  for (std::size_t k = 0; k < h_list.size(); ++k) {
    if (!(h_list[k] > 0.0)) throw ConfigError("convergence study needs positive h");
    if (k > 0 && !(h_list[k] < h_list[k - 1]))
      throw ConfigError("convergence study needs strictly decreasing h");
  }
  ConvergenceResult out;
  for (std::size_t k = 0; k < h_list.size(); ++k) {
    ConvergenceRow row{h_list[k], residual_at(h_list[k]), std::nullopt};
    if (k > 0) {
      const auto& prev = out.rows.back();
      if (!(row.residual < prev.residual))
        out.warnings.push_back("non-monotone residual at h=" + std::to_string(row.h));
      if (row.residual > 0.0 && prev.residual > 0.0)
        row.order = std::log(prev.residual / row.residual) / std::log(prev.h / row.h);
    }
    out.rows.push_back(row);
  }
  return out;
}

// ---------------------------------------------------------------------------
// report

const CheckEntry& VerificationReport::add(std::string check_name, double measured,
                                          double tolerance, std::string notes) {
  const bool pass = measured <= tolerance;
  entries_.push_back({std::move(check_name), measured, tolerance, pass, std::move(notes)});
  return entries_.back();
}

const CheckEntry& VerificationReport::note(std::string check_name, double measured,
                                           std::string notes) {
  entries_.push_back({std::move(check_name), measured, kInf, true, std::move(notes)});
  return entries_.back();
}

bool VerificationReport::all_passed() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](const CheckEntry& e) { return e.pass; });
}

namespace {

nlohmann::json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

double number_from(const nlohmann::json& j, double if_null) {
  return j.is_null() ? if_null : j.get<double>();
}

}  // namespace

std::string VerificationReport::to_json() const {
  nlohmann::json doc;
  doc["model"] = model_;
  doc["grid"] = grid_;
  doc["passed"] = all_passed();
  doc["entries"] = nlohmann::json::array();
  for (const auto& e : entries_) {
    doc["entries"].push_back({{"check_name", e.check_name},
                              {"measured", number_or_null(e.measured)},
                              {"tolerance", number_or_null(e.tolerance)},
                              {"pass", e.pass},
                              {"notes", e.notes}});
  }
  return doc.dump(2) + "\n";
}

VerificationReport VerificationReport::from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  VerificationReport r(doc.at("model").get<std::string>(), doc.at("grid").get<std::string>());
  for (const auto& e : doc.at("entries")) {
    r.entries_.push_back({e.at("check_name").get<std::string>(),
                          number_from(e.at("measured"), kNaN),
                          number_from(e.at("tolerance"), kInf), e.at("pass").get<bool>(),
                          e.at("notes").get<std::string>()});
  }
  return r;
}

}  // namespace pdm
