#include "pdm/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdm/errors.hpp"
#include "pdm/heatmap.hpp"
#include "pdm/presets.hpp"

namespace pdm::cli {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string mass_text(const ParamSet& p) {
  const std::string& k = p.kind;
  if (k == "log") return "M = γ²·exp(αy₁)";
  if (k == "asinh") return "M = (A²/2)·[cosh(λy₁) + cos(λy₂)]";
  if (k == "power") return "M = β²·ρ^(2λ)/4^(λ+1)";
  if (k == "exp_radial") return "M = β²/ρ²";
  if (k == "inverse") return "M = 4b²/ρ⁴";
  if (k == "quadratic") return "M = 1/(8|a|ρ)";
  if (k == "logistic") return "M = 4/(λ²ρ²(b²ρ² − 4bρ·cos φ + 4))";
  return "?";
}

std::string shift_text(const ParamSet& p) {
  const std::string& k = p.kind;
  if (k == "log") return "U − V = −(α²/(4γ²))·exp(−αy₁)";
  if (k == "asinh") {
    return "U − V = −λ²[cosh(λy₁) − cos(λy₂)] / (2A²[cosh(λy₁) + cos(λy₂)]²)";
  }
  if (k == "power") return "U − V = −4^(λ+1)·λ²/(β²ρ^(2λ+2))";
  if (k == "exp_radial") return "U − V = −1/β²";
  if (k == "inverse") return "U − V = −ρ²/b²";
  if (k == "quadratic") return "U − V = −2|a|/ρ";
  if (k == "logistic") return "U − V = −λ²(b²ρ² − 2bρ·cos φ + 1)";
  return "?";
}

std::vector<double> levels_1d(const OneDimPotential& v, const SolverSpec& s, int want) {
  const Grid1D g{s.x0, s.h, s.n};
  std::vector<Eigenpair1D> pairs;
  try {
    pairs = solve_1d(v, g, want);
  } catch (const CountError& e) {
    if (e.available() <= 0) throw;
    pairs = solve_1d(v, g, e.available());
  }
  std::vector<double> out;
  for (const auto& p : pairs) out.push_back(p.energy);
  return out;
}

Box grid_box(const Grid2D& g) {
  const YPoint lo = g.at(0, 0);
  const YPoint hi = g.at(g.nx() - 1, g.ny() - 1);
  return {lo.y1, hi.y1, lo.y2, hi.y2};
}

std::string json_path(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

}  // namespace

void apply_overrides(ModelConfig& cfg, const Overrides& o) {
  if (o.grid_h) {
    if (!(*o.grid_h > 0.0)) throw ConfigError("--grid-h must be positive");
    if (!cfg.grid) throw ConfigError("--grid-h needs a [grid] section");
    auto& g = *cfg.grid;
    const double w = (g.nx - 1) * g.h;
    const double hgt = (g.ny - 1) * g.h;
    g.h = *o.grid_h;
    g.nx = static_cast<int>(std::lround(w / g.h)) + 1;
    g.ny = static_cast<int>(std::lround(hgt / g.h)) + 1;
  }
  if (o.mask_eps) {
    if (!(*o.mask_eps >= 0.0)) throw ConfigError("--mask-eps must be non-negative");
    cfg.numerics.mask_eps = *o.mask_eps;
  }
  if (o.tol_scale) {
    if (!(*o.tol_scale > 0.0)) throw ConfigError("--tol-scale must be positive");
    auto& t = cfg.tolerances;
    for (double* v : {&t.metric, &t.eigen_residual, &t.normalization, &t.hermiticity,
                      &t.symmetry, &t.convergence_order, &t.closed_forms}) {
      *v *= *o.tol_scale;
    }
  }
  if (o.png) cfg.outputs.png = *o.png;
  if (o.out) cfg.outputs.dir = *o.out;
}

std::string model_show(const ModelConfig& cfg) {
  const PdmModel model = build_model(cfg);
  std::ostringstream os;
  os << "family:    " << model.family.describe() << "\n";
  os << "domain:    " << model.domain.description << "\n";
  os << "region:    " << to_string(model.domain.kind);
  if (model.domain.y2_period) os << ", period in y2 " << fmt(*model.domain.y2_period);
  os << "\n";
  if (!model.domain.excluded.empty()) {
    os << "excluded:";
    for (const auto& e : model.domain.excluded) os << " (" << fmt(e.y1) << ", " << fmt(e.y2) << ")";
    os << "\n";
  }
  os << "sheets:    " << sheet_count(model.family) << "\n";
  os << "mass:      " << mass_text(cfg.family) << "\n";
  os << "potential: " << shift_text(cfg.family) << "\n";
  os << "base:      " << model.base.describe() << "\n";

  if (cfg.base_kind == "oscillator") {
    struct Level {
      int n1, n2;
      double e;
    };
    std::vector<Level> levels;
    for (int n1 = 0; n1 <= 8; ++n1) {
      for (int n2 = 0; n2 <= 8; ++n2) {
        levels.push_back(
            {n1, n2, oscillator_state(*cfg.omega1, *cfg.omega2, n1, n2).energy});
      }
    }
    std::sort(levels.begin(), levels.end(),
              [](const Level& a, const Level& b) { return a.e < b.e; });
    os << "levels:\n";
    for (std::size_t k = 0; k < 6; ++k) {
      os << "  (" << levels[k].n1 << "," << levels[k].n2 << ")  E = " << fmt(levels[k].e) << "\n";
    }
  } else {
    const auto e1 = levels_1d(build_potential_1d(*cfg.v1), cfg.state.solver1.value(),
                              cfg.state.k1 + 3);
    const auto e2 = levels_1d(build_potential_1d(*cfg.v2), cfg.state.solver2.value(),
                              cfg.state.k2 + 3);
    os << "levels x1:";
    for (double e : e1) os << " " << fmt(e);
    os << "\nlevels x2:";
    for (double e : e2) os << " " << fmt(e);
    os << "\n";
  }
  const BaseState s = build_base_state(cfg);
  os << "state:     ";
  if (cfg.base_kind == "oscillator") {
    os << "(" << cfg.state.n1 << "," << cfg.state.n2 << ")";
  } else {
    os << "(k1=" << cfg.state.k1 << ", k2=" << cfg.state.k2 << ")";
  }
  os << "  E = " << fmt(s.energy) << "\n";
  return os.str();
}

std::vector<std::string> export_fields(const ModelConfig& cfg) {
  const TransformedState ts = build_state(cfg);
  auto grid = std::make_shared<const Grid2D>(build_grid(cfg, ts.model));
  std::vector<std::string> written;
  for (const auto& name : cfg.outputs.fields) {
    const FieldKind kind = parse_field_kind(name);
    const Field2D f = compute_field(ts, kind, grid);
    const std::string csv = json_path(cfg.outputs.dir, name + ".csv");
    write_csv(f, csv);
    written.push_back(csv);
    if (cfg.outputs.png) {
      const std::string png = json_path(cfg.outputs.dir, name + ".png");
      write_heatmap(f, png, {name, std::nullopt, std::nullopt, kind == FieldKind::State});
      written.push_back(png);
      written.push_back(png + ".json");
    }
  }
  return written;
}

VerificationReport run_verify(const ModelConfig& cfg) {
  const TransformedState ts = build_state(cfg);
  const PdmModel& model = ts.model;
  const MaskOptions mask = build_mask_options(cfg);
  auto grid = std::make_shared<const Grid2D>(build_grid(cfg, model));
  const Box box = grid_box(*grid);
  const Tolerances& tol = cfg.tolerances;
  VerificationReport report(model.describe(), grid->describe());

  std::vector<std::string> run = cfg.checks.run;
  if (run.empty()) run = check_catalog();
  const auto wants = [&](const char* name) {
    return std::find(run.begin(), run.end(), name) != run.end();
  };

  // Unmasked nodes, thinned to at most ~4000 samples.
  std::vector<YPoint> nodes;
  {
    const long total = static_cast<long>(grid->size()) - grid->count_masked();
    const int stride = std::max(1, static_cast<int>(std::sqrt(std::max(1L, total) / 4000.0)) + 1);
    for (int j = 0; j < grid->ny(); j += stride) {
      for (int i = 0; i < grid->nx(); i += stride) {
        if (!grid->masked(i, j)) nodes.push_back(grid->at(i, j));
      }
    }
  }

  if (wants("metric")) {
    double worst = 0.0;
    for (const YPoint& y : nodes) {
      worst = std::max(worst, metric_residual_at(model.family, pull_back(model.family, y).x));
    }
    report.add("metric", worst, tol.metric, std::to_string(nodes.size()) + " nodes");
  }

  if (wants("closed_forms")) {
    double mass_dev = 0.0;
    double shift_dev = 0.0;
    for (const YPoint& y : nodes) {
      const double m = mass_of(model, y);
      mass_dev = std::max(mass_dev, std::abs(mass_closed_form(model.family, y) - m) / std::abs(m));
      const double s = -weight_laplacian_ratio(model.family, y);
      const double d = std::abs(potential_shift_closed_form(model.family, y) - s);
      shift_dev = std::max(shift_dev, d / std::max(std::abs(s), 1e-300));
    }
    report.add("closed_form_mass", mass_dev, tol.closed_forms, "relative");
    report.add("closed_form_weight_ratio", shift_dev, tol.closed_forms, "relative");
    if (!nodes.empty()) {
      const YPoint y = nodes[nodes.size() / 2];
      for (const auto& a : printed_form_audit(model.family, y)) {
        report.note("printed_form:" + a.name, a.ratio,
                    "printed/reference ratio; predicted " + fmt(a.predicted_ratio) +
                        (a.matches_prediction ? " (matches)" : " (differs)"));
      }
    }
  }

  if (wants("eigen_residual")) {
    ResidualOptions ro;
    ro.energy_shift = cfg.numerics.energy_shift;
    const ResidualResult r = eigen_residual(ts, grid, ro);
    report.add("eigen_residual", r.relative, tol.eigen_residual,
               std::to_string(r.cells) + " cells, max abs " + fmt(r.max_abs));
  }

  if (wants("normalization")) {
    const auto& nc = cfg.checks.normalization;
    NormalizationOptions no;
    no.tail_tolerance = nc.tail_tolerance;
    const Box nb{nc.y1 ? nc.y1->first : box.y1_lo, nc.y1 ? nc.y1->second : box.y1_hi,
                 nc.y2 ? nc.y2->first : box.y2_lo, nc.y2 ? nc.y2->second : box.y2_hi};
    const double h = nc.h.value_or(grid->h());
    try {
      if (nc.method == "richardson") {
        const RichardsonResult r = normalization_richardson(ts, nb, h, no);
        report.add("normalization", std::abs(r.extrapolated - 1.0), tol.normalization,
                   "richardson: I(h)=" + fmt(r.coarse) + " I(h/2)=" + fmt(r.fine) +
                       " extrapolated " + fmt(r.extrapolated));
      } else {
        MaskOptions mo = mask;
        mo.periodic_y2 = nc.periodic_y2;
        std::shared_ptr<const Grid2D> ng;
        if (nc.periodic_y2 && model.domain.y2_period) {
          // Rows span exactly one period.
          const double period = *model.domain.y2_period;
          const int ny = static_cast<int>(std::lround(period / h));
          const int nx = static_cast<int>(std::lround((nb.y1_hi - nb.y1_lo) / h)) + 1;
          ng = std::make_shared<const Grid2D>(
              make_grid(model, {nb.y1_lo, nb.y2_lo}, period / ny, nx, ny, mo));
        } else {
          ng = std::make_shared<const Grid2D>(
              make_grid_box(model, nb.y1_lo, nb.y1_hi, nb.y2_lo, nb.y2_hi, h, mo));
        }
        const NormalizationResult r = normalization_check(ts, ng, no);
        report.add("normalization", std::abs(r.integral - 1.0), tol.normalization,
                   "trapezoid: I=" + fmt(r.integral) + " edge tail " + fmt(r.edge_tail));
      }
    } catch (const ExtentError& e) {
      report.add("normalization", std::numeric_limits<double>::infinity(), tol.normalization,
                 e.what());
    }
  }

  if (wants("hermiticity")) {
    const auto& hc = cfg.checks.hermiticity;
    std::vector<YPoint> boundary;
    for (double y1 : hc.lines_y1) {
      const auto l = line_samples({y1, box.y2_lo}, {y1, box.y2_hi}, hc.samples);
      boundary.insert(boundary.end(), l.begin(), l.end());
    }
    if (hc.circle_radius) {
      const auto c = circle_samples(*hc.circle_radius, hc.samples);
      boundary.insert(boundary.end(), c.begin(), c.end());
    }
    if (boundary.empty()) {
      const YPoint corners[] = {{box.y1_lo, box.y2_lo},
                                {box.y1_hi, box.y2_lo},
                                {box.y1_hi, box.y2_hi},
                                {box.y1_lo, box.y2_hi}};
      for (int k = 0; k < 4; ++k) {
        const auto l = line_samples(corners[k], corners[(k + 1) % 4], hc.samples);
        boundary.insert(boundary.end(), l.begin(), l.end());
      }
    }
    const auto interior = lattice_samples(box, 48);
    const HermiticityResult r = hermiticity_decay(ts, boundary, interior);
    report.add("hermiticity", r.ratio, tol.hermiticity,
               "boundary max " + fmt(r.boundary_max) + " over " + std::to_string(r.boundary_used) +
                   " samples, interior max " + fmt(r.interior_max));
  }

  if (wants("symmetry")) {
    report.add("symmetry", symmetry_check(model, grid), tol.symmetry, "conservative stencil");
  }

  if (wants("convergence")) {
    MaskOptions mo = mask;
    // Fix the masked region across resolutions.
    const double hmax = *std::max_element(cfg.checks.convergence.h.begin(),
                                          cfg.checks.convergence.h.end());
    if (!mo.eps) mo.eps = default_mask_eps(hmax);
    if (!mo.cut_eps) mo.cut_eps = default_cut_eps(hmax);
    ResidualOptions ro;
    ro.energy_shift = cfg.numerics.energy_shift;
    const ConvergenceResult c = convergence_study(cfg.checks.convergence.h, [&](double h) {
      auto g = std::make_shared<const Grid2D>(
          make_grid_box(model, box.y1_lo, box.y1_hi, box.y2_lo, box.y2_hi, h, mo));
      return eigen_residual(ts, g, ro).relative;
    });
    double worst = 0.0;
    std::string notes;
    for (const auto& row : c.rows) {
      notes += "h=" + fmt(row.h) + " r=" + fmt(row.residual);
      if (row.order) {
        notes += " p=" + fmt(*row.order);
        worst = std::max(worst, std::abs(*row.order - 2.0));
      }
      notes += "; ";
    }
    for (const auto& w : c.warnings) notes += w + "; ";
    report.add("convergence_order", worst, tol.convergence_order, notes);
  }

  return report;
}

std::vector<FigureSummary> render_figures(const std::string& preset, const std::string& out_dir,
                                          bool png, std::optional<double> grid_h) {
  std::vector<const FigurePreset*> chosen;
  if (preset == "all") {
    for (const auto& p : figure_presets()) chosen.push_back(&p);
  } else {
    chosen.push_back(&find_preset(preset));
  }
  std::vector<FigureSummary> out;
  for (const FigurePreset* p : chosen) {
    ModelConfig cfg = p->config;
    Overrides o;
    o.grid_h = grid_h;
    apply_overrides(cfg, o);
    const TransformedState ts = build_state(cfg);
    auto grid = std::make_shared<const Grid2D>(build_grid(cfg, ts.model));
    const Field2D f = compute_field(ts, p->field, grid);

    FigureSummary s;
    s.name = p->name;
    const std::string csv = json_path(out_dir, p->name + ".csv");
    write_csv(f, csv);
    s.files.push_back(csv);
    if (png) {
      const std::string path = json_path(out_dir, p->name + ".png");
      write_heatmap(f, path, {p->caption, std::nullopt, std::nullopt, p->field == FieldKind::State});
      s.files.push_back(path);
      s.files.push_back(path + ".json");
    }
    nlohmann::json meta = {{"name", p->name},
                           {"caption", p->caption},
                           {"model", ts.model.describe()},
                           {"field", to_string(p->field)},
                           {"grid", grid->describe()},
                           {"energy", ts.energy}};
    if (p->transect) {
      const auto& t = *p->transect;
      const auto values = transect(f, t.from, t.to, t.samples);
      double peak = 0.0;
      for (double v : values) {
        if (std::isfinite(v)) peak = std::max(peak, std::abs(v));
      }
      s.sign_changes = count_sign_changes(values, 1e-9 * peak);
      s.transect_ok = *s.sign_changes == t.expected_sign_changes;
      meta["transect"] = {{"from", {t.from.y1, t.from.y2}},
                          {"to", {t.to.y1, t.to.y2}},
                          {"samples", t.samples},
                          {"sign_changes", *s.sign_changes},
                          {"expected", t.expected_sign_changes}};
    }
    const std::string mpath = json_path(out_dir, p->name + ".json");
    write_file_atomic(mpath, meta.dump(2) + "\n");
    s.files.push_back(mpath);
    out.push_back(std::move(s));
  }
  return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Position-dependent-mass models from conformal maps of solvable problems"};
  app.require_subcommand(1);

  Overrides ov;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--grid-h", ov.grid_h, "Grid spacing (keeps the grid box)");
    sub->add_option("--mask-eps", ov.mask_eps, "Mask radius around excluded points");
    sub->add_option("--tol-scale", ov.tol_scale, "Multiply every tolerance");
    sub->add_flag("--png,!--no-png", ov.png, "Write PNG heatmaps");
    sub->add_option("--out", ov.out, "Output directory");
  };

  std::string config_path;
  CLI::App* model = app.add_subcommand("model", "Inspect a model");
  model->require_subcommand(1);
  CLI::App* show = model->add_subcommand("show", "Print closed forms, domain and levels");
  show->add_option("config", config_path, "TOML model file")->required();
  add_common(show);

  CLI::App* exp = app.add_subcommand("export", "Write field CSVs and heatmaps");
  exp->add_option("config", config_path, "TOML model file")->required();
  add_common(exp);

  CLI::App* ver = app.add_subcommand("verify", "Run the configured checks");
  ver->add_option("config", config_path, "TOML model file")->required();
  add_common(ver);

  std::string preset;
  CLI::App* figs = app.add_subcommand("figures", "Render a figure preset (fig1..fig10 or all)");
  figs->add_option("preset", preset, "Preset name or 'all'")->required();
  add_common(figs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (figs->parsed()) {
      const std::string dir = ov.out.value_or("figures");
      bool ok = true;
      for (const auto& s : render_figures(preset, dir, ov.png.value_or(true), ov.grid_h)) {
        out << s.name << ":";
        for (const auto& f : s.files) out << " " << f;
        if (s.sign_changes) {
          out << " (transect sign changes: " << *s.sign_changes << ")";
          ok = ok && s.transect_ok;
        }
        out << "\n";
      }
      return ok ? kExitOk : kExitCheckFailed;
    }

    ModelConfig cfg = load_config(config_path);
    apply_overrides(cfg, ov);
    if (show->parsed()) {
      out << model_show(cfg);
      return kExitOk;
    }
    if (exp->parsed()) {
      for (const auto& f : export_fields(cfg)) out << f << "\n";
      return kExitOk;
    }
    const VerificationReport r = run_verify(cfg);
    for (const auto& e : r.entries()) {
      out << (e.pass ? "PASS " : "FAIL ") << e.check_name << "  measured " << fmt(e.measured)
          << "  tolerance " << fmt(e.tolerance);
      if (!e.notes.empty()) out << "  [" << e.notes << "]";
      out << "\n";
    }
    const std::string path = json_path(cfg.outputs.dir, "report.json");
    write_file_atomic(path, r.to_json());
    out << "report: " << path << "\n";
    return r.all_passed() ? kExitOk : kExitCheckFailed;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace pdm::cli
