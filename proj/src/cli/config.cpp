#include "pdm/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "pdm/errors.hpp"

namespace pdm::cli {

namespace {

struct KindSchema {
  std::string kind;
  std::vector<std::string> params;
};

const std::vector<KindSchema>& family_schemas() {
  static const std::vector<KindSchema> s = {
      {"log", {"alpha", "gamma", "delta"}},
      {"asinh", {"A", "lambda"}},
      {"power", {"lambda", "beta", "alpha"}},
      {"exp_radial", {"gamma", "beta"}},
      {"inverse", {"b"}},
      {"quadratic", {"a"}},
      {"logistic", {"a", "b", "lambda"}},
  };
  return s;
}

const std::vector<KindSchema>& potential_schemas() {
  static const std::vector<KindSchema> s = {
      {"oscillator", {"omega"}},
      {"morse", {"C", "lambda"}},
      {"rosen_morse", {"A", "B", "lambda"}},
  };
  return s;
}

std::string where(const std::string& source, const toml::node& node) {
  const auto& b = node.source().begin;
  if (!b) return source;
  return source + ":" + std::to_string(b.line) + ":" + std::to_string(b.column);
}

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

// Reads keys from one table and rejects whatever was not read.
class TableReader {
 public:
  TableReader(const toml::table& t, std::string path, const std::string& source)
      : t_(t), path_(std::move(path)), source_(source) {}

  const toml::node* node(const std::string& key) {
    seen_.insert(key);
    return t_.get(key);
  }

  [[noreturn]] void fail(const toml::node& n, const std::string& key, const std::string& msg) {
    throw ConfigError(where(source_, n) + ": " + join(path_, key) + ": " + msg);
  }
  [[noreturn]] void missing(const std::string& key) {
    throw ConfigError(where(source_, t_) + ": missing required key '" + join(path_, key) + "'");
  }

  std::optional<double> opt_double(const std::string& key) {
    const toml::node* n = node(key);
    if (!n) return std::nullopt;
    if (n->is_floating_point()) return n->as_floating_point()->get();
    if (n->is_integer()) return static_cast<double>(n->as_integer()->get());
    fail(*n, key, "expected a number");
  }
  double req_double(const std::string& key) {
    auto v = opt_double(key);
    if (!v) missing(key);
    return *v;
  }
  std::optional<int> opt_int(const std::string& key) {
    const toml::node* n = node(key);
    if (!n) return std::nullopt;
    if (!n->is_integer()) fail(*n, key, "expected an integer");
    const auto v = n->as_integer()->get();
    if (v < -(1LL << 30) || v > (1LL << 30)) fail(*n, key, "integer out of range");
    return static_cast<int>(v);
  }
  int req_int(const std::string& key) {
    auto v = opt_int(key);
    if (!v) missing(key);
    return *v;
  }
  std::optional<bool> opt_bool(const std::string& key) {
    const toml::node* n = node(key);
    if (!n) return std::nullopt;
    if (!n->is_boolean()) fail(*n, key, "expected true or false");
    return n->as_boolean()->get();
  }
  std::optional<std::string> opt_string(const std::string& key) {
    const toml::node* n = node(key);
    if (!n) return std::nullopt;
    if (!n->is_string()) fail(*n, key, "expected a string");
    return n->as_string()->get();
  }
  std::string req_string(const std::string& key) {
    auto v = opt_string(key);
    if (!v) missing(key);
    return *v;
  }
  std::optional<std::vector<double>> opt_doubles(const std::string& key) {
    const toml::node* n = node(key);
    if (!n) return std::nullopt;
    if (!n->is_array()) fail(*n, key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : *n->as_array()) {
      if (e.is_floating_point()) {
        out.push_back(e.as_floating_point()->get());
      } else if (e.is_integer()) {
        out.push_back(static_cast<double>(e.as_integer()->get()));
      } else {
        fail(e, key, "expected an array of numbers");
      }
    }
    return out;
  }
  std::optional<std::pair<double, double>> opt_range(const std::string& key) {
    auto v = opt_doubles(key);
    if (!v) return std::nullopt;
    if (v->size() != 2 || !((*v)[0] < (*v)[1])) {
      fail(*t_.get(key), key, "expected [lo, hi] with lo < hi");
    }
    return std::make_pair((*v)[0], (*v)[1]);
  }
  std::optional<std::vector<std::string>> opt_strings(const std::string& key) {
    const toml::node* n = node(key);
    if (!n) return std::nullopt;
    if (!n->is_array()) fail(*n, key, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& e : *n->as_array()) {
      if (!e.is_string()) fail(e, key, "expected an array of strings");
      out.push_back(e.as_string()->get());
    }
    return out;
  }
  const toml::table* opt_table(const std::string& key) {
    const toml::node* n = node(key);
    if (!n) return nullptr;
    if (!n->is_table()) fail(*n, key, "expected a table");
    return n->as_table();
  }
  const toml::table& req_table(const std::string& key) {
    const toml::table* t = opt_table(key);
    if (!t) missing(key);
    return *t;
  }
  std::string path(const std::string& key) const { return join(path_, key); }
  const std::string& source() const { return source_; }

  void finish() {
    for (const auto& [k, v] : t_) {
      const std::string key(k.str());
      if (!seen_.count(key)) {
        throw ConfigError(where(source_, v) + ": unknown key '" + join(path_, key) + "'");
      }
    }
  }

 private:
  const toml::table& t_;
  std::string path_;
  const std::string& source_;
  std::set<std::string> seen_;
};

ParamSet read_params(const toml::table& t, const std::string& path,
                     const std::vector<KindSchema>& schemas, const std::string& source) {
  TableReader r(t, path, source);
  ParamSet p;
  p.kind = r.req_string("kind");
  auto it = std::find_if(schemas.begin(), schemas.end(),
                         [&](const KindSchema& s) { return s.kind == p.kind; });
  if (it == schemas.end()) {
    std::string names;
    for (const auto& s : schemas) names += (names.empty() ? "" : ", ") + s.kind;
    r.fail(*t.get("kind"), "kind", "unknown kind '" + p.kind + "' (expected one of: " + names + ")");
  }
  for (const auto& name : it->params) p.values.emplace_back(name, r.req_double(name));
  r.finish();
  return p;
}

SolverSpec read_solver(const toml::table& t, const std::string& path, const std::string& source) {
  TableReader r(t, path, source);
  SolverSpec s;
  s.x0 = r.req_double("x0");
  s.h = r.req_double("h");
  s.n = r.req_int("n");
  r.finish();
  return s;
}

void check_names(const std::vector<std::string>& names, const std::vector<std::string>& catalog,
                 const toml::table& t, const std::string& key, const std::string& path,
                 const std::string& source) {
  for (const auto& n : names) {
    if (std::find(catalog.begin(), catalog.end(), n) == catalog.end()) {
      std::string all;
      for (const auto& c : catalog) all += (all.empty() ? "" : ", ") + c;
      throw ConfigError(where(source, *t.get(key)) + ": " + join(path, key) + ": unknown name '" +
                        n + "' (expected one of: " + all + ")");
    }
  }
}

toml::array doubles_to_array(const std::vector<double>& v) {
  toml::array a;
  for (double d : v) a.push_back(d);
  return a;
}

toml::array strings_to_array(const std::vector<std::string>& v) {
  toml::array a;
  for (const auto& s : v) a.push_back(s);
  return a;
}

toml::table params_to_table(const ParamSet& p) {
  toml::table t;
  t.insert("kind", p.kind);
  for (const auto& [k, v] : p.values) t.insert(k, v);
  return t;
}

toml::table solver_to_table(const SolverSpec& s) {
  return toml::table{{"x0", s.x0}, {"h", s.h}, {"n", s.n}};
}

}  // namespace

double ParamSet::get(const std::string& name) const {
  for (const auto& [k, v] : values) {
    if (k == name) return v;
  }
  throw ConfigError("parameter '" + name + "' missing from " + kind);
}

const std::vector<std::string>& check_catalog() {
  static const std::vector<std::string> c = {"metric",      "closed_forms", "eigen_residual",
                                             "normalization", "hermiticity", "symmetry",
                                             "convergence"};
  return c;
}

const std::vector<std::string>& field_catalog() {
  static const std::vector<std::string> c = {"mass", "potential", "potential_printed", "state"};
  return c;
}

ModelConfig parse_config(const std::string& text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    const auto& b = e.source().begin;
    throw ConfigError(source + ":" + std::to_string(b.line) + ":" + std::to_string(b.column) +
                      ": " + std::string(e.description()));
  }

  ModelConfig cfg;
  TableReader top(root, "", source);

  cfg.family = read_params(top.req_table("family"), "family", family_schemas(), source);
  try {
    build_family(cfg.family);
  } catch (const ConfigError& e) {
    throw ConfigError(where(source, top.req_table("family")) + ": family: " + e.what());
  }

  {
    const toml::table& bt = top.req_table("base");
    TableReader r(bt, "base", source);
    cfg.base_kind = r.req_string("kind");
    if (cfg.base_kind == "oscillator") {
      cfg.omega1 = r.req_double("omega1");
      cfg.omega2 = r.req_double("omega2");
    } else if (cfg.base_kind == "separable") {
      cfg.v1 = read_params(r.req_table("v1"), "base.v1", potential_schemas(), source);
      cfg.v2 = read_params(r.req_table("v2"), "base.v2", potential_schemas(), source);
    } else {
      r.fail(*bt.get("kind"), "kind",
             "unknown kind '" + cfg.base_kind + "' (expected oscillator or separable)");
    }
    try {
      if (cfg.base_kind == "oscillator") {
        BasePotential::oscillator(*cfg.omega1, *cfg.omega2);
      } else {
        build_potential_1d(*cfg.v1);
        build_potential_1d(*cfg.v2);
      }
    } catch (const ConfigError& e) {
      throw ConfigError(where(source, bt) + ": base: " + e.what());
    }
    r.finish();
  }

  {
    const toml::table& st = top.req_table("state");
    TableReader r(st, "state", source);
    if (cfg.base_kind == "oscillator") {
      cfg.state.n1 = r.req_int("n1");
      cfg.state.n2 = r.req_int("n2");
      if (cfg.state.n1 < 0 || cfg.state.n2 < 0) {
        throw ConfigError(where(source, st) + ": state: quantum numbers must be >= 0");
      }
    } else {
      cfg.state.k1 = r.req_int("k1");
      cfg.state.k2 = r.req_int("k2");
      if (cfg.state.k1 < 0 || cfg.state.k2 < 0) {
        throw ConfigError(where(source, st) + ": state: level indices must be >= 0");
      }
      cfg.state.solver1 = read_solver(r.req_table("solver1"), "state.solver1", source);
      cfg.state.solver2 = read_solver(r.req_table("solver2"), "state.solver2", source);
    }
    r.finish();
  }

  if (const toml::table* gt = top.opt_table("grid")) {
    TableReader r(*gt, "grid", source);
    GridConfig g;
    auto origin = r.opt_doubles("origin");
    if (!origin) r.missing("origin");
    if (origin->size() != 2) r.fail(*gt->get("origin"), "origin", "expected [y1, y2]");
    g.origin_y1 = (*origin)[0];
    g.origin_y2 = (*origin)[1];
    g.h = r.req_double("h");
    g.nx = r.req_int("nx");
    g.ny = r.req_int("ny");
    g.annulus = r.opt_range("annulus");
    r.finish();
    cfg.grid = g;
  }

  if (const toml::table* nt = top.opt_table("numerics")) {
    TableReader r(*nt, "numerics", source);
    auto& n = cfg.numerics;
    n.mask_eps = r.opt_double("mask_eps");
    n.cut_eps = r.opt_double("cut_eps");
    n.mask_cuts = r.opt_bool("mask_cuts").value_or(n.mask_cuts);
    n.strip_margin = r.opt_double("strip_margin").value_or(n.strip_margin);
    n.periodic_y2 = r.opt_bool("periodic_y2").value_or(n.periodic_y2);
    n.energy_shift = r.opt_double("energy_shift").value_or(n.energy_shift);
    r.finish();
  }

  if (const toml::table* ct = top.opt_table("checks")) {
    TableReader r(*ct, "checks", source);
    auto& c = cfg.checks;
    c.run = r.opt_strings("run").value_or(c.run);
    check_names(c.run, check_catalog(), *ct, "run", "checks", source);
    if (const toml::table* t = r.opt_table("normalization")) {
      TableReader s(*t, r.path("normalization"), source);
      auto& n = c.normalization;
      n.method = s.opt_string("method").value_or(n.method);
      if (n.method != "trapezoid" && n.method != "richardson") {
        s.fail(*t->get("method"), "method", "expected trapezoid or richardson");
      }
      n.y1 = s.opt_range("y1");
      n.y2 = s.opt_range("y2");
      n.h = s.opt_double("h");
      n.periodic_y2 = s.opt_bool("periodic_y2").value_or(n.periodic_y2);
      n.tail_tolerance = s.opt_double("tail_tolerance").value_or(n.tail_tolerance);
      s.finish();
    }
    if (const toml::table* t = r.opt_table("hermiticity")) {
      TableReader s(*t, r.path("hermiticity"), source);
      auto& h = c.hermiticity;
      h.lines_y1 = s.opt_doubles("lines_y1").value_or(h.lines_y1);
      h.circle_radius = s.opt_double("circle_radius");
      h.samples = s.opt_int("samples").value_or(h.samples);
      s.finish();
    }
    if (const toml::table* t = r.opt_table("convergence")) {
      TableReader s(*t, r.path("convergence"), source);
      c.convergence.h = s.opt_doubles("h").value_or(c.convergence.h);
      s.finish();
    }
    r.finish();
  }

  if (const toml::table* tt = top.opt_table("tolerances")) {
    TableReader r(*tt, "tolerances", source);
    auto& t = cfg.tolerances;
    t.metric = r.opt_double("metric").value_or(t.metric);
    t.eigen_residual = r.opt_double("eigen_residual").value_or(t.eigen_residual);
    t.normalization = r.opt_double("normalization").value_or(t.normalization);
    t.hermiticity = r.opt_double("hermiticity").value_or(t.hermiticity);
    t.symmetry = r.opt_double("symmetry").value_or(t.symmetry);
    t.convergence_order = r.opt_double("convergence_order").value_or(t.convergence_order);
    t.closed_forms = r.opt_double("closed_forms").value_or(t.closed_forms);
    r.finish();
  }

  if (const toml::table* ot = top.opt_table("outputs")) {
    TableReader r(*ot, "outputs", source);
    auto& o = cfg.outputs;
    o.dir = r.opt_string("dir").value_or(o.dir);
    o.fields = r.opt_strings("fields").value_or(o.fields);
    check_names(o.fields, field_catalog(), *ot, "fields", "outputs", source);
    o.png = r.opt_bool("png").value_or(o.png);
    r.finish();
  }

  top.finish();
  return cfg;
}

ModelConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string serialize_config(const ModelConfig& cfg) {
  toml::table root;
  root.insert("family", params_to_table(cfg.family));

  toml::table base{{"kind", cfg.base_kind}};
  if (cfg.omega1) base.insert("omega1", *cfg.omega1);
  if (cfg.omega2) base.insert("omega2", *cfg.omega2);
  if (cfg.v1) base.insert("v1", params_to_table(*cfg.v1));
  if (cfg.v2) base.insert("v2", params_to_table(*cfg.v2));
  root.insert("base", std::move(base));

  toml::table state;
  if (cfg.base_kind == "oscillator") {
    state.insert("n1", cfg.state.n1);
    state.insert("n2", cfg.state.n2);
  } else {
    state.insert("k1", cfg.state.k1);
    state.insert("k2", cfg.state.k2);
    if (cfg.state.solver1) state.insert("solver1", solver_to_table(*cfg.state.solver1));
    if (cfg.state.solver2) state.insert("solver2", solver_to_table(*cfg.state.solver2));
  }
  root.insert("state", std::move(state));

  if (cfg.grid) {
    const auto& g = *cfg.grid;
    toml::table gt{{"origin", doubles_to_array({g.origin_y1, g.origin_y2})},
                   {"h", g.h},
                   {"nx", g.nx},
                   {"ny", g.ny}};
    if (g.annulus) gt.insert("annulus", doubles_to_array({g.annulus->first, g.annulus->second}));
    root.insert("grid", std::move(gt));
  }

  {
    const auto& n = cfg.numerics;
    toml::table nt{{"mask_cuts", n.mask_cuts},
                   {"strip_margin", n.strip_margin},
                   {"periodic_y2", n.periodic_y2},
                   {"energy_shift", n.energy_shift}};
    if (n.mask_eps) nt.insert("mask_eps", *n.mask_eps);
    if (n.cut_eps) nt.insert("cut_eps", *n.cut_eps);
    root.insert("numerics", std::move(nt));
  }

  {
    const auto& c = cfg.checks;
    const auto& n = c.normalization;
    toml::table norm{{"method", n.method},
                     {"periodic_y2", n.periodic_y2},
                     {"tail_tolerance", n.tail_tolerance}};
    if (n.y1) norm.insert("y1", doubles_to_array({n.y1->first, n.y1->second}));
    if (n.y2) norm.insert("y2", doubles_to_array({n.y2->first, n.y2->second}));
    if (n.h) norm.insert("h", *n.h);
    toml::table herm{{"lines_y1", doubles_to_array(c.hermiticity.lines_y1)},
                     {"samples", c.hermiticity.samples}};
    if (c.hermiticity.circle_radius) herm.insert("circle_radius", *c.hermiticity.circle_radius);
    toml::table ct{{"run", strings_to_array(c.run)},
                   {"normalization", std::move(norm)},
                   {"hermiticity", std::move(herm)},
                   {"convergence", toml::table{{"h", doubles_to_array(c.convergence.h)}}}};
    root.insert("checks", std::move(ct));
  }

  {
    const auto& t = cfg.tolerances;
    root.insert("tolerances", toml::table{{"metric", t.metric},
                                          {"eigen_residual", t.eigen_residual},
                                          {"normalization", t.normalization},
                                          {"hermiticity", t.hermiticity},
                                          {"symmetry", t.symmetry},
                                          {"convergence_order", t.convergence_order},
                                          {"closed_forms", t.closed_forms}});
  }

  root.insert("outputs", toml::table{{"dir", cfg.outputs.dir},
                                     {"fields", strings_to_array(cfg.outputs.fields)},
                                     {"png", cfg.outputs.png}});

  std::ostringstream out;
  out << root << "\n";
  return out.str();
}

MapFamily build_family(const ParamSet& p) {
  if (p.kind == "log") return MapFamily::log(p.get("alpha"), p.get("gamma"), p.get("delta"));
  if (p.kind == "asinh") return MapFamily::asinh(p.get("A"), p.get("lambda"));
  if (p.kind == "power") return MapFamily::power(p.get("lambda"), p.get("beta"), p.get("alpha"));
  if (p.kind == "exp_radial") return MapFamily::exp_radial(p.get("gamma"), p.get("beta"));
  if (p.kind == "inverse") return MapFamily::inverse(p.get("b"));
  if (p.kind == "quadratic") return MapFamily::quadratic(p.get("a"));
  if (p.kind == "logistic") {
    return MapFamily::logistic(p.get("a"), p.get("b"), p.get("lambda"));
  }
  throw ConfigError("unknown family kind '" + p.kind + "'");
}

OneDimPotential build_potential_1d(const ParamSet& p) {
  if (p.kind == "oscillator") return OneDimPotential::oscillator(p.get("omega"));
  if (p.kind == "morse") return OneDimPotential::morse(p.get("C"), p.get("lambda"));
  if (p.kind == "rosen_morse") {
    return OneDimPotential::rosen_morse_trig(p.get("A"), p.get("B"), p.get("lambda"));
  }
  throw ConfigError("unknown potential kind '" + p.kind + "'");
}

PdmModel build_model(const ModelConfig& cfg) {
  MapFamily family = build_family(cfg.family);
  if (cfg.base_kind == "oscillator") {
    return PdmModel(family, BasePotential::oscillator(cfg.omega1.value(), cfg.omega2.value()));
  }
  if (cfg.base_kind == "separable") {
    return PdmModel(family, BasePotential::separable(build_potential_1d(cfg.v1.value()),
                                                     build_potential_1d(cfg.v2.value())));
  }
  throw ConfigError("unknown base kind '" + cfg.base_kind + "'");
}

BaseState build_base_state(const ModelConfig& cfg) {
  if (cfg.base_kind == "oscillator") {
    return oscillator_state(cfg.omega1.value(), cfg.omega2.value(), cfg.state.n1, cfg.state.n2);
  }
  const auto solve = [](const ParamSet& p, const std::optional<SolverSpec>& s, int k) {
    if (!s) throw ConfigError("separable state needs solver1 and solver2");
    if (!(s->h > 0.0) || s->n < 8) throw ConfigError("solver grid needs h > 0 and n >= 8");
    auto pairs = solve_1d(build_potential_1d(p), Grid1D{s->x0, s->h, s->n}, k + 1);
    return std::move(pairs[k]);
  };
  return separable_state(solve(cfg.v1.value(), cfg.state.solver1, cfg.state.k1),
                         solve(cfg.v2.value(), cfg.state.solver2, cfg.state.k2));
}

TransformedState build_state(const ModelConfig& cfg) {
  return TransformedState(build_model(cfg), build_base_state(cfg));
}

MaskOptions build_mask_options(const ModelConfig& cfg) {
  MaskOptions o;
  o.eps = cfg.numerics.mask_eps;
  o.cut_eps = cfg.numerics.cut_eps;
  o.mask_cuts = cfg.numerics.mask_cuts;
  o.strip_margin = cfg.numerics.strip_margin;
  o.periodic_y2 = cfg.numerics.periodic_y2;
  if (cfg.grid && cfg.grid->annulus) {
    o.annulus = Annulus{cfg.grid->annulus->first, cfg.grid->annulus->second};
  }
  return o;
}

Grid2D build_grid(const ModelConfig& cfg, const PdmModel& model) {
  if (!cfg.grid) throw ConfigError("missing [grid] section");
  const auto& g = *cfg.grid;
  return make_grid(model, YPoint{g.origin_y1, g.origin_y2}, g.h, g.nx, g.ny,
                   build_mask_options(cfg));
}

}  // namespace pdm::cli
