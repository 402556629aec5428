#include "pdm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <fstream>
#include <numbers>
#include <sstream>

#include "pdm/errors.hpp"
#include "pdm/pdm_model.hpp"

namespace pdm {

Grid2D::Grid2D(YPoint origin, double h, int nx, int ny)
    : origin_(origin), h_(h), nx_(nx), ny_(ny) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("grid spacing must be positive");
  if (nx < 8 || ny < 8) throw ConfigError("grid needs nx, ny >= 8");
  if (!std::isfinite(origin.y1) || !std::isfinite(origin.y2))
    throw ConfigError("grid origin must be finite");
  mask_.assign(static_cast<std::size_t>(nx) * ny, 0);
}

bool Grid2D::valid(int i, int j) const noexcept {
  if (i <= 0 || i >= nx_ - 1) return false;
  if (!periodic_y2_ && (j <= 0 || j >= ny_ - 1)) return false;
  const int jn = j + 1 == ny_ ? 0 : j + 1;
  const int js = j == 0 ? ny_ - 1 : j - 1;
  return !masked(i, j) && !masked(i - 1, j) && !masked(i + 1, j) && !masked(i, jn) &&
         !masked(i, js);
}

int Grid2D::count_valid() const noexcept {
  int c = 0;
  for (int j = 0; j < ny_; ++j)
    for (int i = 0; i < nx_; ++i) c += valid(i, j) ? 1 : 0;
  return c;
}

int Grid2D::count_masked() const noexcept {
  int c = 0;
  for (auto m : mask_) c += m ? 1 : 0;
  return c;
}

std::string Grid2D::describe() const {
  std::ostringstream os;
  os.precision(12);
  os << "origin=(" << origin_.y1 << ", " << origin_.y2 << ") h=" << h_ << " nx=" << nx_
     << " ny=" << ny_ << " masked=" << count_masked() << (periodic_y2_ ? " periodic_y2" : "");
  return os.str();
}

double default_mask_eps(double h) { return std::max(3.0 * h, 1e-3); }
double default_cut_eps(double h) { return std::max(0.1, h); }

Grid2D make_grid(const PdmModel& model, YPoint origin, double h, int nx, int ny,
                 const MaskOptions& opts) {
  Grid2D g(origin, h, nx, ny);
  const DomainSpec& dom = model.domain;
  if (opts.periodic_y2 && dom.y2_period &&
      std::abs(ny * h - *dom.y2_period) <= 1e-9 * *dom.y2_period)
    g.set_periodic_y2(true);
  const double eps = opts.eps.value_or(default_mask_eps(h));
  const double cut_eps = opts.cut_eps.value_or(default_cut_eps(h));
  const RosenMorseTrig* rm = nullptr;
  if (const auto* sep = model.base.get<Separable>()) rm = sep->v2.get<RosenMorseTrig>();

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const YPoint y = g.at(i, j);
      bool m = !dom.contains(y) || dom.distance_to_excluded(y) < eps;
      if (!m && opts.mask_cuts && dom.distance_to_cut(y) < cut_eps) m = true;
      if (!m && opts.annulus) {
        const double r = std::hypot(y.y1, y.y2);
        m = r < opts.annulus->r_min || r > opts.annulus->r_max;
      }
      if (!m) {
        try {
          const PullBack pb = pull_back(model.family, y);
          if (rm) {
            const double t = rm->lambda * pb.x.x2;
            if (!(t > opts.strip_margin && t < std::numbers::pi - opts.strip_margin)) m = true;
          }
          if (!m) {
            const double u = potential_U(model, y);
            if (!std::isfinite(u) || !std::isfinite(pb.mass)) m = true;
          }
        } catch (const Error&) {
          m = true;
        }
      }
      if (!m && opts.extra && opts.extra(y)) m = true;
      g.set_masked(i, j, m);
    }
  }
  if (g.count_valid() < 16) throw ConfigError("grid has fewer than 16 valid interior cells");
  return g;
}

Grid2D make_grid_box(const PdmModel& model, double y1_lo, double y1_hi, double y2_lo,
                     double y2_hi, double h, const MaskOptions& opts) {
  if (!(y1_hi > y1_lo) || !(y2_hi > y2_lo)) throw ConfigError("grid box is empty");
  const int nx = static_cast<int>(std::lround((y1_hi - y1_lo) / h)) + 1;
  const int ny = static_cast<int>(std::lround((y2_hi - y2_lo) / h)) + 1;
  return make_grid(model, {y1_lo, y2_lo}, h, nx, ny, opts);
}

Field2D::Field2D(std::shared_ptr<const Grid2D> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw ConfigError("field needs a grid");
  if (values_.size() != grid_->size()) throw ConfigError("field size does not match its grid");
}

Field2D::Field2D(std::shared_ptr<const Grid2D> grid, double fill)
    : grid_(std::move(grid)) {
  if (!grid_) throw ConfigError("field needs a grid");
  values_.assign(grid_->size(), fill);
}

Field2D Field2D::sample(std::shared_ptr<const Grid2D> grid,
                        const std::function<double(YPoint)>& fn, double fallback) {
  Field2D f(grid, fallback);
  const Grid2D& g = *grid;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (g.masked(i, j)) continue;
      try {
        f(i, j) = fn(g.at(i, j));
      } catch (const Error&) {
        f(i, j) = fallback;
      }
    }
  }
  return f;
}

std::string field_to_csv(const Field2D& field) {
  const Grid2D& g = field.grid();
  std::string out = "y1,y2,value\n";
  out.reserve(out.size() + g.size() * 64);
  char buf[128];
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const YPoint y = g.at(i, j);
      if (g.masked(i, j))
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,nan\n", y.y1, y.y2);
      else
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", y.y1, y.y2, field(i, j));
      out += buf;
    }
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open " + tmp.string() + " for writing");
    os << contents;
    os.flush();
    if (!os) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

void write_csv(const Field2D& field, const std::string& path) {
  write_file_atomic(path, field_to_csv(field));
}

Field2D read_csv(const std::string& path, std::shared_ptr<const Grid2D> grid) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path);
  std::string line;
  if (!std::getline(is, line) || line != "y1,y2,value")
    throw Error(path + ": expected header y1,y2,value");
  Field2D f(grid, 0.0);
  std::size_t k = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (k >= f.values().size()) throw Error(path + ": more rows than grid nodes");
    const auto c2 = line.rfind(',');
    if (c2 == std::string::npos) throw Error(path + ": malformed row");
    f.values()[k++] = std::strtod(line.c_str() + c2 + 1, nullptr);
  }
  if (k != f.values().size()) throw Error(path + ": fewer rows than grid nodes");
  return f;
}

std::vector<double> transect(const Field2D& field, YPoint a, YPoint b, int n) {
  if (n < 2) throw ConfigError("transect needs at least two samples");
  const Grid2D& g = field.grid();
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / (n - 1);
    const double u = (a.y1 + t * (b.y1 - a.y1) - g.origin().y1) / g.h();
    const double v = (a.y2 + t * (b.y2 - a.y2) - g.origin().y2) / g.h();
    int i = static_cast<int>(std::floor(u));
    int j = static_cast<int>(std::floor(v));
    // Points on the last row/column use the cell below/left of them.
    if (i == g.nx() - 1 && u <= i + 1e-9) --i;
    if (j == g.ny() - 1 && v <= j + 1e-9) --j;
    if (i < 0 || j < 0 || i + 1 >= g.nx() || j + 1 >= g.ny()) {
      out[k] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const double fu = u - i;
    const double fv = v - j;
    double acc = 0.0;
    bool ok = true;
    for (int dj = 0; dj < 2 && ok; ++dj) {
      for (int di = 0; di < 2; ++di) {
        const double w = (di ? fu : 1.0 - fu) * (dj ? fv : 1.0 - fv);
        const double f = field(i + di, j + dj);
        if (w == 0.0) continue;
        if (g.masked(i + di, j + dj) || !std::isfinite(f)) {
          ok = false;
          break;
        }
        acc += w * f;
      }
    }
    out[k] = ok ? acc : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

int count_sign_changes(const std::vector<double>& values, double floor) {
  int changes = 0;
  int last = 0;
  for (double v : values) {
    if (!std::isfinite(v) || std::abs(v) <= floor) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace pdm
