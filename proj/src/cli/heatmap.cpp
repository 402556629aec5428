#include "pdm/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <png.h>

#include <json.hpp>

#include "pdm/errors.hpp"

namespace pdm::cli {

namespace {

struct Rgb {
  double r, g, b;
};

// Anchors of a perceptually ordered sequential map and a blue-white-red map.
constexpr Rgb kSequential[] = {
    {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
constexpr Rgb kDiverging[] = {{33, 102, 172}, {146, 197, 222}, {247, 247, 247},
                              {244, 165, 130}, {178, 24, 43}};

std::uint8_t clamp_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

void png_append(png_structp png, png_bytep data, png_size_t len) {
  auto* out = static_cast<std::string*>(png_get_io_ptr(png));
  out->append(reinterpret_cast<const char*>(data), len);
}

void png_flush_noop(png_structp) {}

}  // namespace

std::array<std::uint8_t, 3> palette_color(double t, bool diverging) {
  const Rgb* anchors = diverging ? kDiverging : kSequential;
  if (!std::isfinite(t)) return kMaskColor;
  t = std::clamp(t, 0.0, 1.0);
  const double s = t * 4.0;
  const int k = std::min(3, static_cast<int>(s));
  const double u = s - k;
  const Rgb& a = anchors[k];
  const Rgb& b = anchors[k + 1];
  return {clamp_byte(a.r + u * (b.r - a.r)), clamp_byte(a.g + u * (b.g - a.g)),
          clamp_byte(a.b + u * (b.b - a.b))};
}

std::string HeatmapMeta::to_json() const {
  const auto num = [](double v) -> nlohmann::json {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  };
  nlohmann::json j = {
      {"title", title},
      {"vmin", num(vmin)},
      {"vmax", num(vmax)},
      {"palette", symmetric ? "diverging" : "sequential"},
      {"scale", "linear"},
      {"y1_range", {lower.y1, upper.y1}},
      {"y2_range", {lower.y2, upper.y2}},
      {"width", width},
      {"height", height},
      {"masked_cells", masked},
      {"mask_color", {kMaskColor[0], kMaskColor[1], kMaskColor[2]}},
      {"orientation", "row 0 is the largest y2, column 0 the smallest y1"}};
  return j.dump(2) + "\n";
}

std::vector<std::uint8_t> render_heatmap(const Field2D& field, const HeatmapOptions& opts,
                                         HeatmapMeta& meta) {
  const Grid2D& g = field.grid();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  int masked = 0;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const double v = field(i, j);
      if (g.masked(i, j) || !std::isfinite(v)) {
        ++masked;
        continue;
      }
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (opts.symmetric) {
    const double m = std::max(std::abs(lo), std::abs(hi));
    lo = -m;
    hi = m;
  }
  if (opts.vmin) lo = *opts.vmin;
  if (opts.vmax) hi = *opts.vmax;
  const double span = hi - lo;

  meta.title = opts.title;
  meta.vmin = lo;
  meta.vmax = hi;
  meta.symmetric = opts.symmetric;
  meta.lower = g.at(0, 0);
  meta.upper = g.at(g.nx() - 1, g.ny() - 1);
  meta.width = g.nx();
  meta.height = g.ny();
  meta.masked = masked;

  std::vector<std::uint8_t> rgb(static_cast<std::size_t>(g.nx()) * g.ny() * 3);
  for (int row = 0; row < g.ny(); ++row) {
    const int j = g.ny() - 1 - row;
    for (int i = 0; i < g.nx(); ++i) {
      const double v = field(i, j);
      std::array<std::uint8_t, 3> c = kMaskColor;
      if (!g.masked(i, j) && std::isfinite(v)) {
        const double t = span > 0.0 ? (v - lo) / span : 0.5;
        c = palette_color(t, opts.symmetric);
      }
      const std::size_t p = (static_cast<std::size_t>(row) * g.nx() + i) * 3;
      rgb[p] = c[0];
      rgb[p + 1] = c[1];
      rgb[p + 2] = c[2];
    }
  }
  return rgb;
}

std::string encode_png(const std::vector<std::uint8_t>& rgb, int width, int height) {
  if (width <= 0 || height <= 0 ||
      rgb.size() != static_cast<std::size_t>(width) * height * 3) {
    throw Error("encode_png: image size mismatch");
  }
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error("png_create_info_struct failed");
  }
  std::string out;
  std::vector<png_bytep> rows(height);
  for (int r = 0; r < height; ++r) {
    rows[r] = const_cast<png_bytep>(rgb.data() + static_cast<std::size_t>(r) * width * 3);
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("PNG encoding failed");
  }
  png_set_write_fn(png, &out, png_append, png_flush_noop);
  png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

HeatmapMeta write_heatmap(const Field2D& field, const std::string& path,
                          const HeatmapOptions& opts) {
  HeatmapMeta meta;
  const auto rgb = render_heatmap(field, opts, meta);
  write_file_atomic(path, encode_png(rgb, meta.width, meta.height));
  write_file_atomic(path + ".json", meta.to_json());
  return meta;
}

}  // namespace pdm::cli
