#pragma once
// Catalog of holomorphic maps f(z) that generate the point transformation
//
//   y1 = f(z) + f*(z*),   y2 = i (f(z) - f*(z*)),   z = x1 + i x2,
//
// so that y1 - i y2 = 2 f(z). Every family carries its hand-derived f', f''
// and a closed-form inverse x(y) on the principal sheet.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pdm/jet.hpp"

namespace pdm {

/// Point of the original (constant-mass) plane.
struct XPoint {
  double x1 = 0.0;
  double x2 = 0.0;
  friend bool operator==(const XPoint&, const XPoint&) = default;
};

/// Point of the transformed (position-dependent-mass) plane.
struct YPoint {
  double y1 = 0.0;
  double y2 = 0.0;
  friend bool operator==(const YPoint&, const YPoint&) = default;
};

inline Complex to_complex(XPoint p) { return {p.x1, p.x2}; }
inline XPoint to_xpoint(Complex z) { return {z.real(), z.imag()}; }
/// 2 f = y1 - i y2.
inline Complex map_value(YPoint p) { return {0.5 * p.y1, -0.5 * p.y2}; }

/// f = (1/alpha) ln(alpha z / (2 gamma) + delta). Mass depends on y1 only.
struct LogMap {
  double alpha;
  double gamma;
  double delta;
  friend bool operator==(const LogMap&, const LogMap&) = default;
};

/// f = (1/lambda) asinh(lambda z / (2 A)). Mass is a sum M1(y1) + M2(y2).
struct AsinhMap {
  double amplitude;  // A
  double lambda;
  friend bool operator==(const AsinhMap&, const AsinhMap&) = default;
};

/// f = ((lambda+1)/beta z + (lambda+1) alpha)^(1/(lambda+1)), lambda != -1.
/// Rotationally invariant mass M ~ rho^(2 lambda).
struct PowerMap {
  double lambda;
  double beta;
  double alpha_shift;
  friend bool operator==(const PowerMap&, const PowerMap&) = default;
};

/// f = gamma exp(z / beta): the lambda = -1 branch of the radial family.
struct ExpRadialMap {
  double gamma;
  double beta;
  friend bool operator==(const ExpRadialMap&, const ExpRadialMap&) = default;
};

/// f = b / z.
struct InverseMap {
  double b;
  friend bool operator==(const InverseMap&, const InverseMap&) = default;
};

/// f = a z^2.
struct QuadraticMap {
  double a;
  friend bool operator==(const QuadraticMap&, const QuadraticMap&) = default;
};

/// f = 1 / (a exp(-lambda z) + b), lambda > 0.
struct LogisticMap {
  double a;
  double b;
  double lambda;
  friend bool operator==(const LogisticMap&, const LogisticMap&) = default;
};

class MapFamily {
 public:
  using Params = std::variant<LogMap, AsinhMap, PowerMap, ExpRadialMap, InverseMap,
                              QuadraticMap, LogisticMap>;

  // Factories validate parameters and throw ConfigError.
  static MapFamily log(double alpha, double gamma, double delta = 0.0);
  static MapFamily asinh(double amplitude, double lambda);
  static MapFamily power(double lambda, double beta, double alpha_shift = 0.0);
  static MapFamily exp_radial(double gamma, double beta);
  static MapFamily inverse(double b);
  static MapFamily quadratic(double a);
  static MapFamily logistic(double a, double b, double lambda);

  const Params& params() const noexcept { return params_; }
  template <class T>
  const T* get() const noexcept {
    return std::get_if<T>(&params_);
  }

  /// Catalog name: log, asinh, power, exp_radial, inverse, quadratic, logistic.
  std::string_view name() const noexcept;
  /// Name and parameter values, e.g. "log(alpha=1, gamma=1, delta=0)".
  std::string describe() const;

  friend bool operator==(const MapFamily&, const MapFamily&) = default;

 private:
  explicit MapFamily(Params p) : params_(p) {}
  Params params_;
};

/// Every catalog name, in declaration order.
const std::vector<std::string_view>& family_catalog();

enum class RegionKind { FullPlane, Strip, PuncturedPlane, HalfPlaneImage };

std::string_view to_string(RegionKind k);

/// Segment [lo, hi] of the y1 axis (y2 = 0) across which the principal
/// inverse x(y) jumps between sheets. lo/hi may be infinite.
struct AxisCut {
  double lo;
  double hi;
};

struct DomainSpec {
  RegionKind kind = RegionKind::FullPlane;
  std::string description;
  /// Strips: |y2| <= y2_half_width.
  std::optional<double> y2_half_width;
  /// Set when the strip edges are glued (the y2 direction is periodic).
  std::optional<double> y2_period;
  /// HalfPlaneImage: |arg(y1 - i y2)| <= sector_half_angle.
  std::optional<double> sector_half_angle;
  /// Points where M or U is singular.
  std::vector<YPoint> excluded;
  std::vector<AxisCut> cuts;

  /// Inside the image region. Excluded points and cuts are not tested here.
  bool contains(YPoint y) const;
  double distance_to_excluded(YPoint y) const;
  double distance_to_cut(YPoint y) const;
};

/// f, f', f'' at one point.
struct MapJet {
  Complex f;
  Complex fp;
  Complex fpp;
};

Complex f_of_z(const MapFamily& family, Complex z);
/// Analytic derivatives; MapJet::f is filled as well.
MapJet f_derivs(const MapFamily& family, Complex z);
YPoint y_of_x(const MapFamily& family, XPoint x);
/// Principal-sheet inverse. Throws SingularityError at excluded points and
/// DomainError outside the image region.
XPoint x_of_y(const MapFamily& family, YPoint y);
DomainSpec domain_of(const MapFamily& family);
/// Same test as domain_of(family).contains(y) without building the descriptor.
bool in_image_region(const MapFamily& family, YPoint y);

/// True when x_of_y(y_of_x(x)) recovers x, i.e. x lies on the sheet the
/// principal inverse returns to.
bool in_principal_sheet(const MapFamily& family, XPoint x);

/// Number of x-plane sheets that map onto the y-plane image for a state whose
/// density is symmetric under x -> -x. The y-plane only sees 1/sheets of such
/// a state's probability, so transformed states are rescaled by sqrt(sheets).
int sheet_count(const MapFamily& family);

/// Jacobian dy_k/dx_i assembled from f': row k, column i.
struct Jacobian {
  double d1y1, d2y1, d1y2, d2y2;
};
Jacobian jacobian_from_derivative(Complex fp);

}  // namespace pdm
