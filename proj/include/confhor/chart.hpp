#pragma once

#include <array>
#include <functional>
#include <memory>

#include "confhor/field.hpp"
#include "confhor/symmat.hpp"

namespace confhor {

// Conformal factor Omega(x^i): positive, bounded, -> 0 at spatial infinity,
// with a nowhere-zero gradient. Radial kinds expose Omega(r) for inversion.
class ConformalFactor {
 public:
  enum class Kind { ReciprocalR, ReciprocalR2, Gaussian, Rational, RadialCustom, General };

  static ConformalFactor reciprocal_r();
  static ConformalFactor reciprocal_r2();
  static ConformalFactor gaussian(double theta, double kappa);
  static ConformalFactor rational(double a, double b, double c);
  static ConformalFactor radial_custom(std::function<double(double)> omega_r,
                                       std::function<double(double)> domega_dr);
  static ConformalFactor general(std::function<double(const std::array<double, 3>&)> omega,
                                 std::function<std::array<double, 3>(const std::array<double, 3>&)> grad);

  Kind kind() const { return kind_; }
  bool radial() const { return kind_ != Kind::General; }

  double omega(const std::array<double, 3>& x) const;
  std::array<double, 3> grad(const std::array<double, 3>& x) const;

  double omega_r(double r) const;     // radial kinds only
  double domega_dr(double r) const;   // radial kinds only

  double omega_max = 0.0;   // sup over the working r-domain
  double r_min = 1e-12;     // working radial domain
  double r_max = 1e12;

  void set_r_domain(double lo, double hi);  // recomputes omega_max for radial kinds

 private:
  Kind kind_ = Kind::ReciprocalR;
  double p1_ = 0, p2_ = 0, p3_ = 0;
  std::function<double(double)> fr_, dfr_;
  std::function<double(const std::array<double, 3>&)> fgen_;
  std::function<std::array<double, 3>(const std::array<double, 3>&)> ggen_;
};

// Point in the manifold-with-corners chart. Interior ranges are strict;
// deep evaluation works in u = ln(omega0) so omega0 may underflow to 0 there.
struct CompactPoint {
  double w0 = 1.0;             // omega^0 in (0, 1]
  double w1 = 0.0;             // omega^1 in (0, Omega_max]
  std::array<double, 2> wa{0.0, 0.0};  // omega^a in (-pi/2, pi/2)

  Pt as_pt() const { return {w0, w1, wa[0], wa[1]}; }
};

// Cartesian: x = (x^0, x^1, x^2, x^3), omega^a = arctan(x^a/Omega).
// PolarRadial: x = (t, r, theta, phi), omega^1 = Omega(r), angles pass through
// (the chart the worked solutions use).
enum class ChartStyle { Cartesian, PolarRadial };

struct ChartMap {
  ConformalFactor conformal;
  int spatial_patch = +1;  // sign of x^1 on the selected patch (Cartesian only)
  ChartStyle style = ChartStyle::Cartesian;
};

// Compactification map: omega = (exp(-x0/Omega), Omega, arctan(x^a/Omega)).
CompactPoint chart_forward(const Pt& x, const ConformalFactor& c);

// PolarRadial variant of the map.
CompactPoint chart_forward_polar(const Pt& trx, const ConformalFactor& c);

// Radial inversion of chart_forward on the given patch.
Pt chart_inverse(const CompactPoint& w, const ChartMap& map);

// Dimensionless Jacobian factor: Delta* = 1 - sum_i z^i dOmega/dx^i.
// coordinate_singular reports |Delta*| < 1e-10.
struct DeltaStar {
  double value = 0.0;
  bool coordinate_singular = false;
};
DeltaStar delta_star(const std::array<double, 3>& x, const ConformalFactor& c);

// x-chart metric as a point evaluator (coordinate basis dx^alpha).
using XMetric = std::function<SymMatrix(const Pt&)>;

// Jacobian dx^alpha per b-basis covector (dw0/w0, dw1/w1, dw2, dw3),
// assembled from the closed-form dx expansions of the chart map.
// Entry (alpha, c): coefficient of basis covector c in dx^alpha.
std::array<std::array<double, 4>, 4> jacobian_b(const CompactPoint& w, const ChartMap& map);

// h = (w1)^2 g pulled back to the compact chart. b_basis selects components
// in (dw0/w0, dw1/w1, dw2, dw3); otherwise the coordinate basis (dw0, dw1, ...).
SymMatrix pullback_metric(const XMetric& g, const CompactPoint& w, const ChartMap& map,
                          bool b_basis = false);

// Covector transport dx-components -> b-basis components (eta_0, eta_1, eta_a).
std::array<double, 4> transform_covector(const std::array<double, 4>& xi,
                                         const CompactPoint& w, const ChartMap& map);

}  // namespace confhor
