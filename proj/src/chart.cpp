#include "confhor/chart.hpp"

#include <cmath>

namespace confhor {

namespace {
double rnorm(const std::array<double, 3>& x) {
  return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
}
}  // namespace

ConformalFactor ConformalFactor::reciprocal_r() {
  ConformalFactor c;
  c.kind_ = Kind::ReciprocalR;
  c.set_r_domain(1e-12, 1e12);
  return c;
}

ConformalFactor ConformalFactor::reciprocal_r2() {
  ConformalFactor c;
  c.kind_ = Kind::ReciprocalR2;
  c.set_r_domain(1e-12, 1e12);
  return c;
}

ConformalFactor ConformalFactor::gaussian(double theta, double kappa) {
  ConformalFactor c;
  c.kind_ = Kind::Gaussian;
  c.p1_ = theta;
  c.p2_ = kappa;
  c.set_r_domain(1e-12, 1e12);
  return c;
}

ConformalFactor ConformalFactor::rational(double a, double b, double cc) {
  ConformalFactor c;
  c.kind_ = Kind::Rational;
  c.p1_ = a;
  c.p2_ = b;
  c.p3_ = cc;
  c.set_r_domain(1e-12, 1e12);
  return c;
}

ConformalFactor ConformalFactor::radial_custom(std::function<double(double)> omega_r,
                                               std::function<double(double)> domega_dr) {
  ConformalFactor c;
  c.kind_ = Kind::RadialCustom;
  c.fr_ = std::move(omega_r);
  c.dfr_ = std::move(domega_dr);
  c.set_r_domain(1e-12, 1e12);
  return c;
}

ConformalFactor ConformalFactor::general(
    std::function<double(const std::array<double, 3>&)> omega,
    std::function<std::array<double, 3>(const std::array<double, 3>&)> grad) {
  ConformalFactor c;
  c.kind_ = Kind::General;
  c.fgen_ = std::move(omega);
  c.ggen_ = std::move(grad);
  c.omega_max = 1e300;
  return c;
}

double ConformalFactor::omega_r(double r) const {
  switch (kind_) {
    case Kind::ReciprocalR: return 1.0 / r;
    case Kind::ReciprocalR2: return 1.0 / (r * r);
    case Kind::Gaussian: return p1_ * std::exp(-p2_ * r);
    case Kind::Rational: return p1_ / (p2_ + p3_ * r * r);
    case Kind::RadialCustom: return fr_(r);
    case Kind::General: break;
  }
  throw Error(Err::ConfigError, "omega_r on non-radial conformal factor");
}

double ConformalFactor::domega_dr(double r) const {
  switch (kind_) {
    case Kind::ReciprocalR: return -1.0 / (r * r);
    case Kind::ReciprocalR2: return -2.0 / (r * r * r);
    case Kind::Gaussian: return -p2_ * p1_ * std::exp(-p2_ * r);
    case Kind::Rational: return -2.0 * p1_ * p3_ * r / ((p2_ + p3_ * r * r) * (p2_ + p3_ * r * r));
    case Kind::RadialCustom: return dfr_(r);
    case Kind::General: break;
  }
  throw Error(Err::ConfigError, "domega_dr on non-radial conformal factor");
}

double ConformalFactor::omega(const std::array<double, 3>& x) const {
  if (kind_ == Kind::General) return fgen_(x);
  return omega_r(rnorm(x));
}

std::array<double, 3> ConformalFactor::grad(const std::array<double, 3>& x) const {
  if (kind_ == Kind::General) return ggen_(x);
  double r = rnorm(x);
  double d = domega_dr(r);
  return {d * x[0] / r, d * x[1] / r, d * x[2] / r};
}

void ConformalFactor::set_r_domain(double lo, double hi) {
  r_min = lo;
  r_max = hi;
  if (kind_ == Kind::General) return;
  // monotone decreasing families: sup at r_min
  omega_max = omega_r(lo);
  if (kind_ == Kind::Rational && omega_r(hi) > omega_max) omega_max = omega_r(hi);
}

CompactPoint chart_forward(const Pt& x, const ConformalFactor& c) {
  std::array<double, 3> xs{x[1], x[2], x[3]};
  double om = c.omega(xs);
  if (!(om > 0.0) || om > c.omega_max * (1.0 + 1e-12))
    throw Error(Err::OutOfRange, "Omega outside (0, Omega_max]");
  if (x[0] < 0.0) throw Error(Err::OutOfRange, "x^0 < 0 maps to omega^0 > 1");
  CompactPoint w;
  w.w0 = std::exp(-x[0] / om);
  w.w1 = om;
  w.wa = {std::atan(x[2] / om), std::atan(x[3] / om)};
  return w;
}

CompactPoint chart_forward_polar(const Pt& trx, const ConformalFactor& c) {
  double om = c.omega_r(trx[1]);
  if (!(om > 0.0) || om > c.omega_max * (1.0 + 1e-12))
    throw Error(Err::OutOfRange, "Omega outside (0, Omega_max]");
  if (trx[0] < 0.0) throw Error(Err::OutOfRange, "t < 0 maps to omega^0 > 1");
  CompactPoint w;
  w.w0 = std::exp(-trx[0] / om);
  w.w1 = om;
  w.wa = {trx[2], trx[3]};
  return w;
}

namespace {

double radial_r_of_w1(const ConformalFactor& c, double w1) {
  double lo = c.r_min, hi = c.r_max;
  double flo = c.omega_r(lo) - w1, fhi = c.omega_r(hi) - w1;
  if ((flo > 0) == (fhi > 0)) throw Error(Err::NotInvertible, "omega^1 outside radial range");
  return bisect_root([&](double rr) { return c.omega_r(rr) - w1; }, lo, hi, 1e-12);
}

}  // namespace

Pt chart_inverse(const CompactPoint& w, const ChartMap& map) {
  const ConformalFactor& c = map.conformal;
  if (!c.radial()) throw Error(Err::NotInvertible, "inverse needs a radial conformal factor");
  if (!(w.w0 > 0.0 && w.w1 > 0.0)) throw Error(Err::OutOfRange, "boundary point");
  double r = radial_r_of_w1(c, w.w1);
  double x0 = -w.w1 * std::log(w.w0);
  if (map.style == ChartStyle::PolarRadial) return {x0, r, w.wa[0], w.wa[1]};
  double z2 = std::tan(w.wa[0]), z3 = std::tan(w.wa[1]);
  double x2 = z2 * w.w1, x3 = z3 * w.w1;
  double rest = r * r - x2 * x2 - x3 * x3;
  if (rest < 0.0) throw Error(Err::PatchViolation, "r^2 < sum (x^a)^2");
  double x1 = map.spatial_patch * std::sqrt(rest);
  return {x0, x1, x2, x3};
}

DeltaStar delta_star(const std::array<double, 3>& x, const ConformalFactor& c) {
  double om = c.omega(x);
  if (!(om > 0.0)) throw Error(Err::OutOfRange, "Omega <= 0");
  auto g = c.grad(x);
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += (x[static_cast<size_t>(i)] / om) * g[static_cast<size_t>(i)];
  DeltaStar d;
  d.value = 1.0 - s;
  d.coordinate_singular = std::abs(d.value) < 1e-10;
  return d;
}

std::array<std::array<double, 4>, 4> jacobian_b(const CompactPoint& w, const ChartMap& map) {
  double u = std::log(w.w0);
  double w1 = w.w1;
  if (map.style == ChartStyle::PolarRadial) {
    double r = radial_r_of_w1(map.conformal, w1);
    double hp = map.conformal.domega_dr(r);
    std::array<std::array<double, 4>, 4> J{};
    J[0][0] = -w1;        // dt = -w1 (b0 + u b1)
    J[0][1] = -w1 * u;
    J[1][1] = w1 / hp;    // dr = dw1 / h'(r)
    J[2][2] = 1.0;
    J[3][3] = 1.0;
    return J;
  }
  Pt x = chart_inverse(w, map);
  std::array<double, 3> xs{x[1], x[2], x[3]};
  auto W = map.conformal.grad(xs);
  std::array<double, 3> z{xs[0] / w1, xs[1] / w1, xs[2] / w1};
  double dstar = 1.0 - (z[0] * W[0] + z[1] * W[1] + z[2] * W[2]);
  double z2 = z[1], z3 = z[2];
  if (W[0] == 0.0) throw Error(Err::PatchViolation, "dOmega/dx^1 vanishes on this patch");

  std::array<std::array<double, 4>, 4> J{};  // J[alpha][c]
  J[0][0] = -w1;
  J[0][1] = -w1 * u;
  J[1][1] = (w1 / W[0]) * (dstar + z[0] * W[0]);
  J[1][2] = -(w1 / W[0]) * W[1] * (1.0 + z2 * z2);
  J[1][3] = -(w1 / W[0]) * W[2] * (1.0 + z3 * z3);
  J[2][1] = xs[1];
  J[2][2] = w1 * (1.0 + z2 * z2);
  J[3][1] = xs[2];
  J[3][3] = w1 * (1.0 + z3 * z3);
  return J;
}

SymMatrix pullback_metric(const XMetric& g, const CompactPoint& w, const ChartMap& map,
                          bool b_basis) {
  Pt x = chart_inverse(w, map);
  SymMatrix gx = g(x);
  auto J = jacobian_b(w, map);
  SymMatrix h(4);
  for (int c = 0; c < 4; ++c) {
    for (int d = 0; d <= c; ++d) {
      double s = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          s += J[static_cast<size_t>(a)][static_cast<size_t>(c)] *
               J[static_cast<size_t>(b)][static_cast<size_t>(d)] * gx(a, b);
      h(c, d) = w.w1 * w.w1 * s;
    }
  }
  if (b_basis) return h;
  // rescale b-basis components to the coordinate basis (dw0, dw1, dw2, dw3)
  std::array<double, 4> sc{1.0 / w.w0, 1.0 / w.w1, 1.0, 1.0};
  SymMatrix hc(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j <= i; ++j)
      hc(i, j) = h(i, j) * sc[static_cast<size_t>(i)] * sc[static_cast<size_t>(j)];
  return hc;
}

std::array<double, 4> transform_covector(const std::array<double, 4>& xi,
                                         const CompactPoint& w, const ChartMap& map) {
  auto J = jacobian_b(w, map);
  std::array<double, 4> eta{};
  for (int c = 0; c < 4; ++c) {
    double s = 0.0;
    for (int a = 0; a < 4; ++a) s += xi[static_cast<size_t>(a)] * J[static_cast<size_t>(a)][static_cast<size_t>(c)];
    eta[static_cast<size_t>(c)] = s;
  }
  return eta;
}

}  // namespace confhor
