#include "confhor/catalog.hpp"

#include <cmath>

namespace confhor {

double det3(const M3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

M3 inv3(const M3& m) {
  double d = det3(m);
  M3 r;
  r[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / d;
  r[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / d;
  r[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / d;
  r[1][0] = r[0][1];
  r[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / d;
  r[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / d;
  r[2][0] = r[0][2];
  r[2][1] = r[1][2];
  r[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / d;
  return r;
}

double kerr_rplus(double M, double a) { return M + std::sqrt(M * M - a * a); }

double kerr_ergosphere_radius(double M, double a, double theta) {
  double c = std::cos(theta);
  return M + std::sqrt(M * M - a * a * c * c);
}

// ---------------------------------------------------------------------------
// Radial compactifiers
// ---------------------------------------------------------------------------

RadialCompactifier rc_arctan_inv_r(double r_lo, double r_hi) {
  RadialCompactifier rc;
  rc.name = "arctan-inv-r";
  rc.h = [](double r) { return std::atan(1.0 / r); };
  rc.hp = [](double r) { return -1.0 / (1.0 + r * r); };
  rc.hpp = [](double r) { double q = 1.0 + r * r; return 2.0 * r / (q * q); };
  rc.r_of_w1 = [](double w1) { return 1.0 / std::tan(w1); };
  rc.r_lo = r_lo;
  rc.r_hi = r_hi;
  rc.omega_max = std::atan(1.0 / r_lo);
  return rc;
}

RadialCompactifier rc_exp(double theta, double kappa, double r_lo, double r_hi) {
  RadialCompactifier rc;
  rc.name = "exp";
  rc.h = [theta, kappa](double r) { return theta * std::exp(-kappa * r); };
  rc.hp = [theta, kappa](double r) { return -kappa * theta * std::exp(-kappa * r); };
  rc.hpp = [theta, kappa](double r) { return kappa * kappa * theta * std::exp(-kappa * r); };
  rc.r_of_w1 = [theta, kappa](double w1) { return std::log(theta / w1) / kappa; };
  rc.r_lo = r_lo;
  rc.r_hi = r_hi;
  rc.omega_max = theta * std::exp(-kappa * r_lo);
  return rc;
}

// h(r) = arctan exp(1/F(r)) - arctan e, log-stable near F -> 0.
RadialCompactifier rc_rn_arctan_exp(double M, double Q, double r_lo, double r_hi) {
  auto F = [M, Q](double r) { return 1.0 - 2.0 * M / r + Q * Q / (r * r); };
  auto Fp = [M, Q](double r) { return 2.0 * M / (r * r) - 2.0 * Q * Q / (r * r * r); };
  auto Fpp = [M, Q](double r) { return -4.0 * M / (r * r * r) + 6.0 * Q * Q / (r * r * r * r); };
  RadialCompactifier rc;
  rc.name = "arctan-exp-invF";
  rc.h = [F](double r) {
    double f = F(r);
    // arctan(e^{1/f}) = pi/2 - arctan(e^{-1/f})
    if (1.0 / f > 30.0) return M_PI / 2.0 - std::atan(std::exp(-1.0 / f)) - std::atan(M_E);
    return std::atan(std::exp(1.0 / f)) - std::atan(M_E);
  };
  // h' = -F' / (2 F^2 cosh(1/F)); 1/cosh(1/F) = 2 e^{-1/F} / (1 + e^{-2/F})
  auto sech = [](double y) {  // 1/cosh(y), y > 0, underflow-safe
    double e = std::exp(-y);
    return 2.0 * e / (1.0 + e * e);
  };
  rc.hp = [F, Fp, sech](double r) {
    double f = F(r);
    return -Fp(r) * sech(1.0 / f) / (2.0 * f * f);
  };
  rc.hpp = [F, Fp, Fpp, sech](double r) {
    double f = F(r), fp = Fp(r);
    double th = std::tanh(1.0 / f);
    return -Fpp(r) * sech(1.0 / f) / (2.0 * f * f) +
           fp * fp * sech(1.0 / f) * (2.0 * f - th) / (2.0 * f * f * f * f);
  };
  rc.r_of_w1 = [M, Q](double w1) {
    // tan(w1 + arctan e) = cot(delta) with delta the gap to the F -> 0 edge;
    // log-stable: 1/F = -ln tan(delta), then the exterior quadratic branch
    double delta = (M_PI / 2.0 - std::atan(M_E)) - w1;
    if (delta <= 0.0) delta = 1e-300;
    double f = -1.0 / std::log(std::tan(delta));
    double disc = std::max(M * M - Q * Q * (1.0 - f), 0.0);
    double x = (M - std::sqrt(disc)) / (Q * Q);
    return 1.0 / x;
  };
  rc.r_lo = r_lo;
  rc.r_hi = r_hi;
  rc.omega_max = M_PI / 2.0 - std::atan(M_E);
  return rc;
}

RadialCompactifier rc_schwarzschild_chart(double M) {
  auto F = [M](double r) { return 1.0 - 2.0 * M / r; };
  auto Lp = [M, F](double r) { return (2.0 * M / (r * r)) / F(r); };
  RadialCompactifier rc;
  rc.name = "schwarzschild-chart";
  rc.h = [F](double r) { return -std::atan(std::log(F(r))); };
  rc.hp = [M, F, Lp](double r) {
    double L = std::log(F(r));
    return -Lp(r) / (1.0 + L * L);
  };
  rc.hpp = [M, F, Lp](double r) {
    double L = std::log(F(r));
    double lp = Lp(r);
    double lpp = -4.0 * M / (r * r * r * F(r)) - 4.0 * M * M / (std::pow(r, 4) * F(r) * F(r));
    double q = 1.0 + L * L;
    return (-lpp * q + 2.0 * L * lp * lp) / (q * q);
  };
  rc.r_of_w1 = [M](double w1) { return 2.0 * M / (1.0 - std::exp(-std::tan(w1))); };
  rc.r_lo = 2.0 * M;
  rc.r_hi = 1e15;
  rc.omega_max = M_PI / 2.0;
  return rc;
}

// ---------------------------------------------------------------------------
// Polar-chart metric assembly
// ---------------------------------------------------------------------------

namespace {

template <class T>
struct PolarComps {
  T tt{0}, tr{0}, rr{0}, thth{0}, phph{0}, tph{0};
};

// b-basis components of g from the polar-chart expansions
//   dt = -w1 (b0 + u b1),  dr = (w1/h') b1,  dtheta = dw2,  dphi = dw3.
template <class T>
SymMatrixT<T> assemble_polar(const PolarComps<T>& c, const T& u, const T& w1, const T& hp) {
  T w1h = w1 / hp;
  SymMatrixT<T> g(4);
  g(0, 0) = c.tt * w1 * w1;
  g(1, 0) = c.tt * w1 * w1 * u - c.tr * w1 * w1h;
  g(1, 1) = c.tt * w1 * w1 * u * u - T(2) * c.tr * w1 * u * w1h + c.rr * w1h * w1h;
  g(3, 0) = -c.tph * w1;
  g(3, 1) = -c.tph * w1 * u;
  g(2, 2) = c.thth;
  g(3, 3) = c.phph;
  return g;
}

// OmegaMetric for radial catalog entries described by polar components.
class PolarMetric : public OmegaMetric {
 public:
  using CompsD = std::function<PolarComps<double>(double u, double w1, double r, double th)>;
  using CompsDl = std::function<PolarComps<Dual>(Dual u, Dual w1, Dual r, Dual th)>;

  PolarMetric(RadialCompactifier rc, CompsD cd, CompsDl cl, Box dom,
              std::function<bool(const UPt&)> valid = {})
      : rc_(std::move(rc)), cd_(std::move(cd)), cl_(std::move(cl)), dom_(dom),
        valid_(std::move(valid)) {}

  SymMatrix g_b(const UPt& p) const override {
    double r = rc_.r_of_w1(p.w1);
    auto c = cd_(p.u, p.w1, r, p.ang[0]);
    return assemble_polar(c, p.u, p.w1, rc_.hp(r));
  }

  SymMatrixD g_b_dual(const UPt& p, int axis) const override {
    double r = rc_.r_of_w1(p.w1);
    double hp = rc_.hp(r);
    Dual u(p.u, axis == 0 ? 1.0 : 0.0);
    Dual w1(p.w1, axis == 1 ? 1.0 : 0.0);
    Dual rd(r, axis == 1 ? 1.0 / hp : 0.0);
    Dual hpd(hp, axis == 1 ? rc_.hpp(r) / hp : 0.0);
    Dual th(p.ang[0], axis == 2 ? 1.0 : 0.0);
    auto c = cl_(u, w1, rd, th);
    return assemble_polar(c, u, w1, hpd);
  }

  Box domain() const override { return dom_; }
  bool chart_valid(const UPt& p) const override { return valid_ ? valid_(p) : true; }

  const RadialCompactifier& compactifier() const { return rc_; }

 private:
  RadialCompactifier rc_;
  CompsD cd_;
  CompsDl cl_;
  Box dom_;
  std::function<bool(const UPt&)> valid_;
};

Box radial_box(const RadialCompactifier& rc, double u_lo = -1e15, double u_hi = 0.8) {
  Box b;
  b.dim = 4;
  b.lo = {u_lo, rc.h(rc.r_hi * (1.0 - 1e-12)), 1e-8, -1e8};
  b.hi = {u_hi, rc.omega_max, M_PI - 1e-8, 1e8};
  return b;
}

// Default generic mass pipeline: m = [(w1^2 g_b)^{-1}]^{00}.
void attach_generic_mass(CatalogEntry& e) {
  auto metric = e.metric;
  e.mass = [metric](const UPt& p) {
    SymMatrix gb = metric->g_b(p);
    SymMatrix hb(4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j <= i; ++j) hb(i, j) = p.w1 * p.w1 * gb(i, j);
    return invert_symmetric(hb, 1e300)(0, 0);
  };
  e.dmass = [metric](const UPt& p, int axis) {
    SymMatrixD gb = metric->g_b_dual(p, axis);
    Dual w1(p.w1, axis == 1 ? 1.0 : 0.0);
    SymMatrixD hb(4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j <= i; ++j) hb(i, j) = w1 * w1 * gb(i, j);
    return invert_symmetric(hb, 1e300)(0, 0).d;
  };
}

// r-parameterized mass for polar entries (comps + compactifier known).
template <class CompsFn>
void attach_mass_r(CatalogEntry& e, const RadialCompactifier& rc, CompsFn comps) {
  auto by_r = [rc, comps](double u0, double r, double th0, bool want_deriv) -> double {
    double w1 = rc.h(r);
    double hp = rc.hp(r);
    Dual u(u0, want_deriv ? 1.0 : 0.0);
    auto c = comps(u, Dual(w1), Dual(r), Dual(th0));
    SymMatrixD gb = assemble_polar(c, u, Dual(w1), Dual(hp));
    SymMatrixD hb(4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j <= i; ++j) hb(i, j) = Dual(w1 * w1) * gb(i, j);
    Dual m = invert_symmetric(hb, 1e300)(0, 0);
    return want_deriv ? m.d : m.v;
  };
  e.mass_r = [by_r](double u, double r, double th) { return by_r(u, r, th, false); };
  e.dmass_du_r = [by_r](double u, double r, double th) { return by_r(u, r, th, true); };
  e.chart_ok_r = [](double, double, double) { return true; };
}

}  // namespace

// ---------------------------------------------------------------------------
// Entries
// ---------------------------------------------------------------------------

namespace {

// The worked Schwarzschild chart metric, transcribed componentwise (see the
// provenance notes: the closed form is the load-bearing object here).
class SchwarzschildMetric : public OmegaMetric {
 public:
  SchwarzschildMetric(double M, Box dom) : M_(M), dom_(dom) {}

  template <class T>
  SymMatrixT<T> eval(const T& u, const T& w1, const T& th) const {
    T tn = tan(w1);
    T F = exp(-tn);  // = 1 - 2M/r on this chart
    T one_mF = T(1) - F;
    T B2 = T(4 * M_ * M_) * (T(1) + tn * tn) / (one_mF * one_mF);
    SymMatrixT<T> g(4);
    g(0, 0) = -F * w1 * w1;
    g(1, 0) = -F * w1 * w1 * u;
    g(1, 1) = w1 * w1 * F * (B2 - u * u);
    g(2, 2) = T(4 * M_ * M_) / (one_mF * one_mF);
    g(3, 3) = g(2, 2) * sin(th) * sin(th);
    return g;
  }

  SymMatrix g_b(const UPt& p) const override { return eval(p.u, p.w1, p.ang[0]); }
  SymMatrixD g_b_dual(const UPt& p, int axis) const override {
    return eval(Dual(p.u, axis == 0 ? 1.0 : 0.0), Dual(p.w1, axis == 1 ? 1.0 : 0.0),
                Dual(p.ang[0], axis == 2 ? 1.0 : 0.0));
  }
  Box domain() const override { return dom_; }

 private:
  double M_;
  Box dom_;
};

}  // namespace

CatalogEntry make_schwarzschild(double M) {
  if (!(M > 0.0)) throw Error(Err::BranchMismatch, "Schwarzschild needs M > 0");
  RadialCompactifier rc = rc_schwarzschild_chart(M);
  CatalogEntry e;
  e.id = "schwarzschild";
  e.params = {{"M", M}};
  e.comp = rc;
  auto sm = std::make_shared<SchwarzschildMetric>(M, radial_box(rc));
  e.metric = sm;
  attach_generic_mass(e);
  auto mass_r_core = [sm, rc](double u, double r, bool want_deriv) {
    double w1 = rc.h(r);
    SymMatrixD gb = sm->eval(Dual(u, want_deriv ? 1.0 : 0.0), Dual(w1), Dual(M_PI / 2.0));
    SymMatrixD hb(4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j <= i; ++j) hb(i, j) = Dual(w1 * w1) * gb(i, j);
    Dual m = invert_symmetric(hb, 1e300)(0, 0);
    return want_deriv ? m.d : m.v;
  };
  e.mass_r = [mass_r_core](double u, double r, double) { return mass_r_core(u, r, false); };
  e.dmass_du_r = [mass_r_core](double u, double r, double) { return mass_r_core(u, r, true); };
  e.chart_ok_r = [](double, double, double) { return true; };
  auto schw_closed = [M](double u, double w1) {
    double T = std::tan(w1);
    double eT = std::exp(-T);
    double B2 = 4.0 * M * M * (1.0 + T * T) / ((1.0 - eT) * (1.0 - eT));
    double Phi = std::exp(2.0 * T) / (w1 * w1) * std::pow(1.0 - eT, 4) /
                 (4.0 * M * M * (1.0 + T * T) * (1.0 + T * T));
    return Phi * (u * u - B2);
  };
  e.m_closed = [schw_closed](const UPt& p) { return schw_closed(p.u, p.w1); };
  e.m_closed_r = [schw_closed, rc](double u, double r, double) {
    return schw_closed(u, rc.h(r));
  };
  e.u_horizon = [M](double w1, double) {
    double T = std::tan(w1);
    return -2.0 * M * std::sqrt(1.0 + T * T) / (1.0 - std::exp(-T));
  };
  e.chart_ok = [](const UPt&) { return true; };
  e.udomain = radial_box(rc);
  e.expected = {Verdict::Naked, true, -1.0};
  e.swappable_h = false;
  return e;
}

namespace {

CatalogEntry make_rn_impl(double M, double Q, RadialCompactifier rc, const char* branch,
                          double r_inner) {
  auto comps = [M, Q](auto u, auto w1, auto r, auto th) {
    using T = decltype(u);
    (void)u; (void)w1;
    T F = T(1) - T(2 * M) / r + T(Q * Q) / (r * r);
    PolarComps<T> c;
    c.tt = -F;
    c.rr = T(1) / F;
    c.thth = r * r;
    c.phph = r * r * sin(th) * sin(th);
    return c;
  };
  CatalogEntry e;
  e.id = std::string("rn-") + branch;
  e.params = {{"M", M}, {"Q", Q}};
  e.comp = rc;
  e.metric = std::make_shared<PolarMetric>(
      rc, [comps](double u, double w1, double r, double th) { return comps(u, w1, r, th); },
      [comps](Dual u, Dual w1, Dual r, Dual th) { return comps(u, w1, r, th); },
      radial_box(rc));
  attach_generic_mass(e);
  attach_mass_r(e, rc, comps);
  auto F = [M, Q](double r) { return 1.0 - 2.0 * M / r + Q * Q / (r * r); };
  RadialCompactifier rcc = rc;
  auto rn_closed = [F, rcc](double u, double r) {
    double f = F(r), hp = rcc.hp(r), w1 = rcc.h(r);
    return (-1.0 / f + u * u * hp * hp * f) / (w1 * w1);
  };
  e.m_closed = [rn_closed, rcc](const UPt& p) { return rn_closed(p.u, rcc.r_of_w1(p.w1)); };
  e.m_closed_r = [rn_closed](double u, double r, double) { return rn_closed(u, r); };
  e.u_horizon = [F, rcc](double w1, double) {
    double r = rcc.r_of_w1(w1);
    return -1.0 / (std::abs(rcc.hp(r)) * F(r));
  };
  e.chart_ok = [](const UPt&) { return true; };
  e.udomain = radial_box(rc);
  if (std::string(branch) == "super") e.expected = {Verdict::NotNaked, false, -1.0};
  else e.expected = {Verdict::Naked, false, rc.h(r_inner * (1.0 + 1e-13))};
  e.swappable_h = true;
  e.remake = [M, Q](const RadialCompactifier& h2) { return make_reissner_nordstrom(M, Q, h2); };
  return e;
}

}  // namespace

CatalogEntry make_reissner_nordstrom(double M, double Q, std::optional<RadialCompactifier> h) {
  if (!(M > 0.0) || Q == 0.0) throw Error(Err::BranchMismatch, "RN needs M > 0 and Q != 0");
  double aq = std::abs(Q);
  if (std::abs(M - aq) <= 1e-12 * std::max(M, aq)) {
    double rstar = M;
    RadialCompactifier rc = h ? *h : rc_arctan_inv_r(rstar * (1.0 + 1e-10));
    if (!(rc.r_lo >= rstar * (1.0 - 1e-9)))
      throw Error(Err::BranchMismatch, "extremal chart must start at r* = M");
    return make_rn_impl(M, Q, rc, "extremal", rstar);
  }
  if (M < aq) {
    RadialCompactifier rc = h ? *h : rc_arctan_inv_r(1e-6);
    return make_rn_impl(M, Q, rc, "super", 0.0);
  }
  double rp = M + std::sqrt(M * M - Q * Q);
  RadialCompactifier rc = h ? *h : rc_rn_arctan_exp(M, Q, rp * (1.0 + 1e-12));
  if (!(rc.r_lo >= rp * (1.0 - 1e-9)))
    throw Error(Err::BranchMismatch, "sub-extremal chart must start at r+");
  return make_rn_impl(M, Q, rc, "sub", rp);
}

CatalogEntry make_roberts(double sigma, std::optional<RadialCompactifier> h) {
  if (!(1.0 + 2.0 * sigma > 0.0)) throw Error(Err::InvalidSigma, "need 1 + 2 sigma > 0");
  RadialCompactifier rc = h ? *h : rc_arctan_inv_r(1e-6);
  double s = sigma;
  auto comps = [s](auto u, auto w1, auto r, auto th) {
    using T = decltype(u);
    T vt = -w1 * u + r / T(1.0 + 2.0 * s);  // v = vartheta + r/(1+2s), vartheta = -w1 u
    PolarComps<T> c;
    c.tt = T(-(1.0 + 2.0 * s));
    c.rr = T(1.0 / (1.0 + 2.0 * s));
    c.thth = r * (r - T(2.0 * s) * vt);
    c.phph = c.thth * sin(th) * sin(th);
    return c;
  };
  CatalogEntry e;
  e.id = "roberts";
  e.params = {{"sigma", sigma}};
  e.comp = rc;
  RadialCompactifier rcc = rc;
  auto valid = [s, rcc](const UPt& p) {
    double r = rcc.r_of_w1(p.w1);
    double v = -p.w1 * p.u + r / (1.0 + 2.0 * s);
    return r - 2.0 * s * v > 1e-6 && v >= 0.0;
  };
  e.metric = std::make_shared<PolarMetric>(
      rc, [comps](double u, double w1, double r, double th) { return comps(u, w1, r, th); },
      [comps](Dual u, Dual w1, Dual r, Dual th) { return comps(u, w1, r, th); },
      radial_box(rc), valid);
  attach_generic_mass(e);
  attach_mass_r(e, rc, comps);
  e.chart_ok_r = [s, rcc](double u, double r, double) {
    double v = -rcc.h(r) * u + r / (1.0 + 2.0 * s);
    return r - 2.0 * s * v > 1e-6 && v >= 0.0;
  };
  auto rob_closed = [s, rcc](double u, double r) {
    double hp = rcc.hp(r), w1 = rcc.h(r);
    return (-1.0 / (1.0 + 2.0 * s) + u * u * hp * hp * (1.0 + 2.0 * s)) / (w1 * w1);
  };
  e.m_closed = [rob_closed, rcc](const UPt& p) { return rob_closed(p.u, rcc.r_of_w1(p.w1)); };
  e.m_closed_r = [rob_closed](double u, double r, double) { return rob_closed(u, r); };
  e.u_horizon = [s, rcc](double w1, double) {
    double hp = rcc.hp(rcc.r_of_w1(w1));
    return -1.0 / (std::abs(hp) * (1.0 + 2.0 * s));
  };
  e.chart_ok = valid;
  e.udomain = radial_box(rc);
  e.expected = {Verdict::NotNaked, false, -1.0};
  e.swappable_h = true;
  e.remake = [sigma](const RadialCompactifier& h2) { return make_roberts(sigma, h2); };
  return e;
}

CatalogEntry make_kerr(double M, double a, std::optional<RadialCompactifier> h) {
  if (!(a != 0.0 && std::abs(a) < M)) throw Error(Err::BranchMismatch, "Kerr needs 0 < |a| < M");
  double rp = kerr_rplus(M, a);
  RadialCompactifier rc = h ? *h : rc_arctan_inv_r(rp * (1.0 + 1e-12));
  if (!(rc.r_lo >= rp * (1.0 - 1e-9)))
    throw Error(Err::BranchMismatch, "Kerr chart must start at r+");
  // diagonal form beyond the ergoregion; Sigma' = g_tt g_pp - g_tp^2 = -Delta sin^2
  auto comps = [M, a](auto u, auto w1, auto r, auto th) {
    using T = decltype(u);
    (void)u; (void)w1;
    T s2 = sin(th) * sin(th);
    T S = r * r + T(a * a) * (T(1) - s2);
    T D = r * r + T(a * a) - T(2 * M) * r;
    T DS = D - T(a * a) * s2;
    PolarComps<T> c;
    c.tt = -DS / S;
    c.rr = S / D;
    c.thth = S;
    c.phph = S * D * s2 / DS;
    return c;
  };
  CatalogEntry e;
  e.id = "kerr";
  e.params = {{"M", M}, {"a", a}};
  e.comp = rc;
  RadialCompactifier rcc = rc;
  auto valid = [M, a, rcc](const UPt& p) {
    double r = rcc.r_of_w1(p.w1);
    double s2 = std::sin(p.ang[0]) * std::sin(p.ang[0]);
    double D = r * r + a * a - 2.0 * M * r;
    double scale = r * r + a * a;
    return D - a * a * s2 > 1e-12 * scale;
  };
  e.metric = std::make_shared<PolarMetric>(
      rc, [comps](double u, double w1, double r, double th) { return comps(u, w1, r, th); },
      [comps](Dual u, Dual w1, Dual r, Dual th) { return comps(u, w1, r, th); },
      radial_box(rc), valid);

  // Mass: Boyer-Lindquist dual contracted with (1, u h', 0, 0); the generic
  // route is the 4x4 inversion of the Boyer-Lindquist metric.
  auto bl_core = [M, a](Dual u, Dual w1, Dual r, Dual hp, Dual th) -> Dual {
    Dual s2 = sin(th) * sin(th);
    Dual S = r * r + Dual(a * a) * (Dual(1) - s2);
    Dual D = r * r + Dual(a * a) - Dual(2 * M) * r;
    SymMatrixD g(4);
    g(0, 0) = -(D - Dual(a * a) * s2) / S;
    g(3, 0) = -Dual(a) * s2 * (r * r + Dual(a * a) - D) / S;
    g(1, 1) = S / D;
    g(2, 2) = S;
    g(3, 3) = ((r * r + Dual(a * a)) * (r * r + Dual(a * a)) - D * Dual(a * a) * s2) / S * s2;
    SymMatrixD G = invert_symmetric(g, 1e300);
    Dual xr = u * hp;
    return (G(0, 0) + Dual(2) * xr * G(1, 0) + xr * xr * G(1, 1)) / (w1 * w1);
  };
  auto bl_contract = [rcc, bl_core](const UPt& p, int axis) -> Dual {
    double r0 = rcc.r_of_w1(p.w1);
    double hp0 = rcc.hp(r0);
    return bl_core(Dual(p.u, axis == 0 ? 1.0 : 0.0), Dual(p.w1, axis == 1 ? 1.0 : 0.0),
                   Dual(r0, axis == 1 ? 1.0 / hp0 : 0.0),
                   Dual(hp0, axis == 1 ? rcc.hpp(r0) / hp0 : 0.0),
                   Dual(p.ang[0], axis == 2 ? 1.0 : 0.0));
  };
  e.mass = [bl_contract](const UPt& p) { return bl_contract(p, -1).v; };
  e.dmass = [bl_contract](const UPt& p, int axis) { return bl_contract(p, axis).d; };
  e.mass_r = [rcc, bl_core](double u, double r, double th) {
    return bl_core(Dual(u), Dual(rcc.h(r)), Dual(r), Dual(rcc.hp(r)), Dual(th)).v;
  };
  e.dmass_du_r = [rcc, bl_core](double u, double r, double th) {
    return bl_core(Dual(u, 1.0), Dual(rcc.h(r)), Dual(r), Dual(rcc.hp(r)), Dual(th)).d;
  };
  e.chart_ok_r = [M, a](double, double r, double th) {
    double s2 = std::sin(th) * std::sin(th);
    double D = r * r + a * a - 2.0 * M * r;
    return D - a * a * s2 > 1e-12 * (r * r + a * a);
  };

  auto kerr_closed = [M, a, rcc](double u, double r, double th) {
    double hp = rcc.hp(r), w1 = rcc.h(r);
    double s2 = std::sin(th) * std::sin(th);
    double S = r * r + a * a * (1.0 - s2);
    double D = r * r + a * a - 2.0 * M * r;
    double DS = D - a * a * s2;
    double Sp = -D * s2;  // Sigma' identity
    double third = (s2 == 0.0) ? 0.0
                               : -a * a * s2 * s2 * (r * r + a * a - D) * (r * r + a * a - D) /
                                     (S * Sp * DS);
    return (-S / DS + hp * hp * u * u * D / S + third) / (w1 * w1);
  };
  e.m_closed = [kerr_closed, rcc](const UPt& p) {
    return kerr_closed(p.u, rcc.r_of_w1(p.w1), p.ang[0]);
  };
  e.m_closed_r = kerr_closed;
  e.u_horizon = [M, a, rcc](double w1, double th) {
    double r = rcc.r_of_w1(w1);
    double hp = rcc.hp(r);
    double s2 = std::sin(th) * std::sin(th);
    double S = r * r + a * a * (1.0 - s2);
    double D = r * r + a * a - 2.0 * M * r;
    double DS = D - a * a * s2;
    double Sp = -D * s2;
    double inner = S / DS;
    if (s2 > 0.0)
      inner += a * a * s2 * s2 * (r * r + a * a - D) * (r * r + a * a - D) / (S * Sp * DS);
    double rhs = S / (D * hp * hp) * inner;
    if (!(rhs > 0.0)) return 1.0;  // no horizon on this ray (reported upstream)
    return -std::sqrt(rhs);
  };
  e.chart_ok = valid;
  e.udomain = radial_box(rc);
  e.expected = {Verdict::Naked, false, rc.h(rp * (1.0 + 1e-13))};
  e.swappable_h = true;
  e.remake = [M, a](const RadialCompactifier& h2) { return make_kerr(M, a, h2); };
  return e;
}

CatalogEntry make_synthetic_collapse(const SyntheticSpec& spec) {
  if (!(spec.rho > 0.0)) throw Error(Err::ConfigError, "need a' > 0 (rho > 0)");
  RadialCompactifier rc = rc_exp(spec.theta, spec.kappa, spec.r_lo, spec.r_hi);
  double rho = spec.rho;
  bool iso = spec.isotropic;
  auto comps = [rho, iso](auto u, auto w1, auto r, auto th) {
    using T = decltype(u);
    T av = exp(T(-rho) * w1 * u);  // a(t) at t = -w1 u
    T a2 = av * av;
    T det = iso ? a2 * a2 * a2 : a2 * a2;
    PolarComps<T> c;
    c.tt = -det / (w1 * w1);
    c.rr = iso ? a2 : T(1);
    c.thth = a2 * r * r;
    c.phph = a2 * r * r * sin(th) * sin(th);
    return c;
  };
  CatalogEntry e;
  e.id = iso ? "synthetic-iso" : "synthetic";
  e.params = {{"rho", rho}, {"theta", spec.theta}, {"kappa", spec.kappa},
              {"r_lo", spec.r_lo}, {"r_hi", spec.r_hi}, {"isotropic", iso ? 1.0 : 0.0}};
  e.comp = rc;
  e.metric = std::make_shared<PolarMetric>(
      rc, [comps](double u, double w1, double r, double th) { return comps(u, w1, r, th); },
      [comps](Dual u, Dual w1, Dual r, Dual th) { return comps(u, w1, r, th); },
      radial_box(rc));
  attach_generic_mass(e);
  attach_mass_r(e, rc, comps);

  // temporal-gauge data in the Cartesian x chart
  TemporalGauge tg;
  tg.conf = ConformalFactor::gaussian(spec.theta, spec.kappa);
  tg.conf.set_r_domain(spec.r_lo, spec.r_hi);
  tg.gbar = [rho, iso](double t, const V3& x) {
    double a2 = std::exp(2.0 * rho * t);
    double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    M3 g{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double proj = x[static_cast<size_t>(i)] * x[static_cast<size_t>(j)] / r2;
        double perp = (i == j ? 1.0 : 0.0) - proj;
        g[static_cast<size_t>(i)][static_cast<size_t>(j)] = iso ? a2 * (proj + perp) : proj + a2 * perp;
      }
    }
    return g;
  };
  tg.dt_gbar = [rho, iso](double t, const V3& x) {
    double da2 = 2.0 * rho * std::exp(2.0 * rho * t);
    double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    M3 g{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double proj = x[static_cast<size_t>(i)] * x[static_cast<size_t>(j)] / r2;
        double perp = (i == j ? 1.0 : 0.0) - proj;
        g[static_cast<size_t>(i)][static_cast<size_t>(j)] = iso ? da2 * (proj + perp) : da2 * perp;
      }
    }
    return g;
  };
  e.tg = tg;

  double kap = spec.kappa;
  auto syn_closed = [rho, kap, iso](double u, double w1) {
    double av = std::exp(-rho * w1 * u);
    double det = iso ? std::pow(av, 6) : std::pow(av, 4);
    double gradterm = kap * kap * (iso ? 1.0 / (av * av) : 1.0);
    return (-1.0 / det + u * u * gradterm) / (w1 * w1);
  };
  e.m_closed = [syn_closed](const UPt& p) { return syn_closed(p.u, p.w1); };
  e.m_closed_r = [syn_closed, rc](double u, double r, double) { return syn_closed(u, rc.h(r)); };
  e.chart_ok = [](const UPt&) { return true; };
  e.udomain = radial_box(rc, -1e15, 0.8);
  e.expected = {Verdict::NotNaked, false, -1.0};
  e.swappable_h = false;  // Omega swap handled by the bound suite directly
  return e;
}

}  // namespace confhor
