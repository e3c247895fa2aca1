#include "confhor/mass.hpp"

#include <cmath>

namespace confhor {

XPoint x_of(const CatalogEntry& e, const UPt& p) {
  XPoint xp{};
  xp.r = e.comp.r_of_w1(p.w1);
  xp.t = -p.w1 * p.u;
  xp.theta = p.ang[0];
  xp.phi = p.ang[1];
  double st = std::sin(xp.theta), ct = std::cos(xp.theta);
  xp.cart = {xp.r * st * std::cos(xp.phi), xp.r * st * std::sin(xp.phi), xp.r * ct};
  return xp;
}

MassSample mass_generic(const CatalogEntry& e, const UPt& p) {
  if (!e.udomain.contains({p.u, p.w1, p.ang[0], p.ang[1]}))
    throw Error(Err::DomainExceeded, "mass evaluation outside entry domain");
  MassSample s;
  s.m = e.mass(p);
  s.dm_du = e.dmass(p, 0);
  s.grad = {s.dm_du, e.dmass(p, 1), e.dmass(p, 2), 0.0};
  s.dm_dt = s.dm_du * std::exp(-p.u);
  s.source = MassSource::Generic;
  // Def 4.2 cross variant: G_b(b0, b1) with the b1-leg carrying the same
  // normalization as the mass convention.
  SymMatrix gb = e.metric->g_b(p);
  SymMatrix hb(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j <= i; ++j) hb(i, j) = p.w1 * p.w1 * gb(i, j);
  s.m_def42 = invert_symmetric(hb)(1, 0);
  return s;
}

ExtrinsicCurvature extrinsic_curvature(const TemporalGauge& tg, double t, const V3& x) {
  ExtrinsicCurvature k;
  M3 gb = tg.gbar(t, x);
  M3 dg = tg.dt_gbar(t, x);
  k.det_gbar = det3(gb);
  double omega = tg.conf.omega(x);
  k.tau = std::sqrt(k.det_gbar) / omega;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      k.K[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          -dg[static_cast<size_t>(i)][static_cast<size_t>(j)] / (2.0 * k.tau);
  M3 gi = inv3(gb);
  double tr = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      tr += gi[static_cast<size_t>(i)][static_cast<size_t>(j)] * k.K[static_cast<size_t>(i)][static_cast<size_t>(j)];
  k.trK = tr;
  auto W = tg.conf.grad(x);
  double kg = 0.0, kscale = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double kup = 0.0, kabs = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          double term = gi[static_cast<size_t>(i)][static_cast<size_t>(a)] *
                        gi[static_cast<size_t>(j)][static_cast<size_t>(b)] *
                        k.K[static_cast<size_t>(a)][static_cast<size_t>(b)];
          kup += term;
          kabs += std::abs(term);
        }
      kg += kup * W[static_cast<size_t>(i)] * W[static_cast<size_t>(j)];
      kscale += kabs * std::abs(W[static_cast<size_t>(i)]) * std::abs(W[static_cast<size_t>(j)]);
    }
  }
  k.K_grad = kg;
  k.K_grad_scale = kscale;
  return k;
}

MassSample mass_temporal_gauge(const CatalogEntry& e, const UPt& p) {
  if (!e.tg) throw Error(Err::NotTemporalGauge, e.id + " has no temporal-gauge data");
  const TemporalGauge& tg = *e.tg;
  XPoint xp = x_of(e, p);
  M3 gb = tg.gbar(xp.t, xp.cart);
  M3 gi = inv3(gb);
  double det = det3(gb);
  auto W = tg.conf.grad(xp.cart);
  double gWW = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      gWW += gi[static_cast<size_t>(i)][static_cast<size_t>(j)] * W[static_cast<size_t>(i)] * W[static_cast<size_t>(j)];
  double w2 = p.w1 * p.w1;
  MassSample s;
  s.m = (-1.0 / det + (p.u * p.u / w2) * gWW) / w2;
  s.source = MassSource::TemporalGaugeClosedForm;
  s.dm_du = dm_du_closed_form(e, p);
  s.dm_dt = s.dm_du * std::exp(-p.u);
  s.grad = {s.dm_du, 0.0, 0.0, 0.0};
  return s;
}

double dm_du_closed_form(const CatalogEntry& e, const UPt& p) {
  if (!e.tg) throw Error(Err::NotTemporalGauge, e.id + " has no temporal-gauge data");
  XPoint xp = x_of(e, p);
  ExtrinsicCurvature K = extrinsic_curvature(*e.tg, xp.t, xp.cart);
  M3 gb = e.tg->gbar(xp.t, xp.cart);
  M3 gi = inv3(gb);
  auto W = e.tg->conf.grad(xp.cart);
  double gWW = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      gWW += gi[static_cast<size_t>(i)][static_cast<size_t>(j)] * W[static_cast<size_t>(i)] * W[static_cast<size_t>(j)];
  double sq = std::sqrt(K.det_gbar);
  double w2 = p.w1 * p.w1;
  double bracket = K.trK / sq + (p.u / w2) * (gWW - p.u * sq * K.K_grad);
  return 2.0 / w2 * bracket;
}

namespace {

double local_m_scale(const CatalogEntry& e, const UPt& p) {
  double du = 0.05 * std::max(1.0, std::abs(p.u));
  double s = std::abs(e.mass(p));
  for (double off : {-du, du}) {
    UPt q = p;
    q.u = p.u + off;
    if (q.u < 0.8 && e.udomain.contains({q.u, q.w1, q.ang[0], q.ang[1]}))
      s = std::max(s, std::abs(e.mass(q)));
  }
  return std::max(s, 1e-300);
}

}  // namespace

RegionTag classify(const CatalogEntry& e, const UPt& p, const ClassifyOpts& opt) {
  double m = e.mass(p);
  double scale = local_m_scale(e, p);
  double tol = opt.tol_rel * scale;
  if (m < -tol) return RegionTag::Exterior;
  if (m > tol) return RegionTag::Interior;
  double dm = e.dmass(p, 0);
  double slope_scale = std::max(std::abs(dm), scale / std::max(std::abs(p.u), 1e-3));
  if (std::abs(dm) <= opt.dtol_rel * slope_scale) return RegionTag::HorizonApparent;
  return RegionTag::HorizonActual;
}

SymMatrix g_coord(const CatalogEntry& e, const UPt& p) {
  SymMatrix gb = e.metric->g_b(p);
  double w0 = std::exp(p.u);
  std::array<double, 4> sc{1.0 / w0, 1.0 / p.w1, 1.0, 1.0};
  SymMatrix g(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j <= i; ++j)
      g(i, j) = gb(i, j) * sc[static_cast<size_t>(i)] * sc[static_cast<size_t>(j)];
  return g;
}

double killing_residual(const std::function<SymMatrix(const Pt&)>& g_omega, const Pt& w,
                        double step) {
  double h = step * std::max(1.0, std::abs(w[0]));
  Pt a = w, b = w;
  a[0] += h;
  b[0] -= h;
  SymMatrix ga = g_omega(a), gb = g_omega(b);
  double r = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j <= i; ++j)
      r = std::max(r, std::abs((ga(i, j) - gb(i, j)) / (2.0 * h)));
  return r;
}

double killing_residual(const CatalogEntry& e, const UPt& p) {
  auto g = [&](const Pt& w) {
    UPt q;
    q.u = std::log(w[0]);
    q.w1 = w[1];
    q.ang = {w[2], w[3]};
    return g_coord(e, q);
  };
  return killing_residual(g, {std::exp(p.u), p.w1, p.ang[0], p.ang[1]});
}

double eikonal_residual(const ScalarField& f, const CatalogEntry& e, const UPt& p) {
  SymMatrix gc = g_coord(e, p);
  SymMatrix hc(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j <= i; ++j) hc(i, j) = p.w1 * p.w1 * gc(i, j);
  SymMatrix G = invert_symmetric(hc);
  Pt w{std::exp(p.u), p.w1, p.ang[0], p.ang[1]};
  std::array<double, 4> df{};
  DerivativeConfig cfg;
  cfg.scheme = f.eval_dual ? DerivScheme::DualNumber : DerivScheme::CentralDifference;
  for (int ax = 0; ax < 4; ++ax) df[static_cast<size_t>(ax)] = derive(f, w, ax, cfg);
  double quad = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      quad += G(i, j) * df[static_cast<size_t>(i)] * df[static_cast<size_t>(j)];
  return df[0] * quad;
}

}  // namespace confhor
