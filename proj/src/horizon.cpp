#include "confhor/horizon.hpp"

#include <cmath>

namespace confhor {

std::vector<double> uniform_grid(double w1_hi, int n) {
  std::vector<double> g(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = w1_hi * (i + 0.5) / n;
  return g;
}

HorizonNode ray_root(const RaySlice& slice, const HorizonOpts& opt) {
  HorizonNode node;
  auto m_at = slice.m;
  try {
    // establish an exterior end (m < 0) near u = 0-
    double u_ext = -opt.u_seed;
    double m_ext = m_at(u_ext);
    int guard = 0;
    while (std::isfinite(m_ext) && m_ext > 0.0 && ++guard < 80) {
      u_ext *= 0.25;
      m_ext = m_at(u_ext);
    }
    if (!std::isfinite(m_ext) || m_ext > 0.0) {
      node.status = NodeStatus::NoSignChange;
      return node;
    }
    // march down until the interior (m > 0) shows up
    double u_int = u_ext;
    double m_int = m_ext;
    bool bracketed = false;
    while (std::abs(u_int) < opt.u_cap) {
      double u_try = 2.0 * u_int;
      double m_try = m_at(u_try);
      if (!std::isfinite(m_try)) break;
      if (m_try > 0.0) {
        u_int = u_try;
        m_int = m_try;
        bracketed = true;
        break;
      }
      u_int = u_try;
      m_int = m_try;
      u_ext = u_try;  // deepest exterior point seen
    }
    if (!bracketed) {
      node.status = NodeStatus::NoSignChange;
      return node;
    }
    double a = u_int, b = u_ext;  // m(a) > 0, m(b) < 0
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (a + b);
      double mm = m_at(mid);
      if (!std::isfinite(mm)) { node.status = NodeStatus::EvalFailed; return node; }
      if (mm > 0.0) a = mid;
      else b = mid;
      if (std::abs(a - b) < 1e-14 * std::max(1.0, std::abs(mid))) break;
    }
    double u = 0.5 * (a + b);
    double slope_scale = std::abs(m_int - m_ext) / std::max(std::abs(u_int - u_ext), 1e-300);
    // Newton polish with the dual slope
    double dm = slice.dm_du(u);
    if (std::isfinite(dm) && dm != 0.0) {
      double un = u - m_at(u) / dm;
      if (std::isfinite(un) && un < 0.0) u = un;
    }
    if (slice.ok && !slice.ok(u)) { node.status = NodeStatus::ChartInvalid; return node; }
    node.u_root = u;
    node.X = std::exp(u);
    node.dm_du = slice.dm_du(u);
    node.dm_dt = node.dm_du / node.X;
    node.m_resid = std::abs(m_at(u)) / std::max(slope_scale * std::abs(u), 1e-300);
    node.status = (std::abs(node.dm_du) < opt.degen_rel * slope_scale)
                      ? NodeStatus::Degenerate
                      : NodeStatus::Ok;
  } catch (const Error&) {
    node.status = NodeStatus::EvalFailed;
  }
  return node;
}

HorizonNode horizon_root(const CatalogEntry& e, double w1, double theta, const HorizonOpts& opt) {
  UPt p;
  p.w1 = w1;
  p.ang = {theta, 0.0};
  RaySlice slice;
  slice.m = [&e, p](double u) mutable { UPt q = p; q.u = u; return e.mass(q); };
  slice.dm_du = [&e, p](double u) mutable { UPt q = p; q.u = u; return e.dmass(q, 0); };
  slice.ok = [&e, p](double u) mutable { UPt q = p; q.u = u; return e.chart_ok(q); };
  HorizonNode n = ray_root(slice, opt);
  n.w1 = w1;
  n.theta = theta;
  return n;
}

HorizonNode horizon_root_r(const CatalogEntry& e, double r, double theta, const HorizonOpts& opt) {
  if (!e.mass_r) return horizon_root(e, e.comp.h(r), theta, opt);
  RaySlice slice;
  slice.m = [&e, r, theta](double u) { return e.mass_r(u, r, theta); };
  slice.dm_du = [&e, r, theta](double u) { return e.dmass_du_r(u, r, theta); };
  slice.ok = [&e, r, theta](double u) { return e.chart_ok_r ? e.chart_ok_r(u, r, theta) : true; };
  HorizonNode n = ray_root(slice, opt);
  n.w1 = e.comp.h(r);
  n.theta = theta;
  return n;
}

HorizonProfile horizon_profile(const CatalogEntry& e, const std::vector<double>& w1_grid,
                               double theta, const HorizonOpts& opt) {
  HorizonProfile prof;
  prof.nodes.resize(w1_grid.size());
  parallel_for(w1_grid.size(), [&](size_t i) {
    prof.nodes[i] = horizon_root(e, w1_grid[i], theta, opt);
  });
  for (const auto& n : prof.nodes)
    if (n.status == NodeStatus::Ok || n.status == NodeStatus::Degenerate) ++prof.n_ok;

  // null residual: -2 G^{0i} dX/dw^i + G^{ij} dX/dw^i dX/dw^j at each node,
  // dX by centered grid differencing along omega^1
  for (size_t i = 0; i < prof.nodes.size(); ++i) {
    auto& n = prof.nodes[i];
    if (n.status != NodeStatus::Ok && n.status != NodeStatus::Degenerate) continue;
    if (!(n.X > 0.0)) continue;  // underflowed: residual not representable
    size_t il = (i == 0) ? i : i - 1;
    size_t ih = (i + 1 == prof.nodes.size()) ? i : i + 1;
    const auto& a = prof.nodes[il];
    const auto& b = prof.nodes[ih];
    if (a.status != NodeStatus::Ok && a.status != NodeStatus::Degenerate) continue;
    if (b.status != NodeStatus::Ok && b.status != NodeStatus::Degenerate) continue;
    if (ih == il || !(b.w1 > a.w1)) continue;
    double dX = (b.X - a.X) / (b.w1 - a.w1);
    try {
      UPt q;
      q.u = n.u_root;
      q.w1 = n.w1;
      q.ang = {n.theta, 0.0};
      SymMatrix gc = g_coord(e, q);
      SymMatrix hc(4);
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c <= r; ++c) hc(r, c) = n.w1 * n.w1 * gc(r, c);
      SymMatrix G = invert_symmetric(hc);
      n.null_residual = -2.0 * G(0, 1) * dX + G(1, 1) * dX * dX;
    } catch (const Error&) {
      n.null_residual = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return prof;
}

}  // namespace confhor
