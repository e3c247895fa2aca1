#include "confhor/conditions.hpp"

#include <cmath>

namespace confhor {

ConditionReport curvature_conditions(const CatalogEntry& e, const std::vector<UPt>& samples) {
  if (!e.tg) throw Error(Err::NotTemporalGauge, e.id + " has no temporal-gauge data");
  ConditionReport rep;
  rep.rows.resize(samples.size());
  parallel_for(samples.size(), [&](size_t i) {
    ConditionRow row;
    row.p = samples[i];
    XPoint xp = x_of(e, samples[i]);
    ExtrinsicCurvature K = extrinsic_curvature(*e.tg, xp.t, xp.cart);
    row.trK = K.trK;
    row.K_grad = K.K_grad;
    row.pair_condition = (K.trK < 0.0) && (K.K_grad >= -1e-10 * K.K_grad_scale);
    row.monotonicity_bracket = 0.5 * samples[i].w1 * samples[i].w1 * dm_du_closed_form(e, samples[i]);
    row.monotonicity_condition = row.monotonicity_bracket < 0.0;
    rep.rows[i] = row;
  });
  size_t n420 = 0, n416 = 0;
  for (const auto& r : rep.rows) {
    n420 += r.pair_condition;
    n416 += r.monotonicity_condition;
  }
  rep.frac_pair = samples.empty() ? 0.0 : double(n420) / double(samples.size());
  rep.frac_monotone = samples.empty() ? 0.0 : double(n416) / double(samples.size());
  return rep;
}

namespace {

// margin integrand at the horizon trace over (w1, theta):
//   grad_X m / (dm/dw0) = Z0 - X * (Z1 dm/dw1 + Z2 dm/dth) / (dm/du)
double trace_integrand(const CatalogEntry& e, double w1, double theta,
                       const std::array<double, 4>& Z, double dtol) {
  HorizonNode n = horizon_root(e, w1, theta);
  if (n.status != NodeStatus::Ok && n.status != NodeStatus::Degenerate)
    throw Error(Err::HypothesisViolated, "no horizon root on the curve trace");
  if (!(n.dm_du < -dtol))
    throw Error(Err::HypothesisViolated, "dm/domega0 not negative at the horizon trace");
  UPt q;
  q.u = n.u_root;
  q.w1 = w1;
  q.ang = {theta, 0.0};
  double spatial = Z[1] * e.dmass(q, 1) + Z[2] * e.dmass(q, 2);
  return Z[0] - n.X * spatial / n.dm_du;
}

}  // namespace

StayResult stay_criterion(const CatalogEntry& e, const Pt& start, const ZField& Z, double s_max,
                          const StayOpts& opt) {
  HorizonNode n0 = horizon_root(e, start[1], start[2]);
  if (n0.status != NodeStatus::Ok && n0.status != NodeStatus::Degenerate)
    throw Error(Err::HypothesisViolated, "horizon not found above the start point");
  double head = start[0] - n0.X;  // w0_0 - X(w^i_0)

  StayResult res;
  res.margin_trace.push_back({0.0, head});
  // RKF45 on (w0, w1, w2, w3, I)
  std::array<double, 5> y{start[0], start[1], start[2], start[3], 0.0};
  auto rhs = [&](const std::array<double, 5>& s) {
    Pt w{s[0], s[1], s[2], s[3]};
    auto z = Z(w);
    double integ = trace_integrand(e, s[1], s[2], z, opt.dtol);
    return std::array<double, 5>{z[0], z[1], z[2], z[3], integ};
  };
  double s = 0.0, h = std::min(0.05, s_max / 10.0);
  double prev_margin = head;
  double prev_s = 0.0;
  int guard = 0;
  while (s < s_max && ++guard < 200000) {
    if (s + h > s_max) h = s_max - s;
    // Fehlberg tableau
    auto k1 = rhs(y);
    auto at = [&](double f1, double f2, double f3, double f4, double f5,
                  const std::array<double, 5>& K1, const std::array<double, 5>& K2,
                  const std::array<double, 5>& K3, const std::array<double, 5>& K4,
                  const std::array<double, 5>& K5) {
      std::array<double, 5> out;
      for (int i = 0; i < 5; ++i)
        out[static_cast<size_t>(i)] =
            y[static_cast<size_t>(i)] + h * (f1 * K1[static_cast<size_t>(i)] + f2 * K2[static_cast<size_t>(i)] +
                                             f3 * K3[static_cast<size_t>(i)] + f4 * K4[static_cast<size_t>(i)] +
                                             f5 * K5[static_cast<size_t>(i)]);
      return out;
    };
    std::array<double, 5> zero{};
    auto k2 = rhs(at(1.0 / 4, 0, 0, 0, 0, k1, zero, zero, zero, zero));
    auto k3 = rhs(at(3.0 / 32, 9.0 / 32, 0, 0, 0, k1, k2, zero, zero, zero));
    auto k4 = rhs(at(1932.0 / 2197, -7200.0 / 2197, 7296.0 / 2197, 0, 0, k1, k2, k3, zero, zero));
    auto k5 = rhs(at(439.0 / 216, -8.0, 3680.0 / 513, -845.0 / 4104, 0, k1, k2, k3, k4, zero));
    auto k6 = rhs(at(-8.0 / 27, 2.0, -3544.0 / 2565, 1859.0 / 4104, -11.0 / 40, k1, k2, k3, k4, k5));
    std::array<double, 5> y4, y5;
    double err = 0.0, scale = 0.0;
    for (int i = 0; i < 5; ++i) {
      size_t ii = static_cast<size_t>(i);
      y4[ii] = y[ii] + h * (25.0 / 216 * k1[ii] + 1408.0 / 2565 * k3[ii] + 2197.0 / 4104 * k4[ii] -
                            1.0 / 5 * k5[ii]);
      y5[ii] = y[ii] + h * (16.0 / 135 * k1[ii] + 6656.0 / 12825 * k3[ii] +
                            28561.0 / 56430 * k4[ii] - 9.0 / 50 * k5[ii] + 2.0 / 55 * k6[ii]);
      err = std::max(err, std::abs(y5[ii] - y4[ii]));
      scale = std::max(scale, std::abs(y5[ii]) + 1.0);
    }
    double tol = opt.rel_tol * scale;
    if (err > tol && h > 1e-12) {
      h *= std::max(0.2, 0.9 * std::pow(tol / err, 0.25));
      continue;
    }
    y = y5;
    s += h;
    if (err > 0.0) h = std::min(h * std::min(5.0, 0.9 * std::pow(tol / err, 0.2)), s_max);
    double margin = head + y[4];
    res.margin_trace.push_back({s, margin});
    if (margin >= 0.0 && res.exit_s < 0.0) {
      // first crossing: linear interpolation on the accepted interval
      double frac = (0.0 - prev_margin) / (margin - prev_margin);
      res.exit_s = prev_s + frac * (s - prev_s);
      res.stays = false;
      break;
    }
    prev_margin = margin;
    prev_s = s;
  }
  return res;
}

double grad_x_m(const CatalogEntry& e, const UPt& p, const std::array<double, 4>& Z) {
  // causality via h(Z, Z) in the coordinate frame
  SymMatrix gc = g_coord(e, p);
  double hzz = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      hzz += p.w1 * p.w1 * gc(i, j) * Z[static_cast<size_t>(i)] * Z[static_cast<size_t>(j)];
  double scale = p.w1 * p.w1 * gc.norm_inf();
  if (hzz > 1e-12 * std::max(scale, 1.0)) throw Error(Err::NonCausalZ, "spacelike probe vector");
  double dm_dw0 = e.dmass(p, 0) * std::exp(-p.u);
  return Z[0] * dm_dw0 - (Z[1] * e.dmass(p, 1) + Z[2] * e.dmass(p, 2));
}

EnergyReport energy_condition(const CatalogEntry& e, const std::vector<UPt>& samples,
                              int cone_res) {
  EnergyReport rep;
  rep.samples.resize(samples.size());
  parallel_for(samples.size(), [&](size_t si) {
    const UPt& p = samples[si];
    SymMatrix gc = g_coord(e, p);
    SymMatrix h(4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j <= i; ++j) h(i, j) = p.w1 * p.w1 * gc(i, j);
    double dm_dw0 = e.dmass(p, 0) * std::exp(-p.u);
    double dm1 = e.dmass(p, 1), dm2 = e.dmass(p, 2);
    double best = 1e300;
    // Z = (1, lambda d) over a direction grid, lambda up to the null boundary
    for (int a = 0; a < cone_res; ++a) {
      for (int b = 0; b < 2 * cone_res; ++b) {
        double th = M_PI * (a + 0.5) / cone_res;
        double ph = M_PI * b / cone_res;
        std::array<double, 3> d{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                                std::cos(th)};
        // h00 + 2 lam h0.d + lam^2 hdd = 0
        double h00 = h(0, 0), h0d = 0.0, hdd = 0.0;
        for (int i = 1; i < 4; ++i) {
          h0d += h(0, i) * d[static_cast<size_t>(i - 1)];
          for (int j = 1; j < 4; ++j)
            hdd += h(i, j) * d[static_cast<size_t>(i - 1)] * d[static_cast<size_t>(j - 1)];
        }
        double disc = h0d * h0d - hdd * h00;
        if (!(hdd > 0.0) || disc < 0.0) continue;
        double lam_max = (-h0d + std::sqrt(disc)) / hdd;
        if (!(lam_max > 0.0)) {
          lam_max = (-h0d - std::sqrt(disc)) / hdd;
          if (!(lam_max > 0.0)) continue;
        }
        for (double f : {0.0, 0.5, 0.9}) {
          double lam = f * lam_max;
          double gx = dm_dw0 - lam * (d[0] * dm1 + d[1] * dm2);
          best = std::min(best, gx);
        }
      }
    }
    EnergySample es;
    es.p = p;
    es.min_grad_x = best;
    es.passed = best >= 0.0;
    rep.samples[si] = es;
  });
  rep.min_value = 1e300;
  for (const auto& s : rep.samples) rep.min_value = std::min(rep.min_value, s.min_grad_x);
  if (e.tg) {
    ConditionReport cr = curvature_conditions(e, samples);
    rep.condition_420 = cr.frac_pair == 1.0;
  }
  rep.black_hole_verdict = rep.condition_420 && rep.min_value >= 0.0;
  return rep;
}

}  // namespace confhor
