#include "confhor/verify.hpp"

#include <chrono>
#include <cstring>
#include <cmath>
#include <cstdio>
#include <random>

#include "confhor/chart.hpp"
#include "confhor/closure.hpp"

namespace confhor {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Timer {
  Clock::time_point t0 = Clock::now();
  double ms() const { return ms_since(t0); }
};

std::vector<CatalogEntry> exact_catalog() {
  std::vector<CatalogEntry> v;
  v.push_back(make_schwarzschild(1.0));
  v.push_back(make_reissner_nordstrom(1.0, 2.0));
  v.push_back(make_reissner_nordstrom(2.0, 1.0));
  v.push_back(make_reissner_nordstrom(1.0, 1.0));
  v.push_back(make_roberts(1.0));
  v.push_back(make_kerr(1.0, 0.5));
  return v;
}

std::vector<UPt> interior_samples(const CatalogEntry& e, int n, unsigned seed,
                                  double u_lo = -3.0, double u_hi = -0.05) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<UPt> out;
  // stay in the chart interior; corner conditioning belongs to the closure
  // machinery, not to point samples
  double wmax = e.udomain.hi[1];
  double wmin = std::max(e.udomain.lo[1], 0.1 * wmax);
  int guard = 0;
  while (static_cast<int>(out.size()) < n && ++guard < 50 * n) {
    UPt p;
    p.w1 = wmin + (0.85 * wmax - wmin) * U(rng);
    p.ang = {0.3 + 2.5 * U(rng), 0.0};
    p.u = u_lo + (u_hi - u_lo) * U(rng);
    if (!e.chart_ok(p)) continue;
    out.push_back(p);
  }
  return out;
}

}  // namespace

void print_check(const CheckResult& r) {
  if (r.wallclock) {
    std::printf("[%s] %-66s within-limit=%d tol=%-9.3g %s\n", r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.pass ? 1 : 0, r.tolerance, r.details.c_str());
    std::fprintf(stderr, "  (%s: %.1f ms)\n", r.name.c_str(), r.measured);
    return;
  }
  std::printf("[%s] %-66s measured=%-13.6g expected=%-13.6g tol=%-9.3g %s\n",
              r.pass ? "PASS" : "FAIL", r.name.c_str(), r.measured, r.expected, r.tolerance,
              r.details.c_str());
}

std::vector<CheckResult> verify_remark33() {
  Timer t;
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  auto rand_x = [&] {
    std::array<double, 3> x{U(rng), U(rng), U(rng)};
    while (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] < 0.25) x = {U(rng), U(rng), U(rng)};
    return x;
  };
  struct Fam {
    const char* name;
    ConformalFactor c;
    std::function<double(double)> closed;
  };
  double kap = 2.0, a = 1.3, b = 0.8, cc = 1.1;
  std::vector<Fam> fams;
  fams.push_back({"delta*: Omega=1/r -> 2", ConformalFactor::reciprocal_r(),
                  [](double) { return 2.0; }});
  fams.push_back({"delta*: Omega=1/r^2 -> 3", ConformalFactor::reciprocal_r2(),
                  [](double) { return 3.0; }});
  fams.push_back({"delta*: gaussian -> 1+kr", ConformalFactor::gaussian(0.7, kap),
                  [kap](double r) { return 1.0 + kap * r; }});
  fams.push_back({"delta*: rational -> (b+3cr^2)/(b+cr^2)", ConformalFactor::rational(a, b, cc),
                  [b, cc](double r) {
                    return (b + 3.0 * cc * r * r) / (b + cc * r * r);
                  }});
  std::vector<CheckResult> out;
  for (auto& f : fams) {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      auto x = rand_x();
      double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
      worst = std::max(worst, std::abs(delta_star(x, f.c).value - f.closed(r)));
    }
    CheckResult cr;
    cr.name = f.name;
    cr.measured = worst;
    cr.expected = 0.0;
    cr.tolerance = 1e-12;
    cr.pass = worst < 1e-12;
    cr.ms = t.ms();
    out.push_back(cr);
  }
  CheckResult rt;
  rt.name = "remark33 runtime (< 1 s)";
  rt.measured = t.ms();
  rt.tolerance = 1000.0;
  rt.pass = t.ms() < 1000.0;
  rt.wallclock = true;
  out.push_back(rt);
  return out;
}

namespace {

CheckResult check_profile_closed_form(const CatalogEntry& e, int n_nodes, double tol,
                                      const std::string& label) {
  Timer t;
  std::vector<double> grid;
  for (int j = 0; j < n_nodes; ++j)
    grid.push_back(e.comp.omega_max * (j + 0.5) / n_nodes);
  HorizonProfile prof = horizon_profile(e, grid);
  double worst = 0.0;
  size_t checked = 0;
  for (const auto& n : prof.nodes) {
    if (n.status != NodeStatus::Ok && n.status != NodeStatus::Degenerate) continue;
    double X_closed = std::exp((*e.u_horizon)(n.w1, n.theta));
    worst = std::max(worst, std::abs(n.X - X_closed));
    ++checked;
  }
  CheckResult cr;
  cr.name = label;
  cr.measured = worst;
  cr.tolerance = tol;
  cr.pass = checked >= static_cast<size_t>(3 * n_nodes / 4) && worst < tol;
  cr.details = std::to_string(checked) + "/" + std::to_string(n_nodes) + " nodes";
  cr.ms = t.ms();
  return cr;
}

}  // namespace

std::vector<CheckResult> verify_horizons() {
  std::vector<CheckResult> out;

  // criterion 2: Schwarzschild, M sweep, plus the region sign structure
  Timer t2;
  for (double M : {0.5, 1.0, 2.0}) {
    auto e = make_schwarzschild(M);
    out.push_back(check_profile_closed_form(e, 64, 1e-8,
                                            "schwarzschild horizon M=" + std::to_string(M)));
    std::vector<double> grid;
    for (int j = 0; j < 16; ++j) grid.push_back(e.comp.omega_max * (j + 0.5) / 16.0);
    HorizonProfile prof = horizon_profile(e, grid);
    bool signs = true;
    for (const auto& n : prof.nodes) {
      if (n.status != NodeStatus::Ok) continue;
      UPt p;
      p.w1 = n.w1;
      p.ang = {n.theta, 0.0};
      double above = (n.X + 1e-3 < 1.0) ? n.X + 1e-3 : 0.5 * (1.0 + n.X);
      p.u = std::log(above);
      signs = signs && classify(e, p) == RegionTag::Exterior;
      double below = (n.X > 1.001e-3) ? n.X - 1e-3 : 0.5 * n.X;
      p.u = std::log(below);
      signs = signs && classify(e, p) == RegionTag::Interior;
    }
    CheckResult cr;
    cr.name = "schwarzschild exterior/interior offsets M=" + std::to_string(M);
    cr.pass = signs;
    cr.measured = signs ? 1.0 : 0.0;
    cr.expected = 1.0;
    cr.ms = t2.ms();
    out.push_back(cr);
  }
  {
    CheckResult rt;
    rt.name = "schwarzschild horizon suite runtime (< 10 s)";
    rt.measured = t2.ms();
    rt.tolerance = 10000.0;
    rt.pass = t2.ms() < 10000.0;
    rt.wallclock = true;
    out.push_back(rt);
  }

  // criterion 3: RN branches under two compactifiers + verdict invariance
  for (auto [M, Q] : {std::pair{1.0, 2.0}, {2.0, 1.0}, {1.0, 1.0}}) {
    auto base = make_reissner_nordstrom(M, Q);
    RadialCompactifier alt = rc_exp(1.0, 0.5, base.comp.r_lo, base.comp.r_hi);
    CatalogEntry e2 = base.remake(alt);
    std::string tag = base.id + " M=" + std::to_string(M) + " Q=" + std::to_string(Q);
    out.push_back(check_profile_closed_form(base, 64, 1e-8, tag + " (default h)"));
    out.push_back(check_profile_closed_form(e2, 64, 1e-8, tag + " (exp h)"));
    NakedVerdict va = apparent_closure(base);
    NakedVerdict vb = apparent_closure(e2);
    CheckResult cr;
    cr.name = tag + " verdict invariance";
    cr.pass = va.verdict == vb.verdict;
    cr.measured = va.verdict == Verdict::Naked ? 1.0 : 0.0;
    cr.expected = vb.verdict == Verdict::Naked ? 1.0 : 0.0;
    out.push_back(cr);
  }

  // positive-factor invariance of the catalog closed forms
  for (const auto& e : exact_catalog()) {
    Timer t7;
    auto samples = interior_samples(e, 200, 707);
    double ratio_min = 1e300, ratio_max = -1e300;
    bool positive = true;
    for (const auto& p : samples) {
      double mg = e.mass(p), mp = (*e.m_closed)(p);
      if (std::abs(mg) < 1e-14 || std::abs(mp) < 1e-14) continue;
      double ratio = mp / mg;
      positive = positive && ratio > 0.0;
      ratio_min = std::min(ratio_min, ratio);
      ratio_max = std::max(ratio_max, ratio);
    }
    // zero sets coincide: |m_generic| at the closed-form horizon within 10x
    // the root tolerance scale
    bool zeros = true;
    for (int j = 2; j < 14; ++j) {
      double w1 = e.comp.omega_max * (j + 0.5) / 16.0;
      double th = (e.id == "kerr") ? M_PI / 3.0 : M_PI / 2.0;
      if (e.id == "kerr") {
        double r = e.comp.r_of_w1(w1);
        if (r <= kerr_ergosphere_radius(e.params.at("M"), e.params.at("a"), th) * 1.001) continue;
      }
      double uh = (*e.u_horizon)(w1, th);
      if (!(uh < -1e-12) || uh < -1e8) continue;
      UPt p;
      p.u = uh;
      p.w1 = w1;
      p.ang = {th, 0.0};
      if (!e.chart_ok(p)) continue;
      double dm = e.dmass(p, 0);
      zeros = zeros && std::abs(e.mass(p)) < 1e-9 * std::abs(dm * uh) * 10.0;
    }
    CheckResult cr;
    cr.name = e.id + " closed/generic factor positive, zero sets coincide";
    cr.pass = positive && zeros;
    cr.measured = ratio_min;
    cr.expected = ratio_max;
    cr.details = "pointwise ratio in [" + std::to_string(ratio_min) + ", " +
                 std::to_string(ratio_max) + "]";
    cr.ms = t7.ms();
    out.push_back(cr);
  }
  return out;
}

std::vector<CheckResult> verify_verdicts() {
  std::vector<CheckResult> out;
  Timer t4;
  for (const auto& e : exact_catalog()) {
    Timer te;
    VerdictCheck ck = verdict(e);
    CheckResult cr;
    cr.name = "naked verdict: " + e.id;
    cr.pass = ck.verdict_match && ck.location_match && !ck.computed.any_inconclusive;
    cr.measured = ck.computed.verdict == Verdict::Naked ? 1.0 : 0.0;
    cr.expected = e.expected.verdict == Verdict::Naked ? 1.0 : 0.0;
    for (const auto& lp : ck.computed.limit_points)
      cr.details += "(omega1=" + std::to_string(lp.w1) + ", theta=" + std::to_string(lp.theta) + ") ";
    if (ck.computed.limit_points.empty()) cr.details = "empty closure";
    cr.ms = te.ms();
    out.push_back(cr);
  }
  CheckResult rt;
  rt.name = "verdict suite runtime (< 2 min)";
  rt.measured = t4.ms();
  rt.tolerance = 120000.0;
  rt.pass = t4.ms() < 120000.0;
  rt.wallclock = true;
  out.push_back(rt);

  // criterion 5: Kerr ergosphere sign flip of h(d/dw0, d/dw0)
  Timer t5;
  double M = 1.0, a = 0.5;
  auto e = make_kerr(M, a);
  double worst = 0.0;
  for (int k = 0; k < 16; ++k) {
    double th = M_PI * (k + 0.5) / 16.0;
    double rstar = kerr_ergosphere_radius(M, a, th);
    // h(d/dw0, d/dw0) has the sign of g_b(0,0), i.e. of Delta - a^2 sin^2;
    // the component continues through the ergosphere in the x chart
    auto sgn = [&](double r) {
      double s2 = std::sin(th) * std::sin(th);
      double D = r * r + a * a - 2.0 * M * r;
      return D - a * a * s2;
    };
    double lo = kerr_rplus(M, a) * 1.0001, hi = 4.0;
    if (!(sgn(lo) < 0.0 && sgn(hi) > 0.0)) continue;
    double rflip = bisect_root(sgn, lo, hi, 1e-12);
    worst = std::max(worst, std::abs(rflip - rstar));
  }
  CheckResult c5;
  c5.name = "kerr ergosphere crossings (16 theta samples)";
  c5.measured = worst;
  c5.tolerance = 1e-6;
  c5.pass = worst < 1e-6;
  c5.ms = t5.ms();
  out.push_back(c5);
  return out;
}

std::vector<CheckResult> verify_gradients() {
  std::vector<CheckResult> out;

  // criterion 6: FD vs dual vs (temporal-gauge) closed form, 1e4 samples
  Timer t6;
  auto catalog = exact_catalog();
  catalog.push_back(make_synthetic_collapse());
  {
    SyntheticSpec iso;
    iso.isotropic = true;
    catalog.push_back(make_synthetic_collapse(iso));
  }
  size_t n_signs = 0, n_val = 0, n_cf = 0;
  size_t bad_signs = 0, bad_val = 0, bad_cf = 0;
  for (const auto& e : catalog) {
    auto samples = interior_samples(e, 10000 / catalog.size() + 1, 606);
    for (const auto& p : samples) {
      double m = e.mass(p);
      double dual_du = e.dmass(p, 0);
      // scaled resolvability gate: the w0-slope must rise above the FD noise
      // floor set by the local |m| magnitude
      if (!(std::abs(dual_du) > 1e-6 * std::abs(m))) continue;
      double w0 = std::exp(p.u);
      auto m_at = [&](double w0v) {
        UPt q = p;
        q.u = std::log(w0v);
        return e.mass(q);
      };
      // Richardson-extrapolated central difference in omega^0
      double h = 1e-4 * w0;
      double d1 = (m_at(w0 + h) - m_at(w0 - h)) / (2.0 * h);
      double d2 = (m_at(w0 + h / 2) - m_at(w0 - h / 2)) / h;
      double d4 = (m_at(w0 + h / 4) - m_at(w0 - h / 4)) / (h / 2);
      double fd = (16.0 * (4.0 * d4 - d2) / 3.0 - (4.0 * d2 - d1) / 3.0) / 15.0;
      double dual_dw0 = dual_du / w0;
      ++n_signs;
      if (fd * dual_dw0 < 0.0) ++bad_signs;
      ++n_val;
      if (std::abs(fd - dual_dw0) > 1e-5 * std::abs(dual_dw0)) ++bad_val;
      if (e.tg) {
        double cf = dm_du_closed_form(e, p) / w0;
        ++n_cf;
        if (cf * dual_dw0 < 0.0) ++bad_cf;
      }
    }
  }
  CheckResult c6;
  c6.name = "gradient cross-check FD/dual/closed-form";
  c6.pass = bad_signs == 0 && bad_val == 0 && bad_cf == 0;
  c6.measured = static_cast<double>(bad_signs + bad_val + bad_cf);
  c6.expected = 0.0;
  c6.details = std::to_string(n_signs) + " sign pairs, " + std::to_string(n_val) +
               " value pairs, " + std::to_string(n_cf) + " closed-form pairs";
  c6.ms = t6.ms();
  out.push_back(c6);

  // criterion 9: second-variation identity and sign
  Timer t9;
  auto e = make_synthetic_collapse();
  auto samples = interior_samples(e, 1000, 909);
  double worst = 0.0;
  for (const auto& p : samples) {
    double w0 = std::exp(p.u);
    // the FD side runs on the closed form (a cross-pipeline identity check:
    // catalog finite differences against the generic dual derivative)
    auto mstar = [&](double w0v) {
      UPt q = p;
      q.u = std::log(w0v);
      return w0v * p.w1 * (*e.m_closed)(q);
    };
    // Richardson-extrapolated central difference for dm*/dw0
    double h = 1e-4 * w0;
    double d1 = (mstar(w0 + h) - mstar(w0 - h)) / (2.0 * h);
    double d2 = (mstar(w0 + h / 2) - mstar(w0 - h / 2)) / h;
    double d4 = (mstar(w0 + h / 4) - mstar(w0 - h / 4)) / (h / 2);
    double r1 = (4.0 * d2 - d1) / 3.0;
    double r2 = (4.0 * d4 - d2) / 3.0;
    double dmstar = (16.0 * r2 - r1) / 15.0;
    double lhs = w0 * dmstar - mstar(w0);
    double rhs = p.w1 * w0 * e.dmass(p, 0);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
  }
  CheckResult c9;
  c9.name = "second-variation identity (1e3 samples)";
  c9.measured = worst;
  c9.tolerance = 1e-8;
  c9.pass = worst < 1e-8;
  c9.ms = t9.ms();
  out.push_back(c9);

  CheckResult c9b;
  c9b.name = "second-variation quantity non-positive under the curvature pair";
  c9b.pass = second_variation_sign(e, samples);
  c9b.measured = c9b.pass ? 1.0 : 0.0;
  c9b.expected = 1.0;
  c9b.ms = t9.ms();
  out.push_back(c9b);
  return out;
}

std::vector<CheckResult> verify_penrose() {
  std::vector<CheckResult> out;
  auto e = make_synthetic_collapse();

  // criterion 8: Euler identity
  {
    Timer t;
    BoundOpts opt;
    opt.n1 = 24;
    opt.nang = 6;
    BoundGrid g = make_bound_grid(e, opt);
    double smin = 1e300;
    for (size_t id = 0; id < g.n_nodes; ++id) smin = std::min(smin, g.X[id]);
    double s = 0.3 * smin;
    DeformationFamily f = tstar_family(g);
    double worst = euler_residual(e, g, f, s, opt);
    for (int mode = 1; mode <= 5; ++mode) {
      DeformationFamily fp = perturbed_family(g, 0.08 + 0.04 * mode, mode, 13u * mode);
      worst = std::max(worst, euler_residual(e, g, fp, s, opt));
    }
    CheckResult cr;
    cr.name = "euler identity residual (T* and 5 perturbations)";
    cr.measured = worst;
    cr.tolerance = 1e-6;
    cr.pass = worst < 1e-6;
    cr.ms = t.ms();
    out.push_back(cr);

    BoundOpts coarse = opt, fine = opt;
    coarse.s_step = 1e-4;
    fine.s_step = 5e-5;
    DeformationFamily fp = perturbed_family(g, 0.2, 3, 5);
    double ra = euler_residual(e, g, fp, s, coarse);
    double rb = euler_residual(e, g, fp, s, fine);
    CheckResult ch;
    ch.name = "euler residual halves at least linearly with the s-step";
    ch.measured = rb;
    ch.expected = ra;
    ch.pass = rb <= 0.55 * ra;
    ch.details = "coarse " + std::to_string(ra) + " -> fine " + std::to_string(rb);
    out.push_back(ch);
  }

  // criterion 10: the bound, grid doubling, compactifier swap
  {
    Timer t;
    BoundOpts o32;
    o32.n1 = 32;
    o32.nang = 32;
    BoundOpts o64 = o32;
    o64.n1 = 64;
    o64.nang = 64;
    BoundReport r32 = penrose_bound(e, o32);
    BoundReport r64 = penrose_bound(e, o64);
    SyntheticSpec swap;
    swap.theta = 3e6;
    swap.kappa = 2.0;
    auto e2 = make_synthetic_collapse(swap);
    BoundReport s32 = penrose_bound(e2, o32);
    BoundReport s64 = penrose_bound(e2, o64);

    CheckResult cr;
    cr.name = "penrose bound M^2 > rhs, stable under grid doubling and Omega swap";
    cr.pass = r32.inequality && r64.inequality && s32.inequality && s64.inequality;
    cr.measured = r32.M_sq;
    cr.expected = r32.rhs_bound;
    cr.details = "A: M^2=" + std::to_string(r32.M_sq) + " rhs=" + std::to_string(r32.rhs_bound) +
                 "; B: M^2=" + std::to_string(s32.M_sq) + " rhs=" + std::to_string(s32.rhs_bound);
    cr.ms = t.ms();
    out.push_back(cr);

    CheckResult cd;
    cd.name = "conserved deformation integral drift along T*";
    cd.measured = std::max(r32.conserved_drift, r64.conserved_drift);
    cd.tolerance = 1e-5;
    cd.pass = cd.measured < 1e-5;
    out.push_back(cd);

    CheckResult ci;
    ci.name = "isoperimetric endpoint areas agree";
    ci.measured = std::max(r32.isoperimetric_gap, r64.isoperimetric_gap);
    ci.tolerance = 1e-8;
    ci.pass = ci.measured < 1e-8;
    out.push_back(ci);

    CheckResult ct;
    ct.name = "penrose bound runtime (< 5 min)";
    ct.measured = t.ms();
    ct.tolerance = 300000.0;
    ct.pass = t.ms() < 300000.0;
    ct.wallclock = true;
    out.push_back(ct);
  }

  // criterion 11: stay criterion
  {
    Timer t;
    double w1 = e.comp.h(6.0);
    HorizonNode n = horizon_root(e, w1, 1.3);
    double w0_start = 0.25 * n.X;
    ZField Z = [](const Pt&) { return std::array<double, 4>{1.0, 0.0, 0.0, 0.0}; };
    StayResult res = stay_criterion(e, {w0_start, w1, 1.3, 0.0}, Z, 10.0);
    CheckResult cr;
    cr.name = "stay criterion exit parameter for Z=(1,0,0,0)";
    cr.measured = res.exit_s;
    cr.expected = n.X - w0_start;
    cr.tolerance = 1e-6;
    cr.pass = !res.stays && std::abs(res.exit_s - (n.X - w0_start)) < 1e-6;
    cr.ms = t.ms();
    out.push_back(cr);

    ZField Zin = [](const Pt&) { return std::array<double, 4>{-1.0, 0.0, 0.05, 0.0}; };
    StayResult rin = stay_criterion(e, {w0_start, w1, 1.3, 0.0}, Zin, 10.0);
    CheckResult ci;
    ci.name = "grad_X m >= 0 family stays over s_max = 10";
    ci.pass = rin.stays;
    ci.measured = rin.stays ? 1.0 : 0.0;
    ci.expected = 1.0;
    out.push_back(ci);
  }
  return out;
}

namespace {

std::vector<double> determinism_payload() {
  // a numeric digest spanning the threaded paths
  std::vector<double> v;
  auto e = make_synthetic_collapse();
  BoundOpts opt;
  opt.n1 = 24;
  opt.nang = 8;
  BoundReport r = penrose_bound(e, opt);
  v.insert(v.end(), {r.M_sq, r.J_at_Tstar, r.rhs_bound, r.area_A, r.numerator,
                     r.denominator, r.lambda, r.euler_residual_max});
  auto s = make_schwarzschild(1.0);
  std::vector<double> grid;
  for (int j = 0; j < 48; ++j) grid.push_back(s.comp.omega_max * (j + 0.5) / 48.0);
  HorizonProfile prof = horizon_profile(s, grid);
  for (const auto& n : prof.nodes) {
    v.push_back(n.u_root);
    v.push_back(n.dm_du);
  }
  NakedVerdict nv = apparent_closure(make_reissner_nordstrom(2.0, 1.0));
  for (const auto& sc : nv.scans) {
    v.push_back(sc.p_fit);
    for (double c : sc.c) v.push_back(c);
  }
  return v;
}

}  // namespace

std::vector<CheckResult> verify_determinism() {
  Timer t;
  set_worker_count(1);
  auto a = determinism_payload();
  set_worker_count(8);
  auto b = determinism_payload();
  set_worker_count(0);
  bool same = a.size() == b.size();
  size_t diffs = 0;
  for (size_t i = 0; same && i < a.size(); ++i)
    if (std::memcmp(&a[i], &b[i], sizeof(double)) != 0) ++diffs;
  CheckResult cr;
  cr.name = "determinism: 1 vs 8 worker threads bit-identical";
  cr.pass = same && diffs == 0;
  cr.measured = static_cast<double>(diffs);
  cr.expected = 0.0;
  cr.details = std::to_string(a.size()) + " numbers compared";
  cr.ms = t.ms();
  return {cr};
}

std::vector<CheckResult> verify_suite(const std::string& name) {
  if (name == "remark33") return verify_remark33();
  if (name == "horizons") return verify_horizons();
  if (name == "verdicts") return verify_verdicts();
  if (name == "gradients") return verify_gradients();
  if (name == "penrose") return verify_penrose();
  if (name == "determinism") return verify_determinism();
  if (name == "all") {
    std::vector<CheckResult> out;
    for (const char* s : {"remark33", "horizons", "verdicts", "gradients", "penrose", "determinism"}) {
      auto v = verify_suite(s);
      out.insert(out.end(), v.begin(), v.end());
    }
    return out;
  }
  throw Error(Err::ConfigError, "unknown verify suite: " + name);
}

}  // namespace confhor
