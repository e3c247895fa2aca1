#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "confhor/catalog.hpp"
#include "confhor/chart.hpp"

using namespace confhor;

TEST_CASE("forward map basics") {
  auto c = ConformalFactor::reciprocal_r();
  c.set_r_domain(0.1, 1e6);
  // x^0 = 0 -> omega^0 = 1
  CompactPoint w = chart_forward({0.0, 3.0, 4.0, 0.0}, c);
  CHECK(w.w0 == doctest::Approx(1.0));
  // Omega=1/r, x=(1,3,4,0): r=5 -> omega = (e^-5, 1/5, arctan 20, 0)
  w = chart_forward({1.0, 3.0, 4.0, 0.0}, c);
  CHECK(w.w0 == doctest::Approx(std::exp(-5.0)).epsilon(1e-12));
  CHECK(w.w1 == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(w.wa[0] == doctest::Approx(std::atan(20.0)).epsilon(1e-12));
  CHECK(w.wa[1] == doctest::Approx(0.0));
  // x = (r, r, 0, 0): omega^0 = exp(-r^2)
  w = chart_forward({2.0, 2.0, 0.0, 0.0}, c);
  CHECK(w.w0 == doctest::Approx(std::exp(-4.0)).epsilon(1e-12));
  CHECK_THROWS_AS((void)chart_forward({-1.0, 3.0, 4.0, 0.0}, c), Error);
}

TEST_CASE("inverse: round trip and patch violation") {
  ChartMap map;
  map.conformal = ConformalFactor::reciprocal_r();
  map.conformal.set_r_domain(0.05, 1e9);
  // worked example
  CompactPoint w;
  w.w0 = std::exp(-5.0);
  w.w1 = 0.2;
  w.wa = {std::atan(20.0), 0.0};
  Pt x = chart_inverse(w, map);
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(x[1] == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(x[2] == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(x[3] == doctest::Approx(0.0));

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    Pt p;
    p[0] = 5.0 * U(rng);
    p[1] = 1.0 + 10.0 * U(rng);
    p[2] = 2.0 * U(rng) - 1.0;
    p[3] = 2.0 * U(rng) - 1.0;
    CompactPoint cw = chart_forward(p, map.conformal);
    Pt back = chart_inverse(cw, map);
    for (int i = 0; i < 4; ++i)
      CHECK(back[static_cast<size_t>(i)] ==
            doctest::Approx(p[static_cast<size_t>(i)]).epsilon(1e-9).scale(1.0));
  }

  // forced patch violation: large angular components vs small r
  CompactPoint bad;
  bad.w0 = 0.5;
  bad.w1 = 0.5;  // r = 2
  bad.wa = {std::atan(10.0), std::atan(10.0)};  // x^a = 5 each
  CHECK_THROWS_AS((void)chart_inverse(bad, map), Error);

  // omega^1 outside the radial range is NotInvertible
  CompactPoint oob;
  oob.w0 = 0.5;
  oob.w1 = 25.0;  // above Omega(r_min)
  bool not_invertible = false;
  try {
    (void)chart_inverse(oob, map);
  } catch (const Error& err) {
    not_invertible = err.code() == Err::NotInvertible;
  }
  CHECK(not_invertible);

  // non-radial conformal factor: forward-only support
  ChartMap gen;
  gen.conformal = ConformalFactor::general(
      [](const std::array<double, 3>& x) { return 1.0 / (1.0 + std::abs(x[0]) + x[1] * x[1]); },
      [](const std::array<double, 3>& x) {
        double d = 1.0 + std::abs(x[0]) + x[1] * x[1];
        return std::array<double, 3>{-(x[0] > 0 ? 1.0 : -1.0) / (d * d), -2.0 * x[1] / (d * d), 0.0};
      });
  CompactPoint ok;
  ok.w0 = 0.5;
  ok.w1 = 0.2;
  CHECK_THROWS_AS((void)chart_inverse(ok, gen), Error);
}

TEST_CASE("delta_star reproduces the closed-form families") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  auto rand_x = [&] {
    std::array<double, 3> x{U(rng), U(rng), U(rng)};
    while (std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]) < 0.3) x = {U(rng), U(rng), U(rng)};
    return x;
  };
  for (int k = 0; k < 100; ++k) {
    auto x = rand_x();
    double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    CHECK(delta_star(x, ConformalFactor::reciprocal_r()).value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(delta_star(x, ConformalFactor::reciprocal_r2()).value == doctest::Approx(3.0).epsilon(1e-12));
    double kap = 2.0;
    CHECK(delta_star(x, ConformalFactor::gaussian(0.7, kap)).value ==
          doctest::Approx(1.0 + kap * r).epsilon(1e-12));
    double a = 1.3, b = 0.8, cc = 1.1;
    CHECK(delta_star(x, ConformalFactor::rational(a, b, cc)).value ==
          doctest::Approx((b + 3.0 * cc * r * r) / (b + cc * r * r)).epsilon(1e-12));
  }
  // spot values of the closed-form families
  std::array<double, 3> p{3.0, 0.0, 0.0};
  CHECK(delta_star(p, ConformalFactor::gaussian(1.0, 2.0)).value == doctest::Approx(7.0));
  std::array<double, 3> q{1.0, 0.0, 0.0};
  CHECK(delta_star(q, ConformalFactor::rational(1.0, 1.0, 1.0)).value == doctest::Approx(2.0));
}

TEST_CASE("polar-radial chart pullback matches the catalog assembly") {
  // pull the static RN metric through the polar chart machinery and compare
  // against the entry's own b-basis components
  auto e = make_reissner_nordstrom(1.0, 2.0);
  ChartMap map;
  map.style = ChartStyle::PolarRadial;
  map.conformal = ConformalFactor::radial_custom(e.comp.h, e.comp.hp);
  map.conformal.set_r_domain(e.comp.r_lo + 1e-6, 1e9);
  double M = 1.0, Q = 2.0;
  XMetric g_x = [M, Q](const Pt& trx) {
    double r = trx[1], th = trx[2];
    double F = 1.0 - 2.0 * M / r + Q * Q / (r * r);
    SymMatrix g(4);
    g(0, 0) = -F;
    g(1, 1) = 1.0 / F;
    g(2, 2) = r * r;
    g(3, 3) = r * r * std::sin(th) * std::sin(th);
    return g;
  };
  for (double r : {0.8, 2.0, 7.0}) {
    CompactPoint w;
    w.w0 = 0.42;
    w.w1 = e.comp.h(r);
    w.wa = {1.1, 0.3};
    SymMatrix hb = pullback_metric(g_x, w, map, true);
    UPt p;
    p.u = std::log(w.w0);
    p.w1 = w.w1;
    p.ang = {1.1, 0.3};
    SymMatrix gb = e.metric->g_b(p);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j <= i; ++j)
        CHECK(hb(i, j) ==
              doctest::Approx(w.w1 * w.w1 * gb(i, j)).epsilon(1e-8).scale(std::abs(gb(i, j)) + 1e-12));

    // polar forward/inverse round trip
    Pt x = chart_inverse(w, map);
    CompactPoint back = chart_forward_polar(x, map.conformal);
    CHECK(back.w0 == doctest::Approx(w.w0).epsilon(1e-10));
    CHECK(back.w1 == doctest::Approx(w.w1).epsilon(1e-10));
    CHECK(back.wa[0] == doctest::Approx(w.wa[0]));
  }
}

TEST_CASE("delta_star flags coordinate singularities") {
  // Omega = r makes Delta* = 1 - sum z^i dOmega/dx^i = 0 identically
  auto c = ConformalFactor::general(
      [](const std::array<double, 3>& x) {
        return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
      },
      [](const std::array<double, 3>& x) {
        double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        return std::array<double, 3>{x[0] / r, x[1] / r, x[2] / r};
      });
  DeltaStar d = delta_star({1.2, -0.4, 0.7}, c);
  CHECK(d.coordinate_singular);
  CHECK(std::abs(d.value) < 1e-10);
  CHECK(!delta_star({1.2, -0.4, 0.7}, ConformalFactor::reciprocal_r()).coordinate_singular);
}

TEST_CASE("jacobian duality: forward FD jacobian times J_b is the identity") {
  ChartMap map;
  map.conformal = ConformalFactor::reciprocal_r();
  map.conformal.set_r_domain(0.05, 1e9);
  CompactPoint w;
  w.w0 = 0.37;
  w.w1 = 0.21;
  w.wa = {0.3, -0.2};
  auto J = jacobian_b(w, map);
  Pt x = chart_inverse(w, map);

  auto omega_b = [&](const Pt& p) -> std::array<double, 4> {
    std::array<double, 3> xs{p[1], p[2], p[3]};
    double om = map.conformal.omega(xs);
    return {-p[0] / om, std::log(om), std::atan(p[2] / om), std::atan(p[3] / om)};
  };
  double eps = 1e-7;
  double P[4][4];
  for (int j = 0; j < 4; ++j) {
    Pt a = x, b = x;
    a[static_cast<size_t>(j)] += eps;
    b[static_cast<size_t>(j)] -= eps;
    auto fa = omega_b(a), fb = omega_b(b);
    for (int i = 0; i < 4; ++i) P[i][j] = (fa[static_cast<size_t>(i)] - fb[static_cast<size_t>(i)]) / (2 * eps);
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += P[i][k] * J[static_cast<size_t>(k)][static_cast<size_t>(j)];
      CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-7).scale(1.0));
    }
  }
}

TEST_CASE("pullback of flat metric: symmetric, Lorentzian, b-basis scaling") {
  ChartMap map;
  map.conformal = ConformalFactor::reciprocal_r();
  map.conformal.set_r_domain(0.05, 1e9);
  XMetric flat = [](const Pt&) {
    double d[] = {-1, 1, 1, 1};
    return SymMatrix::diag(std::span<const double>(d, 4));
  };
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 40; ++k) {
    CompactPoint w;
    w.w0 = 0.05 + 0.9 * U(rng);
    w.w1 = 0.05 + 0.6 * U(rng);
    w.wa = {0.6 * (U(rng) - 0.5), 0.6 * (U(rng) - 0.5)};
    SymMatrix h = pullback_metric(flat, w, map, false);
    auto s = signature(h);
    CHECK(s.neg == 1);
    CHECK(s.pos == 3);
    CHECK(s.zero == 0);
    SymMatrix hb = pullback_metric(flat, w, map, true);
    CHECK(hb(0, 0) == doctest::Approx(w.w0 * w.w0 * h(0, 0)).epsilon(1e-12));
    CHECK(hb(1, 1) == doctest::Approx(w.w1 * w.w1 * h(1, 1)).epsilon(1e-12));
    CHECK(hb(1, 0) == doctest::Approx(w.w0 * w.w1 * h(1, 0)).epsilon(1e-12));
    CHECK(hb(2, 0) == doctest::Approx(w.w0 * h(2, 0)).epsilon(1e-12).scale(1.0));
    CHECK(hb(2, 2) == doctest::Approx(h(2, 2)).epsilon(1e-14));
  }
}

TEST_CASE("pullback round trip recovers (w1)^2 g in the x basis") {
  ChartMap map;
  map.conformal = ConformalFactor::reciprocal_r();
  map.conformal.set_r_domain(0.05, 1e9);
  XMetric g = [](const Pt& x) {
    SymMatrix m(4);
    m(0, 0) = -1.2 - 0.1 * std::sin(x[1]);
    m(1, 1) = 1.0 + 0.05 * x[2] * x[2] / (1 + x[2] * x[2]);
    m(2, 2) = 1.1;
    m(3, 3) = 0.9;
    m(1, 0) = 0.02;
    return m;
  };
  CompactPoint w;
  w.w0 = 0.4;
  w.w1 = 0.3;
  w.wa = {0.25, -0.15};
  SymMatrix hb = pullback_metric(g, w, map, true);
  auto J = jacobian_b(w, map);
  // push forward: g_x = J^{-T} (hb/(w1)^2) J^{-1}; equivalently check hb = w1^2 J^T g J
  Pt x = chart_inverse(w, map);
  SymMatrix gx = g(x);
  for (int c = 0; c < 4; ++c) {
    for (int d = 0; d <= c; ++d) {
      double s = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          s += J[static_cast<size_t>(a)][static_cast<size_t>(c)] *
               J[static_cast<size_t>(b)][static_cast<size_t>(d)] * gx(a, b);
      CHECK(hb(c, d) == doctest::Approx(w.w1 * w.w1 * s).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("transform_covector: eta_0 = -w1 xi_0 and pairing invariance") {
  ChartMap map;
  map.conformal = ConformalFactor::reciprocal_r();
  map.conformal.set_r_domain(0.05, 1e9);
  CompactPoint w;
  w.w0 = 0.45;
  w.w1 = 0.27;
  w.wa = {0.2, 0.1};
  auto eta = transform_covector({1, 0, 0, 0}, w, map);
  CHECK(eta[0] == doctest::Approx(-w.w1).epsilon(1e-12));
  auto zero = transform_covector({0, 0, 0, 0}, w, map);
  for (double e : zero) CHECK(e == 0.0);

  // pairing invariance: <xi, v>_x = <eta, v_b>_omega for v pushed forward
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  auto J = jacobian_b(w, map);
  for (int k = 0; k < 20; ++k) {
    std::array<double, 4> xi{U(rng), U(rng), U(rng), U(rng)};
    std::array<double, 4> vb{U(rng), U(rng), U(rng), U(rng)};  // components on b-frame vectors
    // x-frame components of the vector: v^alpha = J[alpha][c] vb[c]
    std::array<double, 4> vx{};
    for (int a = 0; a < 4; ++a)
      for (int c = 0; c < 4; ++c)
        vx[static_cast<size_t>(a)] += J[static_cast<size_t>(a)][static_cast<size_t>(c)] * vb[static_cast<size_t>(c)];
    auto et = transform_covector(xi, w, map);
    double p1 = 0.0, p2 = 0.0;
    for (int i = 0; i < 4; ++i) {
      p1 += xi[static_cast<size_t>(i)] * vx[static_cast<size_t>(i)];
      p2 += et[static_cast<size_t>(i)] * vb[static_cast<size_t>(i)];
    }
    CHECK(p1 == doctest::Approx(p2).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("jacobian determinant carries Delta*/Omega^(n+1)") {
  // det(dz/dx) = Delta* / Omega^{n+1}; confirms the recorded power for n = 3.
  auto c = ConformalFactor::reciprocal_r();
  c.set_r_domain(0.05, 1e9);
  Pt x{0.7, 1.1, 0.6, -0.4};
  std::array<double, 3> xs{x[1], x[2], x[3]};
  double om = c.omega(xs);
  auto z_of = [&](const Pt& p) -> std::array<double, 4> {
    std::array<double, 3> s{p[1], p[2], p[3]};
    double o = c.omega(s);
    return {p[0] / o, p[1] / o, p[2] / o, p[3] / o};
  };
  double eps = 1e-6, Jm[4][4];
  for (int j = 0; j < 4; ++j) {
    Pt a = x, b = x;
    a[static_cast<size_t>(j)] += eps;
    b[static_cast<size_t>(j)] -= eps;
    auto fa = z_of(a), fb = z_of(b);
    for (int i = 0; i < 4; ++i) Jm[i][j] = (fa[static_cast<size_t>(i)] - fb[static_cast<size_t>(i)]) / (2 * eps);
  }
  // 4x4 determinant by expansion
  auto det3x = [](double a, double b, double c2, double d, double e, double f, double g, double h, double i) {
    return a * (e * i - f * h) - b * (d * i - f * g) + c2 * (d * h - e * g);
  };
  double det = 0.0;
  for (int j = 0; j < 4; ++j) {
    int cols[3], k = 0;
    for (int cc = 0; cc < 4; ++cc)
      if (cc != j) cols[k++] = cc;
    double mi = det3x(Jm[1][cols[0]], Jm[1][cols[1]], Jm[1][cols[2]],
                      Jm[2][cols[0]], Jm[2][cols[1]], Jm[2][cols[2]],
                      Jm[3][cols[0]], Jm[3][cols[1]], Jm[3][cols[2]]);
    det += ((j % 2) ? -1.0 : 1.0) * Jm[0][j] * mi;
  }
  double dstar = delta_star(xs, c).value;
  CHECK(det == doctest::Approx(dstar / std::pow(om, 4)).epsilon(1e-5));
}
