#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "confhor/field.hpp"
#include "confhor/symmat.hpp"

using namespace confhor;

namespace {

// Independent cofactor-expansion inverse for 4x4 (test oracle only).
double det3(double a, double b, double c, double d, double e, double f, double g, double h, double i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

SymMatrix cofactor_inverse4(const SymMatrix& m) {
  double a[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a[i][j] = m(i, j);
  double inv[4][4];
  double det = 0.0;
  for (int j = 0; j < 4; ++j) {
    // minor of (0, j)
    int cols[3], k = 0;
    for (int c = 0; c < 4; ++c)
      if (c != j) cols[k++] = c;
    double mi = det3(a[1][cols[0]], a[1][cols[1]], a[1][cols[2]],
                     a[2][cols[0]], a[2][cols[1]], a[2][cols[2]],
                     a[3][cols[0]], a[3][cols[1]], a[3][cols[2]]);
    det += ((j % 2) ? -1.0 : 1.0) * a[0][j] * mi;
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      int rs[3], cs[3], ri = 0, ci = 0;
      for (int r = 0; r < 4; ++r)
        if (r != i) rs[ri++] = r;
      for (int c = 0; c < 4; ++c)
        if (c != j) cs[ci++] = c;
      double mi = det3(a[rs[0]][cs[0]], a[rs[0]][cs[1]], a[rs[0]][cs[2]],
                       a[rs[1]][cs[0]], a[rs[1]][cs[1]], a[rs[1]][cs[2]],
                       a[rs[2]][cs[0]], a[rs[2]][cs[1]], a[rs[2]][cs[2]]);
      inv[j][i] = (((i + j) % 2) ? -1.0 : 1.0) * mi / det;
    }
  }
  SymMatrix out(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j <= i; ++j) out(i, j) = 0.5 * (inv[i][j] + inv[j][i]);
  return out;
}

// Eigenvalue counter via sign changes of det(m - lambda I) (oracle).
double det4_shift(const SymMatrix& m, double lam) {
  SymMatrix s = m;
  for (int i = 0; i < 4; ++i) s(i, i) = m(i, i) - lam;
  double a[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a[i][j] = s(i, j);
  double det = 0.0;
  for (int j = 0; j < 4; ++j) {
    int cols[3], k = 0;
    for (int c = 0; c < 4; ++c)
      if (c != j) cols[k++] = c;
    double mi = det3(a[1][cols[0]], a[1][cols[1]], a[1][cols[2]],
                     a[2][cols[0]], a[2][cols[1]], a[2][cols[2]],
                     a[3][cols[0]], a[3][cols[1]], a[3][cols[2]]);
    det += ((j % 2) ? -1.0 : 1.0) * a[0][j] * mi;
  }
  return det;
}

Signature charpoly_signature(const SymMatrix& m) {
  double bound = m.norm_inf() + 1.0;
  std::vector<double> roots;
  int ngrid = 20000;
  double prev = det4_shift(m, -bound);
  for (int i = 1; i <= ngrid; ++i) {
    double lam = -bound + 2.0 * bound * i / ngrid;
    double cur = det4_shift(m, lam);
    if ((prev < 0) != (cur < 0)) {
      double lo = lam - 2.0 * bound / ngrid, hi = lam;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if ((det4_shift(m, mid) < 0) == (prev < 0)) lo = mid;
        else hi = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev = cur;
  }
  Signature s;
  double thr = 1e-9 * std::max(m.norm_inf(), 1e-300);
  for (double r : roots) {
    if (r > thr) ++s.pos;
    else if (r < -thr) ++s.neg;
    else ++s.zero;
  }
  return s;
}

// Independent transcription of the worked chart metric, coordinate omega-basis.
SymMatrix schw_omega_metric(double M, double w0, double w1, double th) {
  double T = std::tan(w1), u = std::log(w0);
  double eT = std::exp(-T);
  double B2 = 4.0 * M * M * (1.0 + T * T) / ((1.0 - eT) * (1.0 - eT));
  SymMatrix g(4);
  g(0, 0) = -eT * (w1 / w0) * (w1 / w0);
  g(1, 0) = -eT * w1 * u / w0;
  g(1, 1) = eT * (-u * u + B2);
  g(2, 2) = 4.0 * M * M / ((1.0 - eT) * (1.0 - eT));
  g(3, 3) = g(2, 2) * std::sin(th) * std::sin(th);
  return g;
}

double kerr_rplus(double M, double a) { return M + std::sqrt(M * M - a * a); }

SymMatrix kerr_bl_metric(double M, double a, double r, double th) {
  double S = r * r + a * a * std::cos(th) * std::cos(th);
  double D = r * r + a * a - 2.0 * M * r;
  double s2 = std::sin(th) * std::sin(th);
  SymMatrix g(4);
  g(0, 0) = -(D - a * a * s2) / S;
  g(3, 0) = -a * s2 * (r * r + a * a - D) / S;
  g(1, 1) = S / D;
  g(2, 2) = S;
  g(3, 3) = ((r * r + a * a) * (r * r + a * a) - D * a * a * s2) / S * s2;
  return g;
}

}  // namespace

TEST_CASE("invert_symmetric identity and Minkowski") {
  auto I = SymMatrix::identity(4);
  auto Iinv = invert_symmetric(I);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(Iinv(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-14));

  double mink[] = {-1, 1, 1, 1};
  auto M = SymMatrix::diag(std::span<const double>(mink, 4));
  auto Minv = invert_symmetric(M);
  for (int i = 0; i < 4; ++i) CHECK(Minv(i, i) == doctest::Approx(mink[i]).epsilon(1e-14));
}

TEST_CASE("invert_symmetric Schwarzschild h against cofactor oracle") {
  double M = 1.0;
  SymMatrix g = schw_omega_metric(M, 0.5, M_PI / 4.0, M_PI / 2.0);
  SymMatrix h(4);
  double w1 = M_PI / 4.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j <= i; ++j) h(i, j) = w1 * w1 * g(i, j);
  auto G = invert_symmetric(h);
  auto Gora = cofactor_inverse4(h);
  // residual ||h G - I||
  double resid = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += h(i, k) * G(k, j);
      resid = std::max(resid, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  }
  CHECK(resid < 1e-10);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j <= i; ++j)
      CHECK(G(i, j) == doctest::Approx(Gora(i, j)).epsilon(1e-9));
}

TEST_CASE("invert_symmetric errors") {
  SymMatrix z(4);
  CHECK_THROWS_AS((void)invert_symmetric(z), Error);
  // nearly singular: condition above cap
  double d[] = {1.0, 1.0, 1.0, 1e-14};
  auto m = SymMatrix::diag(std::span<const double>(d, 4));
  CHECK_THROWS_AS((void)invert_symmetric(m, 1e12), Error);
}

TEST_CASE("invert involution property") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    SymMatrix m(4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j <= i; ++j) m(i, j) = U(rng);
      m(i, i) += 3.0;  // keep well-conditioned
    }
    SymMatrix back = invert_symmetric(invert_symmetric(m));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j <= i; ++j)
        CHECK(back(i, j) == doctest::Approx(m(i, j)).epsilon(1e-9));
  }
}

TEST_CASE("signature basics and Kerr") {
  double mink[] = {-1, 1, 1, 1};
  auto s = signature(SymMatrix::diag(std::span<const double>(mink, 4)));
  CHECK(s.neg == 1);
  CHECK(s.pos == 3);
  CHECK(s.zero == 0);

  double dgn[] = {0, 1, 1, 1};
  s = signature(SymMatrix::diag(std::span<const double>(dgn, 4)));
  CHECK(s.neg == 0);
  CHECK(s.pos == 3);
  CHECK(s.zero == 1);

  double M = 1.0, a = 0.5;
  double r = 1.5 * kerr_rplus(M, a);
  SymMatrix g = kerr_bl_metric(M, a, r, M_PI / 3.0);
  s = signature(g);
  CHECK(s.neg == 1);
  CHECK(s.pos == 3);
  CHECK(s.zero == 0);
  Signature oracle = charpoly_signature(g);
  CHECK(oracle.neg == s.neg);
  CHECK(oracle.pos == s.pos);
  CHECK(oracle.zero == s.zero);
}

TEST_CASE("derive: polynomial and 1/r examples") {
  ScalarField f;
  f.dim = 1;
  f.domain.dim = 1;
  f.eval = [](const Pt& p) { return p[0] * p[0]; };
  f.eval_dual = [](const Pt& p, int axis) {
    Dual x(p[0], axis == 0 ? 1.0 : 0.0);
    return x * x;
  };
  Pt p{3.0, 0, 0, 0};
  // Auto picks the dual path for closed-form fields: exact to the ulp
  CHECK(derive(f, p, 0) == doctest::Approx(6.0).epsilon(1e-14));
  DerivativeConfig fd_cfg;
  fd_cfg.scheme = DerivScheme::CentralDifference;
  CHECK(derive(f, p, 0, fd_cfg) == doctest::Approx(6.0).epsilon(1e-8));
  DerivativeConfig dual_cfg;
  dual_cfg.scheme = DerivScheme::DualNumber;
  CHECK(derive(f, p, 0, dual_cfg) == doctest::Approx(6.0).epsilon(1e-14));

  ScalarField inv_r;
  inv_r.dim = 3;
  inv_r.domain.dim = 3;
  inv_r.eval = [](const Pt& p) { return 1.0 / std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]); };
  inv_r.eval_dual = [](const Pt& p, int axis) {
    Dual x(p[0], axis == 0 ? 1.0 : 0.0), y(p[1], axis == 1 ? 1.0 : 0.0), z(p[2], axis == 2 ? 1.0 : 0.0);
    return Dual(1.0) / sqrt(x * x + y * y + z * z);
  };
  Pt q{1.0, 2.0, 2.0, 0.0};
  // d(1/r)/dx at (1,2,2) along the first axis: -x/r^3 = -1/27 with r = 3
  CHECK(derive(inv_r, q, 0, fd_cfg) == doctest::Approx(-1.0 / 27.0).epsilon(1e-8));
  CHECK(derive(inv_r, q, 0, dual_cfg) == doctest::Approx(-1.0 / 27.0).epsilon(1e-12));

  // scheme agreement property
  for (int ax = 0; ax < 3; ++ax)
    CHECK(derive(inv_r, q, ax, fd_cfg) ==
          doctest::Approx(derive(inv_r, q, ax, dual_cfg)).epsilon(1e-6));
}

TEST_CASE("derive: DomainExceeded and one-sided fallback") {
  ScalarField f;
  f.dim = 1;
  f.domain.dim = 1;
  f.domain.lo[0] = 0.0;
  f.domain.hi[0] = 1.0;
  f.eval = [](const Pt& p) { return p[0] * p[0]; };
  Pt edge{0.0, 0, 0, 0};
  DerivativeConfig cfg;
  cfg.richardson_levels = 0;
  CHECK_THROWS_AS((void)derive(f, edge, 0, cfg), Error);
  cfg.one_sided_fallback = true;
  cfg.base_step = 1e-5;
  CHECK(derive(f, edge, 0, cfg) == doctest::Approx(0.0).epsilon(1e-6));
}
