#include "confhor/quadrature.hpp"

#include <cmath>

namespace confhor {

Rule1D gauss_legendre(int n) {
  Rule1D r;
  r.x.resize(static_cast<size_t>(n));
  r.w.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Newton from the Chebyshev-like initial guess
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.x[static_cast<size_t>(n - 1 - i)] = x;
    r.w[static_cast<size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

Rule1D gauss_laguerre(int n) {
  Rule1D r;
  r.x.resize(static_cast<size_t>(n));
  r.w.resize(static_cast<size_t>(n));
  double x = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == 0) x = 3.0 / (1.0 + 2.4 * n);
    else if (i == 1) x += 15.0 / (1.0 + 2.5 * n);
    else x += ((1.0 + 2.55 * (i - 1)) / (1.9 * (i - 1))) * (x - r.x[static_cast<size_t>(i - 2)]);
    for (int it = 0; it < 200; ++it) {
      double p0 = 1.0, p1 = 1.0 - x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0 - x) * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (p1 - p0) / x;
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-14 * std::max(1.0, x)) break;
    }
    double p0 = 1.0, p1 = 1.0 - x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0 - x) * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double lnp1 = ((2.0 * n + 1.0 - x) * p1 - n * p0) / (n + 1.0);  // L_{n+1}(x)
    r.x[static_cast<size_t>(i)] = x;
    r.w[static_cast<size_t>(i)] = x / ((n + 1.0) * (n + 1.0) * lnp1 * lnp1);
  }
  return r;
}

Rule1D mapped(const Rule1D& base, double a, double b) {
  Rule1D r;
  r.x.resize(base.x.size());
  r.w.resize(base.w.size());
  for (size_t i = 0; i < base.x.size(); ++i) {
    r.x[i] = 0.5 * (b - a) * base.x[i] + 0.5 * (a + b);
    r.w[i] = 0.5 * (b - a) * base.w[i];
  }
  return r;
}

QuadratureGrid make_grid(double w1_lo, double w1_hi, int n1, int nang, double eps1) {
  QuadratureGrid g;
  if (eps1 <= 0.0) eps1 = 1e-4 * w1_hi;
  g.eps1 = std::max(eps1, w1_lo);
  g.w1_lo = g.eps1;
  g.w1_hi = w1_hi;
  Rule1D gl = gauss_legendre(n1);
  Rule1D lg = mapped(gl, std::log(g.w1_lo), std::log(w1_hi));
  g.w1.resize(lg.x.size());
  g.wt_log.resize(lg.x.size());
  g.wt_lin.resize(lg.x.size());
  for (size_t i = 0; i < lg.x.size(); ++i) {
    g.w1[i] = std::exp(lg.x[i]);
    g.wt_log[i] = lg.w[i];             // d(omega1)/omega1 = d(ln omega1)
    g.wt_lin[i] = lg.w[i] * g.w1[i];   // d(omega1)
  }
  Rule1D ga = mapped(gauss_legendre(nang), -M_PI / 2.0, M_PI / 2.0);
  g.ang = ga.x;
  g.ang_wt = ga.w;
  return g;
}

}  // namespace confhor
