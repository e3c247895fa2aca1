#include "confhor/field.hpp"

#include <cmath>

namespace confhor {

namespace {

double central_diff(const ScalarField& f, const Pt& p, int axis, double h, bool one_sided_ok) {
  Pt a = p, b = p;
  a[static_cast<size_t>(axis)] += h;
  b[static_cast<size_t>(axis)] -= h;
  bool ain = f.domain.contains(a), bin = f.domain.contains(b);
  if (ain && bin) return (f.eval(a) - f.eval(b)) / (2.0 * h);
  if (!one_sided_ok) throw Error(Err::DomainExceeded, "stencil leaves domain");
  // second-order one-sided
  Pt p1 = p, p2 = p;
  double s = ain ? 1.0 : -1.0;
  p1[static_cast<size_t>(axis)] += s * h;
  p2[static_cast<size_t>(axis)] += 2.0 * s * h;
  if (!f.domain.contains(p1) || !f.domain.contains(p2))
    throw Error(Err::DomainExceeded, "one-sided stencil leaves domain");
  return s * (-3.0 * f.eval(p) + 4.0 * f.eval(p1) - f.eval(p2)) / (2.0 * h);
}

}  // namespace

double derive(const ScalarField& f, const Pt& p, int axis, const DerivativeConfig& cfg) {
  if (!f.domain.contains(p)) throw Error(Err::DomainExceeded, "point outside field domain");
  bool use_dual = cfg.scheme == DerivScheme::DualNumber ||
                  (cfg.scheme == DerivScheme::Auto && f.eval_dual);
  if (use_dual) {
    if (!f.eval_dual) throw Error(Err::ConfigError, "field has no dual-number evaluator");
    return f.eval_dual(p, axis).d;
  }
  double h0 = cfg.base_step * std::max(1.0, std::abs(p[static_cast<size_t>(axis)]));
  int lv = std::max(0, cfg.richardson_levels);
  // Richardson table on halved steps, order-2 base scheme.
  std::vector<double> row(static_cast<size_t>(lv) + 1);
  for (int i = 0; i <= lv; ++i)
    row[static_cast<size_t>(i)] = central_diff(f, p, axis, h0 / std::pow(2.0, i), cfg.one_sided_fallback);
  for (int k = 1; k <= lv; ++k) {
    double f4 = std::pow(4.0, k);
    for (int i = lv; i >= k; --i)
      row[static_cast<size_t>(i)] =
          (f4 * row[static_cast<size_t>(i)] - row[static_cast<size_t>(i - 1)]) / (f4 - 1.0);
  }
  return row[static_cast<size_t>(lv)];
}

double bisect_root(const std::function<double(double)>& fn, double lo, double hi,
                   double tol, int max_iter) {
  double flo = fn(lo), fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) throw Error(Err::NoSignChange, "root not bracketed");
  for (int i = 0; i < max_iter; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = fn(mid);
    if (fm == 0.0 || (hi - lo) < tol * std::max(1.0, std::abs(mid))) { lo = hi = mid; break; }
    if ((fm > 0) == (flo > 0)) { lo = mid; flo = fm; } else { hi = mid; }
  }
  double x = 0.5 * (lo + hi);
  // one Newton polish with a numeric slope
  double h = 1e-7 * std::max(1.0, std::abs(x));
  double d = (fn(x + h) - fn(x - h)) / (2.0 * h);
  if (std::isfinite(d) && d != 0.0) {
    double xn = x - fn(x) / d;
    if (std::isfinite(xn) && xn > std::min(lo, hi) - h && xn < std::max(lo, hi) + h) x = xn;
  }
  return x;
}

}  // namespace confhor
