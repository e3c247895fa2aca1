#pragma once

#include <array>
#include <functional>
#include <optional>

#include "confhor/common.hpp"
#include "confhor/dual.hpp"

namespace confhor {

using Pt = std::array<double, 4>;

// Validity box per coordinate; evaluation outside is an error, never an
// extrapolation.
struct Box {
  int dim = 4;
  Pt lo{-1e300, -1e300, -1e300, -1e300};
  Pt hi{1e300, 1e300, 1e300, 1e300};

  bool contains(const Pt& p) const {
    for (int i = 0; i < dim; ++i)
      if (!(p[static_cast<size_t>(i)] >= lo[static_cast<size_t>(i)] &&
            p[static_cast<size_t>(i)] <= hi[static_cast<size_t>(i)]))
        return false;
    return true;
  }
};

// Point-evaluable scalar with an optional dual-number path for exact
// directional derivatives of closed-form fields.
struct ScalarField {
  int dim = 4;
  Box domain;
  std::function<double(const Pt&)> eval;
  // seeded derivative along `axis`; absent for opaque fields
  std::function<Dual(const Pt&, int axis)> eval_dual;

  double operator()(const Pt& p) const {
    if (!domain.contains(p)) throw Error(Err::DomainExceeded, "point outside field domain");
    return eval(p);
  }
};

// Auto resolves to dual-number forward mode when the field carries a
// closed-form dual evaluator, central differences otherwise.
enum class DerivScheme { Auto, CentralDifference, DualNumber };

struct DerivativeConfig {
  DerivScheme scheme = DerivScheme::Auto;
  double base_step = 1e-5;  // scaled by max(1,|coordinate|)
  int richardson_levels = 2;
  bool one_sided_fallback = false;  // opt-in
};

// Partial derivative of f along `axis` at p.
double derive(const ScalarField& f, const Pt& p, int axis, const DerivativeConfig& cfg = {});

// Bracketed bisection + one Newton polish; fn must change sign on [lo, hi].
double bisect_root(const std::function<double(double)>& fn, double lo, double hi,
                   double tol = 1e-12, int max_iter = 200);

}  // namespace confhor
