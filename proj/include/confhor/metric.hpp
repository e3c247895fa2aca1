#pragma once

#include <array>
#include <functional>
#include <memory>

#include "confhor/chart.hpp"
#include "confhor/field.hpp"
#include "confhor/symmat.hpp"

namespace confhor {

// Chart point with the time axis in u = ln(omega^0); everything deep toward
// the omega^0 = 0 corner stays representable this way.
struct UPt {
  double u = 0.0;                      // ln omega^0, <= 0 inside V-hat
  double w1 = 0.0;                     // omega^1
  std::array<double, 2> ang{0.0, 0.0};  // omega^2, omega^3 (or theta, phi)
};

// Metric field on the compact chart: b-basis components of g itself
// (h = (omega^1)^2 g is formed by callers). Components must be polynomial in
// u so deep-corner evaluation does not overflow. The dual path seeds one of
// the four axes (0 = u).
class OmegaMetric {
 public:
  virtual ~OmegaMetric() = default;
  virtual SymMatrix g_b(const UPt& p) const = 0;
  virtual SymMatrixD g_b_dual(const UPt& p, int axis) const = 0;
  // validity box: {u, w1, ang0, ang1}; u upper bound may exceed 0 (extension
  // region omega^0 > 1 used by the deformation endpoints)
  virtual Box domain() const = 0;
  virtual bool chart_valid(const UPt&) const { return true; }
};

// Temporal-gauge data: g = -(|gbar|/Omega^2) dt^2 + gbar_ij dx^i dx^j with
// the spatial metric given in the x chart.
using V3 = std::array<double, 3>;
using M3 = std::array<std::array<double, 3>, 3>;

struct TemporalGauge {
  ConformalFactor conf;
  std::function<M3(double, const V3&)> gbar;     // gbar_ij(t, x)
  std::function<M3(double, const V3&)> dt_gbar;  // d/dt gbar_ij
};

double det3(const M3& m);
M3 inv3(const M3& m);

}  // namespace confhor
