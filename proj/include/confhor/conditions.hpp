#pragma once

#include <vector>

#include "confhor/horizon.hpp"

namespace confhor {

struct ConditionRow {
  UPt p;
  double trK = 0.0;
  double K_grad = 0.0;
  bool pair_condition = false;   // trK < 0 and K(dw1, dw1) >= 0
  double monotonicity_bracket = 0.0;
  bool monotonicity_condition = false;   // general monotonicity criterion < 0
};

struct ConditionReport {
  std::vector<ConditionRow> rows;
  double frac_pair = 0.0;
  double frac_monotone = 0.0;
};

ConditionReport curvature_conditions(const CatalogEntry& e, const std::vector<UPt>& samples);

// Curve tangent field Z^alpha(omega) in the coordinate frame
// (Z^0 = d omega^0/ds, Z^1 = d omega^1/ds, Z^a = d omega^a/ds).
using ZField = std::function<std::array<double, 4>(const Pt&)>;

struct StayResult {
  bool stays = true;
  double exit_s = -1.0;  // first s with margin >= 0, when any
  std::vector<std::array<double, 2>> margin_trace;  // (s, margin)
};

struct StayOpts {
  double rel_tol = 1e-8;
  double dtol = 1e-10;  // HypothesisViolated guard on dm/du at the horizon trace
};

// Stay-inside criterion: margin(s) = w0_0 - X(w^i_0) + int_0^s grad_X m / (dm/dw0).
StayResult stay_criterion(const CatalogEntry& e, const Pt& start, const ZField& Z, double s_max,
                          const StayOpts& opt = {});

struct EnergySample {
  UPt p;
  double min_grad_x = 0.0;  // min over the causal cone of grad_X m
  bool passed = false;      // min >= 0
};

struct EnergyReport {
  std::vector<EnergySample> samples;
  double min_value = 0.0;
  bool condition_420 = false;
  bool black_hole_verdict = false;  // min >= 0 and the curvature pair holds
};

// Energy condition over a discretized causal cone at each sample.
// Spacelike probe vectors raise NonCausalZ (exercised by the single-Z variant).
EnergyReport energy_condition(const CatalogEntry& e, const std::vector<UPt>& samples,
                              int cone_res = 6);

// grad_X m = Z^0 d0 m - Z^i di m for one vector; throws NonCausalZ when
// h(Z, Z) > 0.
double grad_x_m(const CatalogEntry& e, const UPt& p, const std::array<double, 4>& Z);

}  // namespace confhor
