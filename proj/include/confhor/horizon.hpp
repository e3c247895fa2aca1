#pragma once

#include <vector>

#include "confhor/mass.hpp"

namespace confhor {

enum class NodeStatus { Ok, NoSignChange, ChartInvalid, Degenerate, EvalFailed };

struct HorizonNode {
  double w1 = 0.0;
  double theta = M_PI / 2.0;
  double u_root = 0.0;      // ln X
  double X = 0.0;           // exp(u_root); 0 when underflowed
  double m_resid = 0.0;     // |m| at the root, relative to the bracket slope scale
  double dm_du = 0.0;       // b-derivative at the root
  double dm_dt = 0.0;       // dm/domega^0 (may overflow to +-inf at deep nodes)
  double null_residual = 0.0;
  NodeStatus status = NodeStatus::EvalFailed;
};

struct HorizonProfile {
  std::vector<HorizonNode> nodes;
  size_t n_ok = 0;
};

struct HorizonOpts {
  double u_seed = 1e-3;     // bracket march starts at -u_seed
  double u_cap = 1e280;     // give up beyond this depth (representability)
  double degen_rel = 1e-6;  // Degenerate when |dm/du| < degen_rel * bracket slope scale
};

// One omega^0-ray of the mass function.
struct RaySlice {
  std::function<double(double u)> m;
  std::function<double(double u)> dm_du;
  std::function<bool(double u)> ok;  // chart validity at the ray point
};

HorizonNode ray_root(const RaySlice& slice, const HorizonOpts& opt = {});

// Root of m(u) on a single omega^0-ray; exterior (m < 0) near u = 0 assumed.
HorizonNode horizon_root(const CatalogEntry& e, double w1, double theta,
                         const HorizonOpts& opt = {});

// Radial-parameter variant for deep edge scans.
HorizonNode horizon_root_r(const CatalogEntry& e, double r, double theta,
                           const HorizonOpts& opt = {});

// Per-node bracketed roots over an omega^1 grid at fixed theta; null_residual
// from the characteristic (null-front) quadratic with grid-differenced dX.
HorizonProfile horizon_profile(const CatalogEntry& e, const std::vector<double>& w1_grid,
                               double theta = M_PI / 2.0, const HorizonOpts& opt = {});

// Uniform interior grid on (0, w1_hi).
std::vector<double> uniform_grid(double w1_hi, int n);

}  // namespace confhor
