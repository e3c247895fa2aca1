#pragma once

#include <optional>

#include "confhor/conditions.hpp"
#include "confhor/quadrature.hpp"

namespace confhor {

// Deformation of the black-hole event horizon: T(s)(w^i) = X(w^i) - s plus an
// optional smooth perturbation (Euler-identity checks). The admissible range
// is the per-node clamp s in [s_-, s_+) with s_- = X - Z, s_+ = X.
struct DeformationFamily {
  std::function<double(double s, size_t node)> T;       // height
  std::function<double(double s, size_t node)> dT_ds;   // s-derivative
};

struct BoundOpts {
  int n1 = 32;
  int nang = 32;
  int nlag = 32;
  double eps1 = -1.0;
  double s_step = 5e-6;        // Euler-residual s-differencing
  double clamp_frac = 9.5367431640625e-7;  // 2^-20 upper clamp on T/Z
};

// Per-node horizon/initial-surface data over the quadrature grid.
struct BoundGrid {
  QuadratureGrid q;
  std::vector<size_t> i1, ia, ib;       // node -> axis indices
  std::vector<double> w1, theta, wt_log, wt_lin;  // flattened, with angle weights folded in
  std::vector<double> X, uX, Z, x0H, r;
  size_t n_nodes = 0;
};

BoundGrid make_bound_grid(const CatalogEntry& e, const BoundOpts& opt = {});

// Squared total mass over the chart V-hat = (omega^1 band) x (0, 1].
// For entries regular down to omega^1 = 0 the cutoff is Richardson-refined;
// NonConvergent when the cutoff sequence is not Cauchy.
double total_mass_squared(const CatalogEntry& e, const BoundOpts& opt = {});

// J(T) for the optimal family via the exact T* substitution (Laguerre tails).
double functional_J_at_Tstar(const CatalogEntry& e, const BoundGrid& g, const BoundOpts& opt);

// P0(s) under the co-moving slice realization; s = 0 gives the area A.
double functional_P0(const CatalogEntry& e, const BoundGrid& g, const DeformationFamily& f,
                     double s);

// I(T) = int P0(s) ds over the common clamped s-range; the isoperimetric
// constraint value is range * A along the optimal family.
double functional_I(const CatalogEntry& e, const BoundGrid& g, const DeformationFamily& f,
                    int ns = 32);

// |dP/dT - d/ds dP/dT'| at s, scaled by the term magnitudes.
double euler_residual(const CatalogEntry& e, const BoundGrid& g, const DeformationFamily& f,
                      double s, const BoundOpts& opt = {});

struct MultiplierResult {
  double lambda = 0.0;
  double denominator = 0.0;  // determinant-evolution form; negative under trK < 0
  double numerator = 0.0;
};
MultiplierResult lagrange_multiplier(const CatalogEntry& e, const BoundGrid& g,
                                     const BoundOpts& opt = {});

// A(w0, w^i) = w0 dm*/dw0 - m* <= 0 at the samples (holds under the
// curvature pair trK < 0, K(dw1,dw1) >= 0).
bool second_variation_sign(const CatalogEntry& e, const std::vector<UPt>& samples);

struct BoundReport {
  double M_sq = 0.0;
  double J_at_Tstar = 0.0;
  double rhs_bound = 0.0;
  double area_A = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  double lambda = 0.0;
  double lambda_denominator = 0.0;
  double euler_residual_max = 0.0;
  bool second_variation_ok = false;
  double conserved_drift = 0.0;
  double isoperimetric_gap = 0.0;
  bool hypotheses_ok = false;
  bool inequality = false;  // M_sq > rhs_bound
  double endpoint_pattern_checked = 0.0;   // fraction of nodes meeting the Prop 5.2 hypotheses
  double endpoint_pattern_ok = 0.0;  // fraction of those with a positive inner integral
  double frac_exterior_end_negative = 0.0;  // exterior endpoint sign check
  double frac_interior_end_positive = 0.0; // interior endpoint sign check (interior-reaching nodes)
  double eps1_used = 0.0;
  int n1 = 0;
};

BoundReport penrose_bound(const CatalogEntry& e, const BoundOpts& opt = {});

DeformationFamily tstar_family(const BoundGrid& g);
// T* plus delta * sin(k pi (s - s0)/range) * cos(w1-profile) style smooth bump
DeformationFamily perturbed_family(const BoundGrid& g, double delta, int mode, unsigned seed);

}  // namespace confhor
