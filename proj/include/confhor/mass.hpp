#pragma once

#include "confhor/catalog.hpp"

namespace confhor {

enum class MassSource { Generic, TemporalGaugeClosedForm, CatalogClosedForm };

struct MassSample {
  double m = 0.0;
  double dm_du = 0.0;    // omega^0 dm/domega^0 (b-derivative, always finite)
  double dm_dt = 0.0;    // dm/domega^0; +-inf when omega^0 underflows
  std::array<double, 4> grad{0, 0, 0, 0};  // (dm/du, dm/dw1, dm/dth, dm/dph)
  MassSource source = MassSource::Generic;
  double m_def42 = 0.0;  // diagnostic: the Def 4.2 cross variant G_b(b0, b1)
};

MassSample mass_generic(const CatalogEntry& e, const UPt& p);
MassSample mass_temporal_gauge(const CatalogEntry& e, const UPt& p);

struct ExtrinsicCurvature {
  M3 K{};        // K_ij
  double trK = 0.0;
  double K_grad = 0.0;  // K(dw1, dw1) = K^{ij} W_i W_j
  double K_grad_scale = 0.0;  // sum |K^{ij}| |W_i| |W_j| (roundoff scale)
  double tau = 0.0;
  double det_gbar = 0.0;
};

ExtrinsicCurvature extrinsic_curvature(const TemporalGauge& tg, double t, const V3& x);

// dm/domega^0 closed form (calibrated tau = sqrt|gbar|/Omega convention):
//   (2 / (w1^2 w0)) [ trK/sqrt|gbar| + (u/w1^2)(gbar^{ij} - u sqrt|gbar| K^{ij}) W_i W_j ]
// Returned as the b-derivative dm/du (drop the 1/w0).
double dm_du_closed_form(const CatalogEntry& e, const UPt& p);

enum class RegionTag { Exterior, Interior, HorizonActual, HorizonApparent };

struct ClassifyOpts {
  double tol_rel = 1e-9;   // region tolerance relative to the local |m| scale
  double dtol_rel = 1e-6;  // apparent-horizon tolerance on the local slope scale
};

RegionTag classify(const CatalogEntry& e, const UPt& p, const ClassifyOpts& opt = {});

// Polar x-point of a compact chart point (catalog convention).
struct XPoint {
  double t, r, theta, phi;
  V3 cart;  // spatial Cartesian
};
XPoint x_of(const CatalogEntry& e, const UPt& p);

// Coordinate-basis metric components on the omega chart (interior points).
SymMatrix g_coord(const CatalogEntry& e, const UPt& p);

// max_{mu,nu} |d g_{mu nu}/d omega^0| in the coordinate basis.
double killing_residual(const std::function<SymMatrix(const Pt&)>& g_omega, const Pt& w,
                        double step = 1e-6);
double killing_residual(const CatalogEntry& e, const UPt& p);

// (df/dw0) G^{ab} df_a df_b with G the dual of h in the coordinate basis.
double eikonal_residual(const ScalarField& f, const CatalogEntry& e, const UPt& p);

}  // namespace confhor
