#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "confhor/metric.hpp"

namespace confhor {

// Radial compactifier omega^1 = h(r): bounded, monotone decreasing, h -> 0 at
// infinity. Two derivatives are enough for the dual-number chains.
struct RadialCompactifier {
  std::string name;
  std::function<double(double)> h;
  std::function<double(double)> hp;
  std::function<double(double)> hpp;
  std::function<double(double)> r_of_w1;  // closed-form inverse
  double r_lo = 0.0;  // chart domain (open at r_lo)
  double r_hi = 1e12;
  double omega_max = 0.0;  // sup h = h(r_lo+)
};

RadialCompactifier rc_arctan_inv_r(double r_lo, double r_hi = 1e12);
RadialCompactifier rc_exp(double theta, double kappa, double r_lo, double r_hi = 1e12);
RadialCompactifier rc_rn_arctan_exp(double M, double Q, double r_lo, double r_hi = 1e12);
RadialCompactifier rc_schwarzschild_chart(double M);

enum class Verdict { Naked, NotNaked };

struct ExpectedClosure {
  Verdict verdict = Verdict::NotNaked;
  // expected limit point: w1 -> 0 corner or an interior/max-edge omega^1 value
  bool at_w1_zero = false;
  double w1 = -1.0;  // < 0 when not applicable
};

struct CatalogEntry {
  std::string id;
  std::map<std::string, double> params;

  std::shared_ptr<OmegaMetric> metric;  // b-basis g on the compact chart
  RadialCompactifier comp;              // radial entries
  bool cartesian_chart = false;         // synthetic entry uses the full map

  // mass pipeline; default is (h_b)^-1 [00], Kerr overrides (see ledger)
  std::function<double(const UPt&)> mass;
  std::function<double(const UPt&, int axis)> dmass;  // axis: 0=u, 1=w1, 2=theta

  // radial-parameter route for deep-edge scans: near an F -> 0 edge the
  // omega^1 encoding of r can saturate in double precision
  std::function<double(double u, double r, double th)> mass_r;
  std::function<double(double u, double r, double th)> dmass_du_r;
  std::function<bool(double u, double r, double th)> chart_ok_r;

  std::optional<std::function<double(const UPt&)>> m_closed;
  // radial-parameterized closed form (closure scans run on this)
  std::function<double(double u, double r, double th)> m_closed_r;
  // closed-form horizon height as u = ln X(omega^1 [, theta])
  std::optional<std::function<double(double, double)>> u_horizon;

  std::optional<TemporalGauge> tg;
  std::function<bool(const UPt&)> chart_ok;  // throws nothing; false = ChartInvalid zone
  Box udomain;  // {u, w1, theta, phi}

  ExpectedClosure expected;
  bool swappable_h = false;
  std::function<CatalogEntry(const RadialCompactifier&)> remake;

  // angular range of the entry's chart (catalog entries keep polar angles)
  double ang_lo = 0.0, ang_hi = M_PI;
};

CatalogEntry make_schwarzschild(double M);
CatalogEntry make_reissner_nordstrom(double M, double Q,
                                     std::optional<RadialCompactifier> h = std::nullopt);
CatalogEntry make_roberts(double sigma, std::optional<RadialCompactifier> h = std::nullopt);
CatalogEntry make_kerr(double M, double a, std::optional<RadialCompactifier> h = std::nullopt);

struct SyntheticSpec {
  double rho = 0.004;        // a(t) = exp(rho t)
  bool isotropic = false;    // true: gbar = a^2 delta (cross-pipeline tests only)
  double theta = 2e5;        // Omega = theta exp(-kappa r)
  double kappa = 1.5;
  double r_lo = 5.0;
  double r_hi = 7.0;
};

CatalogEntry make_synthetic_collapse(const SyntheticSpec& spec = {});

// Kerr ergosphere radius r*(theta) = M + sqrt(M^2 - a^2 cos^2 theta).
double kerr_ergosphere_radius(double M, double a, double theta);
double kerr_rplus(double M, double a);

}  // namespace confhor
