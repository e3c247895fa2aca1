#pragma once

#include <vector>

#include "confhor/common.hpp"

namespace confhor {

struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre on [-1, 1].
Rule1D gauss_legendre(int n);

// Gauss-Laguerre on [0, inf) with weight e^{-t}.
Rule1D gauss_laguerre(int n);

// Map a [-1,1] rule to [a, b].
Rule1D mapped(const Rule1D& base, double a, double b);

// Tensor grid over H_ = [w1_lo, w1_hi] x (-pi/2, pi/2)^2 with the log
// substitution on the omega^1 axis (the d(omega^1)/omega^1 measure is flat in
// ln omega^1). Weights are provided for both the plain-d(omega^1) and the
// b-measure integrals.
struct QuadratureGrid {
  std::vector<double> w1;       // node values of omega^1
  std::vector<double> wt_log;   // weights for the d(omega^1)/omega^1 measure
  std::vector<double> wt_lin;   // weights for the plain d(omega^1) measure
  std::vector<double> ang;      // angular nodes (shared by both angle axes)
  std::vector<double> ang_wt;
  double w1_lo = 0.0, w1_hi = 0.0;
  double eps1 = 0.0;  // applied cutoff

  size_t n1() const { return w1.size(); }
  size_t na() const { return ang.size(); }
};

// Builds the grid; eps1 <= 0 selects the default cutoff 1e-4 * w1_hi (skipped
// when the domain floor already exceeds it).
QuadratureGrid make_grid(double w1_lo, double w1_hi, int n1, int nang, double eps1 = -1.0);

}  // namespace confhor
