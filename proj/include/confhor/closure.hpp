#pragma once

#include <string>
#include <vector>

#include "confhor/horizon.hpp"

namespace confhor {

// One boundary-approach scan: nodes geometric toward an edge, the structural
// slope coefficient c = |dm/du| / |u| at each horizon root, and a power-law
// decay fit of c against the edge distance.
struct EdgeScan {
  std::string edge;  // "w1->0", "w1->max", "axis"
  std::vector<double> dist;  // edge distance per valid node
  std::vector<double> c;     // scaled slope coefficient per valid node
  double p_fit = 0.0;        // power-law exponent
  bool decayed = false;
  bool inconclusive = false;
  size_t n_valid = 0;
  double limit_w1 = 0.0;     // omega^1 coordinate of the edge corner
  double limit_theta = M_PI / 2.0;
};

struct LimitPoint {
  double w1 = 0.0;  // omega^0 = 0 implicit
  double theta = M_PI / 2.0;
};

struct NakedVerdict {
  Verdict verdict = Verdict::NotNaked;
  std::vector<LimitPoint> limit_points;
  std::vector<EdgeScan> scans;           // scans of the default compactifier
  std::vector<EdgeScan> scans_alt;       // alternate compactifier (h-robust entries)
  bool any_inconclusive = false;
};

struct ClosureConfig {
  int max_depth = 40;        // geometric refinement 2^-k, k <= max_depth
  double p_min = 0.3;        // decay-confirming exponent
  double p_gray = 0.1;       // below p_min but above this: inconclusive
  double drop_factor = 1e-3; // c_last must fall below this times max c
  size_t min_valid = 6;
};

EdgeScan scan_edge(const CatalogEntry& e, const std::string& edge, const ClosureConfig& cfg);

// Boundary-limit verdict. For entries with a swappable compactifier the scan
// runs under the default and an exponential alternate; a limit point must
// confirm under both (the compactifier is a gauge choice, so h-induced
// decays are not signals).
NakedVerdict apparent_closure(const CatalogEntry& e, const ClosureConfig& cfg = {});

// Computed-vs-expected comparison for the acceptance suite.
struct VerdictCheck {
  bool verdict_match = false;
  bool location_match = false;
  NakedVerdict computed;
};
VerdictCheck verdict(const CatalogEntry& e, const ClosureConfig& cfg = {});

}  // namespace confhor
