#pragma once

#include <json.hpp>

#include "confhor/closure.hpp"
#include "confhor/conditions.hpp"
#include "confhor/penrose.hpp"

namespace confhor {

using ordered_json = nlohmann::ordered_json;

struct AnalysisConfig {
  std::string metric = "schwarzschild";
  double M = 1.0, Q = 0.0, a = 0.0, sigma = 0.0;
  int horizon_grid = 64;
  int quad_nodes = 32;
  int refine_depth = 40;
  double root_tol = 1e-10;
  double dtol = 1e-6;
  double quad_tol = 1e-8;
  std::string out_path;
  std::vector<std::string> stages{"mass", "horizon", "naked"};

  void validate() const;
  CatalogEntry make_entry() const;
};

// exit codes per the CLI contract
enum ExitCode { kOk = 0, kConfigError = 2, kStageError = 3, kConvergenceError = 4 };

// Runs the enabled stages and assembles the deterministic report (fixed key
// order; wall-clock isolated in its own block).
ordered_json run_analysis(const AnalysisConfig& cfg, bool* warned = nullptr);

// Penrose-diagram data: horizon curve, regions, apparent-candidate markers.
// Columns: omega1, omega0_horizon, dm_dt, region_above, region_below,
// is_apparent_candidate, chart_excluded.
std::string diagram_csv(const AnalysisConfig& cfg);

ordered_json provenance_block();

std::string format_double(double v);  // shortest round-trip, '.' separator

}  // namespace confhor
