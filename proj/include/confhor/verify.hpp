#pragma once

#include <string>
#include <vector>

#include "confhor/penrose.hpp"

namespace confhor {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string details;
  double ms = 0.0;
  bool wallclock = false;  // measured value is a timing; excluded from the
                           // deterministic stdout (printed to stderr)
};

// one stable line per check on stdout; timings go to stderr
void print_check(const CheckResult& r);

// Acceptance suites (the CLI contract names these).
std::vector<CheckResult> verify_remark33();   // criterion 1
std::vector<CheckResult> verify_horizons();   // criteria 2, 3, 7
std::vector<CheckResult> verify_verdicts();   // criteria 4, 5
std::vector<CheckResult> verify_gradients();  // criteria 6, 9
std::vector<CheckResult> verify_penrose();    // criteria 8, 10, 11
std::vector<CheckResult> verify_determinism();  // criterion 12

std::vector<CheckResult> verify_suite(const std::string& name);  // "all" runs everything

// test hook for the determinism criterion
void set_worker_count(int n);

}  // namespace confhor
