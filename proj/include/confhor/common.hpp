#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace confhor {

enum class Err {
  Singular,
  IllConditioned,
  DomainExceeded,
  OutOfRange,
  NotInvertible,
  PatchViolation,
  NotTemporalGauge,
  NoSignChange,
  Degenerate,
  InconclusiveRefinement,
  BranchMismatch,
  InvalidSigma,
  ChartInvalid,
  HypothesisViolated,
  DenominatorVanishes,
  NonConvergent,
  NonCausalZ,
  ConfigError,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

// Fixed-order pairwise summation; deterministic regardless of how the
// values were produced (threaded fills write by index).
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  size_t h = v.size() / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(std::span<const double>(v));
}

// Worker count: CONFHOR_THREADS caps parallelism, 0 or unset = auto.
int worker_count();
void set_worker_count(int n);  // override (0 restores the environment value)

// Chunked parallel map over [0, n); fn(i) must only write state owned by i.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

inline bool finite(double x) { return std::isfinite(x); }

}  // namespace confhor
