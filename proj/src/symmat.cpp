#include "confhor/symmat.hpp"

#include <cstdlib>

namespace confhor {

const char* err_name(Err e) {
  switch (e) {
    case Err::Singular: return "Singular";
    case Err::IllConditioned: return "IllConditioned";
    case Err::DomainExceeded: return "DomainExceeded";
    case Err::OutOfRange: return "OutOfRange";
    case Err::NotInvertible: return "NotInvertible";
    case Err::PatchViolation: return "PatchViolation";
    case Err::NotTemporalGauge: return "NotTemporalGauge";
    case Err::NoSignChange: return "NoSignChange";
    case Err::Degenerate: return "Degenerate";
    case Err::InconclusiveRefinement: return "InconclusiveRefinement";
    case Err::BranchMismatch: return "BranchMismatch";
    case Err::InvalidSigma: return "InvalidSigma";
    case Err::ChartInvalid: return "ChartInvalid";
    case Err::HypothesisViolated: return "HypothesisViolated";
    case Err::DenominatorVanishes: return "DenominatorVanishes";
    case Err::NonConvergent: return "NonConvergent";
    case Err::NonCausalZ: return "NonCausalZ";
    case Err::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

namespace {
int g_worker_override = 0;
}

void set_worker_count(int n) { g_worker_override = n; }

int worker_count() {
  if (g_worker_override > 0) return g_worker_override;
  static int n = [] {
    if (const char* env = std::getenv("CONFHOR_THREADS")) {
      int v = std::atoi(env);
      if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
  }();
  return n;
}

void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
  int nw = worker_count();
  if (nw <= 1 || n < 2) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  size_t nthreads = std::min<size_t>(static_cast<size_t>(nw), n);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(nthreads);
  pool.reserve(nthreads);
  for (size_t t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (size_t i = t; i < n; i += nthreads) fn(i);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

std::vector<double> jacobi_eigenvalues(const SymMatrix& m) {
  const int n = m.dim();
  std::vector<std::vector<double>> a(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = m(i, j);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a[static_cast<size_t>(i)][static_cast<size_t>(j)] * a[static_cast<size_t>(i)][static_cast<size_t>(j)];
    if (off < 1e-30 * (1.0 + m.norm_inf() * m.norm_inf())) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a[static_cast<size_t>(p)][static_cast<size_t>(q)];
        if (apq == 0.0) continue;
        double app = a[static_cast<size_t>(p)][static_cast<size_t>(p)];
        double aqq = a[static_cast<size_t>(q)][static_cast<size_t>(q)];
        double theta = 0.5 * (aqq - app) / apq;
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a[static_cast<size_t>(k)][static_cast<size_t>(p)];
          double akq = a[static_cast<size_t>(k)][static_cast<size_t>(q)];
          a[static_cast<size_t>(k)][static_cast<size_t>(p)] = c * akp - s * akq;
          a[static_cast<size_t>(k)][static_cast<size_t>(q)] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[static_cast<size_t>(p)][static_cast<size_t>(k)];
          double aqk = a[static_cast<size_t>(q)][static_cast<size_t>(k)];
          a[static_cast<size_t>(p)][static_cast<size_t>(k)] = c * apk - s * aqk;
          a[static_cast<size_t>(q)][static_cast<size_t>(k)] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) eig[static_cast<size_t>(i)] = a[static_cast<size_t>(i)][static_cast<size_t>(i)];
  return eig;
}

Signature signature(const SymMatrix& m, double zero_rel) {
  double thr = zero_rel * std::max(m.norm_inf(), 1e-300);
  Signature s;
  for (double ev : jacobi_eigenvalues(m)) {
    if (ev > thr) ++s.pos;
    else if (ev < -thr) ++s.neg;
    else ++s.zero;
  }
  return s;
}

}  // namespace confhor
