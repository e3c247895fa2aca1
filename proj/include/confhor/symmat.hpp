#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "confhor/common.hpp"
#include "confhor/dual.hpp"

namespace confhor {

// Symmetric matrix, lower-triangular storage. Small dims only (catalog uses 4).
template <class T>
class SymMatrixT {
 public:
  SymMatrixT() = default;
  explicit SymMatrixT(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * (dim + 1) / 2, T(0)) {}

  static SymMatrixT identity(int dim) {
    SymMatrixT m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = T(1);
    return m;
  }
  static SymMatrixT diag(std::span<const double> d) {
    SymMatrixT m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim_; ++i) m(i, i) = T(d[static_cast<size_t>(i)]);
    return m;
  }

  int dim() const { return dim_; }

  T& operator()(int i, int j) { return a_[idx(i, j)]; }
  const T& operator()(int i, int j) const { return a_[idx(i, j)]; }

  double norm_inf() const {
    double n = 0.0;
    for (int i = 0; i < dim_; ++i) {
      double row = 0.0;
      for (int j = 0; j < dim_; ++j) row += std::abs(value((*this)(i, j)));
      n = std::max(n, row);
    }
    return n;
  }

 private:
  size_t idx(int i, int j) const {
    if (i < j) std::swap(i, j);
    return static_cast<size_t>(i) * (i + 1) / 2 + j;
  }
  int dim_ = 0;
  std::vector<T> a_;
};

using SymMatrix = SymMatrixT<double>;
using SymMatrixD = SymMatrixT<Dual>;

// Gauss-Jordan inversion with full pivoting (in-place, with the standard
// column unscrambling). Throws Singular when a pivot degenerates,
// IllConditioned when the estimate exceeds cond_cap.
template <class T>
SymMatrixT<T> invert_symmetric(const SymMatrixT<T>& m, double cond_cap = 1e12) {
  const int n = m.dim();
  std::vector<std::vector<T>> a(static_cast<size_t>(n), std::vector<T>(static_cast<size_t>(n)));
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      a[static_cast<size_t>(i)][static_cast<size_t>(j)] = m(i, j);
      scale = std::max(scale, std::abs(value(m(i, j))));
    }
  if (scale == 0.0) throw Error(Err::Singular, "zero matrix");

  std::vector<int> indxr(static_cast<size_t>(n)), indxc(static_cast<size_t>(n)),
      ipiv(static_cast<size_t>(n), 0);
  for (int step = 0; step < n; ++step) {
    int irow = -1, icol = -1;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
      if (ipiv[static_cast<size_t>(i)]) continue;
      for (int j = 0; j < n; ++j) {
        if (ipiv[static_cast<size_t>(j)]) continue;
        double v = std::abs(value(a[static_cast<size_t>(i)][static_cast<size_t>(j)]));
        if (v > best) { best = v; irow = i; icol = j; }
      }
    }
    if (irow < 0 || best < 1e-300 * scale)
      throw Error(Err::Singular, "pivot below tolerance");
    ++ipiv[static_cast<size_t>(icol)];
    if (irow != icol) std::swap(a[static_cast<size_t>(irow)], a[static_cast<size_t>(icol)]);
    indxr[static_cast<size_t>(step)] = irow;
    indxc[static_cast<size_t>(step)] = icol;
    T piv = a[static_cast<size_t>(icol)][static_cast<size_t>(icol)];
    if (value(piv) == 0.0) throw Error(Err::Singular, "exact zero pivot");
    T pinv = T(1) / piv;
    a[static_cast<size_t>(icol)][static_cast<size_t>(icol)] = T(1);
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(icol)][static_cast<size_t>(j)] *= pinv;
    for (int i = 0; i < n; ++i) {
      if (i == icol) continue;
      T f = a[static_cast<size_t>(i)][static_cast<size_t>(icol)];
      if (value(f) == 0.0 && deriv(f) == 0.0) continue;
      a[static_cast<size_t>(i)][static_cast<size_t>(icol)] = T(0);
      for (int j = 0; j < n; ++j)
        a[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * a[static_cast<size_t>(icol)][static_cast<size_t>(j)];
    }
  }
  for (int l = n - 1; l >= 0; --l) {
    int r = indxr[static_cast<size_t>(l)], c = indxc[static_cast<size_t>(l)];
    if (r == c) continue;
    for (int i = 0; i < n; ++i)
      std::swap(a[static_cast<size_t>(i)][static_cast<size_t>(r)],
                a[static_cast<size_t>(i)][static_cast<size_t>(c)]);
  }

  SymMatrixT<T> inv(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      inv(i, j) = (a[static_cast<size_t>(i)][static_cast<size_t>(j)] +
                   a[static_cast<size_t>(j)][static_cast<size_t>(i)]) / T(2);

  double cond = m.norm_inf() * inv.norm_inf();
  if (!(cond < cond_cap))
    throw Error(Err::IllConditioned, "condition estimate " + std::to_string(cond));
  return inv;
}

struct Signature {
  int neg = 0;
  int pos = 0;
  int zero = 0;
};

// Eigenvalue sign counts via cyclic Jacobi; near-zero threshold is relative
// to the matrix scale.
Signature signature(const SymMatrix& m, double zero_rel = 1e-9);

std::vector<double> jacobi_eigenvalues(const SymMatrix& m);

}  // namespace confhor
