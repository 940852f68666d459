#pragma once
// Dense double-precision helpers for the floating cross-checks: a small
// matrix type, norms, and a scaling-and-squaring matrix exponential. Kept
// apart from the exact rational layer so the two routes share no code.

#include <vector>

#include "laxkit/matrix.hpp"

namespace laxkit {

struct DMat {
  int n = 0;
  std::vector<double> a;
  DMat() = default;
  explicit DMat(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0.0) {}
  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
  static DMat identity(int n);
};

DMat to_double(const Mat& m);
std::vector<double> to_double(const Vec& v);

DMat operator*(const DMat& x, const DMat& y);
DMat operator+(const DMat& x, const DMat& y);
DMat scaled(const DMat& x, double s);
std::vector<double> matvec(const DMat& m, const std::vector<double>& v);

double inf_norm(const DMat& m);  // max absolute row sum
double max_abs(const std::vector<double>& v);

// exp(M) by scaling and squaring around a truncated Taylor core.
DMat dmat_exp(const DMat& m);

}  // namespace laxkit
