#include "laxkit/numeric.hpp"

#include <cassert>
#include <cmath>

namespace laxkit {

DMat DMat::identity(int n) {
  DMat m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DMat to_double(const Mat& m) {
  assert(m.rows() == m.cols());
  DMat d(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) d(i, j) = static_cast<double>(m(i, j));
  return d;
}

std::vector<double> to_double(const Vec& v) {
  std::vector<double> d(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) d[i] = static_cast<double>(v[i]);
  return d;
}

DMat operator*(const DMat& x, const DMat& y) {
  assert(x.n == y.n);
  DMat r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      double xv = x(i, k);
      if (xv == 0.0) continue;
      for (int j = 0; j < x.n; ++j) r(i, j) += xv * y(k, j);
    }
  return r;
}

DMat operator+(const DMat& x, const DMat& y) {
  assert(x.n == y.n);
  DMat r(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

DMat scaled(const DMat& x, double s) {
  DMat r(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] * s;
  return r;
}

std::vector<double> matvec(const DMat& m, const std::vector<double>& v) {
  assert(static_cast<int>(v.size()) == m.n);
  std::vector<double> r(v.size(), 0.0);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r[i] += m(i, j) * v[j];
  return r;
}

double inf_norm(const DMat& m) {
  double best = 0.0;
  for (int i = 0; i < m.n; ++i) {
    double row = 0.0;
    for (int j = 0; j < m.n; ++j) row += std::fabs(m(i, j));
    best = std::max(best, row);
  }
  return best;
}

double max_abs(const std::vector<double>& v) {
  double best = 0.0;
  for (double x : v) best = std::max(best, std::fabs(x));
  return best;
}

DMat dmat_exp(const DMat& m) {
  // Halve the argument until its norm is small, run the Taylor series to
  // machine saturation, then square back up.
  int squarings = 0;
  double norm = inf_norm(m);
  while (norm > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  DMat x = scaled(m, std::ldexp(1.0, -squarings));
  DMat sum = DMat::identity(m.n);
  DMat term = DMat::identity(m.n);
  for (int k = 1; k <= 40; ++k) {
    term = scaled(term * x, 1.0 / k);
    sum = sum + term;
    if (inf_norm(term) < 1e-20 * (1.0 + inf_norm(sum))) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

}  // namespace laxkit
