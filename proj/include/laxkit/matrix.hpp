// Dense matrices and exact linear algebra over the rationals: reduced row
// echelon form, kernels, Moore-Penrose pseudo-inverse via rank factorization,
// characteristic polynomial (Faddeev-LeVerrier) and spectral projectors for
// matrices with rational spectrum. Everything here is exact; floating-point
// lives in numeric.hpp.
#pragma once

#include "laxkit/rational.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace laxkit {

using Vec = std::vector<Rational>;

Vec& operator+=(Vec& x, const Vec& y);
Vec& operator-=(Vec& x, const Vec& y);
Vec operator+(Vec x, const Vec& y);
Vec operator-(Vec x, const Vec& y);
Vec operator*(const Rational& c, Vec x);
bool is_zero(const Vec& x);

class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static Mat identity(int n);
  static Mat zero(int rows, int cols) { return Mat(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  Mat transpose() const;
  bool is_zero() const;
  friend bool operator==(const Mat&, const Mat&) = default;

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator*(const Rational& c, Mat a);
  Vec apply(const Vec& x) const;  // matrix * column vector

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

std::ostream& operator<<(std::ostream& os, const Mat& m);

struct Rref {
  Mat r;
  std::vector<int> pivots;  // pivot column of each nonzero row
  int rank = 0;
};
Rref rref(Mat a);

// Basis of { x : a x = 0 }, one vector per free column, in column order.
std::vector<Vec> kernel_basis(const Mat& a);

std::optional<Mat> inverse(const Mat& a);

// A particular solution of a x = b with free variables set to zero, or
// nullopt when inconsistent.
std::optional<Vec> solve(const Mat& a, const Vec& b);

// a = c * f with c the pivot columns of a (m x r) and f the nonzero rows of
// rref(a) (r x n).
struct RankFactorization {
  Mat c, f;
  int rank = 0;
};
RankFactorization rank_factorization(const Mat& a);

// Exact Moore-Penrose pseudo-inverse: f^T (f f^T)^{-1} (c^T c)^{-1} c^T.
// Satisfies all four Penrose identities over Q.
Mat pseudo_inverse(const Mat& a);

// Monic characteristic polynomial det(xI - a); coeffs[k] multiplies x^k,
// coeffs[n] = 1.
std::vector<Rational> char_poly(const Mat& a);

// All roots with multiplicity when every root is rational, else nullopt.
// Roots are found by exact deflation over integer candidates p/q with
// p | constant term and q | leading coefficient of the primitive integer
// polynomial; oversized constant terms that resist trial factorization make
// this return nullopt (callers fall back to series representations).
std::optional<std::vector<std::pair<Rational, int>>> rational_roots(
    const std::vector<Rational>& coeffs);

// Spectral decomposition of a diagonalizable matrix with rational spectrum:
// a = sum_i value[i] * projector[i], projectors idempotent, pairwise
// annihilating, summing to the identity. nullopt when the spectrum is not
// (provably) rational or the matrix is defective.
struct SpectralDecomposition {
  std::vector<Rational> values;  // distinct eigenvalues
  std::vector<Mat> projectors;
};
std::optional<SpectralDecomposition> spectral_decomposition(const Mat& a);

// Growing echelon basis of a subspace of Q^n; used to reduce flatness
// residuals modulo constraint spans.
class RowSpan {
 public:
  explicit RowSpan(int n) : n_(n) {}
  bool add(Vec v);                  // true if the span grew
  bool contains(const Vec& v) const;
  Vec reduce(Vec v) const;          // residual after elimination
  int dim() const { return static_cast<int>(rows_.size()); }

 private:
  int n_;
  std::vector<Vec> rows_;
  std::vector<int> lead_;
};

}  // namespace laxkit
