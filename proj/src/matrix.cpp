#include "laxkit/matrix.hpp"

#include <cassert>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace laxkit {

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

std::optional<Rational> parse_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto parse_int = [](const std::string& t) -> std::optional<Integer> {
    if (t.empty()) return std::nullopt;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return std::nullopt;
    for (std::size_t k = i; k < t.size(); ++k)
      if (t[k] < '0' || t[k] > '9') return std::nullopt;
    return Integer(t);
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    auto p = parse_int(s);
    if (!p) return std::nullopt;
    return Rational(*p);
  }
  auto p = parse_int(s.substr(0, slash));
  auto q = parse_int(s.substr(slash + 1));
  if (!p || !q || *q == 0) return std::nullopt;
  return Rational(*p, *q);
}

Vec& operator+=(Vec& x, const Vec& y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return x;
}

Vec& operator-=(Vec& x, const Vec& y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
  return x;
}

Vec operator+(Vec x, const Vec& y) { return x += y; }
Vec operator-(Vec x, const Vec& y) { return x -= y; }

Vec operator*(const Rational& c, Vec x) {
  for (auto& v : x) v *= c;
  return x;
}

bool is_zero(const Vec& x) {
  for (const auto& v : x)
    if (v != 0) return false;
  return true;
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Mat::is_zero() const {
  for (const auto& v : a_)
    if (v != 0) return false;
  return true;
}

Mat& Mat::operator+=(const Mat& o) {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
  assert(a.cols_ == b.rows_);
  Mat c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const Rational& bkj = b(k, j);
        if (bkj != 0) c(i, j) += aik * bkj;
      }
    }
  return c;
}

Mat operator*(const Rational& c, Mat a) {
  for (auto& v : a.a_) v *= c;
  return a;
}

Vec Mat::apply(const Vec& x) const {
  assert(static_cast<int>(x.size()) == cols_);
  Vec y(rows_);
  for (int i = 0; i < rows_; ++i) {
    Rational s = 0;
    for (int j = 0; j < cols_; ++j) {
      const Rational& m = (*this)(i, j);
      if (m != 0 && x[j] != 0) s += m * x[j];
    }
    y[i] = std::move(s);
  }
  return y;
}

std::ostream& operator<<(std::ostream& os, const Mat& m) {
  os << '[';
  for (int i = 0; i < m.rows(); ++i) {
    os << '[';
    for (int j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << to_string(m(i, j));
    }
    os << ']';
    if (i + 1 < m.rows()) os << ", ";
  }
  return os << ']';
}

Rref rref(Mat a) {
  Rref out;
  int r = 0;
  for (int col = 0; col < a.cols() && r < a.rows(); ++col) {
    int piv = -1;
    for (int i = r; i < a.rows(); ++i)
      if (a(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    Rational inv = Rational(1) / a(r, col);
    for (int j = col; j < a.cols(); ++j) a(r, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, col) == 0) continue;
      Rational factor = a(i, col);
      for (int j = col; j < a.cols(); ++j) a(i, j) -= factor * a(r, j);
    }
    out.pivots.push_back(col);
    ++r;
  }
  out.rank = r;
  out.r = std::move(a);
  return out;
}

std::vector<Vec> kernel_basis(const Mat& a) {
  Rref rr = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int p : rr.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (int free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(a.cols());
    v[free] = 1;
    for (int row = 0; row < rr.rank; ++row) v[rr.pivots[row]] = -rr.r(row, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Mat> inverse(const Mat& a) {
  assert(a.rows() == a.cols());
  int n = a.rows();
  Mat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  Rref rr = rref(std::move(aug));
  if (rr.rank < n || rr.pivots[n - 1] >= n) return std::nullopt;
  Mat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = rr.r(i, n + j);
  return inv;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
  assert(static_cast<int>(b.size()) == a.rows());
  Mat aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Rref rr = rref(std::move(aug));
  // A pivot in the appended column means b is outside the column span.
  if (rr.rank > 0 && rr.pivots[rr.rank - 1] == a.cols()) return std::nullopt;
  Vec x(a.cols());
  for (int row = 0; row < rr.rank; ++row) x[rr.pivots[row]] = rr.r(row, a.cols());
  return x;
}

RankFactorization rank_factorization(const Mat& a) {
  Rref rr = rref(a);
  RankFactorization out;
  out.rank = rr.rank;
  out.c = Mat(a.rows(), rr.rank);
  out.f = Mat(rr.rank, a.cols());
  for (int k = 0; k < rr.rank; ++k)
    for (int i = 0; i < a.rows(); ++i) out.c(i, k) = a(i, rr.pivots[k]);
  for (int k = 0; k < rr.rank; ++k)
    for (int j = 0; j < a.cols(); ++j) out.f(k, j) = rr.r(k, j);
  return out;
}

Mat pseudo_inverse(const Mat& a) {
  RankFactorization rf = rank_factorization(a);
  if (rf.rank == 0) return Mat(a.cols(), a.rows());
  Mat ct = rf.c.transpose();
  Mat ft = rf.f.transpose();
  auto ffti = inverse(rf.f * ft);
  auto ctci = inverse(ct * rf.c);
  // Gram matrices of full-rank factors are invertible over Q.
  assert(ffti && ctci);
  return ft * (*ffti) * (*ctci) * ct;
}

std::vector<Rational> char_poly(const Mat& a) {
  assert(a.rows() == a.cols());
  int n = a.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  Mat m = Mat::identity(n);  // M_0
  for (int k = 1; k <= n; ++k) {
    m = a * m;
    Rational tr = 0;
    for (int i = 0; i < n; ++i) tr += m(i, i);
    c[n - k] = -tr / k;
    for (int i = 0; i < n; ++i) m(i, i) += c[n - k];
  }
  return c;
}

namespace {

// Divisors of |v| by trial division; empty when |v| resists factoring within
// the budget (callers then give up on rational roots).
std::vector<Integer> divisors_of(Integer v) {
  if (v < 0) v = -v;
  std::vector<Integer> divs{1};
  if (v == 0 || v == 1) return divs;
  std::vector<std::pair<Integer, int>> factors;
  Integer p = 2;
  const Integer budget = 1000000;
  while (p * p <= v) {
    if (p > budget) return {};  // unfactored remainder too large to enumerate
    if (v % p == 0) {
      int e = 0;
      while (v % p == 0) {
        v /= p;
        ++e;
      }
      factors.emplace_back(p, e);
    }
    p += (p == 2) ? 1 : 2;
  }
  if (v > 1) factors.emplace_back(v, 1);
  for (const auto& [prime, e] : factors) {
    std::size_t base = divs.size();
    Integer pw = 1;
    for (int i = 1; i <= e; ++i) {
      pw *= prime;
      for (std::size_t k = 0; k < base; ++k) divs.push_back(divs[k] * pw);
    }
  }
  return divs;
}

Rational eval_poly(const std::vector<Rational>& c, const Rational& x) {
  Rational v = 0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
  return v;
}

// Synthetic division by (x - root); assumes root is an exact root.
std::vector<Rational> deflate(const std::vector<Rational>& c, const Rational& root) {
  std::vector<Rational> q(c.size() - 1);
  Rational carry = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    q[k] = carry;
    carry = c[k] + root * carry;
  }
  assert(carry == 0);
  return q;
}

}  // namespace

std::optional<std::vector<std::pair<Rational, int>>> rational_roots(
    const std::vector<Rational>& coeffs) {
  std::vector<Rational> c = coeffs;
  assert(!c.empty() && c.back() != 0);
  std::vector<std::pair<Rational, int>> roots;
  auto bump = [&roots](const Rational& r) {
    for (auto& [v, m] : roots)
      if (v == r) {
        ++m;
        return;
      }
    roots.emplace_back(r, 1);
  };
  // Strip zero roots first: they need no candidate search.
  while (c.size() > 1 && c.front() == 0) {
    bump(0);
    c.erase(c.begin());
  }
  while (c.size() > 1) {
    // Primitive integer form of the current factor.
    Integer lcd = 1;
    for (const auto& v : c) lcd = lcm(lcd, denominator(v));
    std::vector<Integer> ic(c.size());
    for (std::size_t k = 0; k < c.size(); ++k)
      ic[k] = numerator(Rational(c[k] * lcd));  // exact: lcd clears every denominator
    Integer g = 0;
    for (const auto& v : ic) g = gcd(g, v);
    if (g > 1)
      for (auto& v : ic) v /= g;
    auto ps = divisors_of(ic.front());
    auto qs = divisors_of(ic.back());
    if (ps.empty() || qs.empty()) return std::nullopt;
    bool found = false;
    for (const auto& p : ps) {
      for (const auto& q : qs) {
        for (int sign : {1, -1}) {
          Rational cand(sign * p, q);
          if (eval_poly(c, cand) == 0) {
            bump(cand);
            c = deflate(c, cand);
            while (c.size() > 1 && c.front() == 0) {
              bump(0);
              c.erase(c.begin());
            }
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) return std::nullopt;  // irrational or complex factor remains
  }
  return roots;
}

std::optional<SpectralDecomposition> spectral_decomposition(const Mat& a) {
  auto roots = rational_roots(char_poly(a));
  if (!roots) return std::nullopt;
  int n = a.rows();
  // Defective check: the matrix is diagonalizable iff the squarefree
  // polynomial over the distinct eigenvalues annihilates it.
  Mat prod = Mat::identity(n);
  for (const auto& [value, mult] : *roots) {
    Mat shift = a;
    for (int i = 0; i < n; ++i) shift(i, i) -= value;
    prod = prod * shift;
  }
  if (!prod.is_zero()) return std::nullopt;
  SpectralDecomposition sd;
  for (const auto& [value, mult] : *roots) sd.values.push_back(value);
  for (std::size_t i = 0; i < sd.values.size(); ++i) {
    Mat p = Mat::identity(n);
    for (std::size_t j = 0; j < sd.values.size(); ++j) {
      if (j == i) continue;
      Mat shift = a;
      for (int k = 0; k < n; ++k) shift(k, k) -= sd.values[j];
      p = (Rational(1) / (sd.values[i] - sd.values[j])) * (p * shift);
    }
    sd.projectors.push_back(std::move(p));
  }
  return sd;
}

bool RowSpan::add(Vec v) {
  v = reduce(std::move(v));
  int lead = -1;
  for (int j = 0; j < n_; ++j)
    if (v[j] != 0) {
      lead = j;
      break;
    }
  if (lead < 0) return false;
  Rational inv = Rational(1) / v[lead];
  for (auto& x : v) x *= inv;
  // Back-substitute into existing rows to keep the basis reduced.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Rational f = rows_[r][lead];
    if (f == 0) continue;
    for (int j = 0; j < n_; ++j) rows_[r][j] -= f * v[j];
  }
  rows_.push_back(std::move(v));
  lead_.push_back(lead);
  return true;
}

Vec RowSpan::reduce(Vec v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Rational f = v[lead_[r]];
    if (f == 0) continue;
    for (int j = 0; j < n_; ++j)
      if (rows_[r][j] != 0) v[j] -= f * rows_[r][j];
  }
  return v;
}

bool RowSpan::contains(const Vec& v) const { return laxkit::is_zero(reduce(v)); }

}  // namespace laxkit
