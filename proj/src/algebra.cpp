#include "laxkit/algebra.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

namespace laxkit {

namespace {

Rational trace_product(const Mat& a, const Mat& b) {
  assert(a.rows() == b.cols() && a.cols() == b.rows());
  Rational t = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k)
      if (a(i, k) != 0 && b(k, i) != 0) t += a(i, k) * b(k, i);
  return t;
}

Mat unit(int n, int i, int j) {
  Mat m(n, n);
  m(i, j) = 1;
  return m;
}

// Real 2n x 2n image of the complex matrix A + iB: each complex entry z
// becomes the block [[Re z, -Im z], [Im z, Re z]]. Commutators and real
// traces are preserved (up to the overall factor 2 on traces, which cancels
// in the Gram solve).
Mat complexify(const Mat& re, const Mat& im) {
  int n = re.rows();
  Mat m(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m(2 * i, 2 * j) = re(i, j);
      m(2 * i + 1, 2 * j + 1) = re(i, j);
      m(2 * i, 2 * j + 1) = -im(i, j);
      m(2 * i + 1, 2 * j) = im(i, j);
    }
  return m;
}

struct MatrixBasis {
  std::vector<Mat> b;
  std::vector<int> grade;
  std::vector<std::string> names;
  int n_grades = 1;
  std::string desc;
};

std::string ij_name(const char* stem, int i, int j) {
  std::ostringstream os;
  os << stem << (i + 1) << (j + 1);
  return os.str();
}

MatrixBasis sl_basis(int n, const std::string& grading) {
  if (n < 2) throw Error(Errc::BadParameters, "sl(n) needs n >= 2");
  MatrixBasis mb;
  if (grading == "cartan") {
    // Fixed-point/odd split of X -> -X^T: antisymmetric part grade 0,
    // symmetric traceless part grade 1.
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        mb.b.push_back(unit(n, i, j) - unit(n, j, i));
        mb.grade.push_back(0);
        mb.names.push_back(ij_name("A", i, j));
      }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        mb.b.push_back(unit(n, i, j) + unit(n, j, i));
        mb.grade.push_back(1);
        mb.names.push_back(ij_name("S", i, j));
      }
    for (int i = 0; i + 1 < n; ++i) {
      mb.b.push_back(unit(n, i, i) - unit(n, i + 1, i + 1));
      mb.grade.push_back(1);
      mb.names.push_back("H" + std::to_string(i + 1));
    }
    mb.n_grades = 2;
    mb.desc = "sl(" + std::to_string(n) + ") with Cartan-involution Z_2 grading";
    return mb;
  }
  for (int i = 0; i + 1 < n; ++i) {
    mb.b.push_back(unit(n, i, i) - unit(n, i + 1, i + 1));
    mb.grade.push_back(0);
    mb.names.push_back("H" + std::to_string(i + 1));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      mb.b.push_back(unit(n, i, j));
      // Conjugation by diag(1, w, ..., w^{n-1}) scales E_ij by w^{i-j}.
      mb.grade.push_back(grading == "cyclic" ? ((i - j) % n + n) % n : 0);
      mb.names.push_back(ij_name("E", i, j));
    }
  if (grading == "cyclic") {
    mb.n_grades = n;
    mb.desc = "sl(" + std::to_string(n) + ") with cyclic Z_" + std::to_string(n) + " grading";
  } else if (grading == "none") {
    mb.n_grades = 1;
    mb.desc = "sl(" + std::to_string(n) + "), ungraded";
  } else {
    throw Error(Errc::BadParameters, "unknown sl grading '" + grading + "'");
  }
  return mb;
}

MatrixBasis su_basis(int n, const std::string& grading) {
  if (n < 2) throw Error(Errc::BadParameters, "su(n) needs n >= 2");
  if (grading != "none") throw Error(Errc::BadParameters, "su preset supports grading 'none'");
  MatrixBasis mb;
  Mat zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    mb.b.push_back(complexify(zero, unit(n, i, i) - unit(n, i + 1, i + 1)));
    mb.grade.push_back(0);
    mb.names.push_back("iH" + std::to_string(i + 1));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      mb.b.push_back(complexify(unit(n, i, j) - unit(n, j, i), zero));
      mb.grade.push_back(0);
      mb.names.push_back(ij_name("A", i, j));
      mb.b.push_back(complexify(zero, unit(n, i, j) + unit(n, j, i)));
      mb.grade.push_back(0);
      mb.names.push_back(ij_name("iS", i, j));
    }
  mb.n_grades = 1;
  mb.desc = "su(" + std::to_string(n) + "), ungraded";
  return mb;
}

MatrixBasis so_basis(int n, const std::string& grading, int block) {
  if (n < 3) throw Error(Errc::BadParameters, "so(n) needs n >= 3");
  MatrixBasis mb;
  bool blocked = grading == "block";
  if (blocked && (block <= 0 || block >= n))
    throw Error(Errc::BadParameters, "block grading needs 0 < p < n");
  if (!blocked && grading != "none")
    throw Error(Errc::BadParameters, "unknown so grading '" + grading + "'");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      mb.b.push_back(unit(n, i, j) - unit(n, j, i));
      mb.grade.push_back(blocked ? ((i < block) != (j < block) ? 1 : 0) : 0);
      mb.names.push_back(ij_name("L", i, j));
    }
  mb.n_grades = blocked ? 2 : 1;
  mb.desc = "so(" + std::to_string(n) + ")" +
            (blocked ? " with Z_2 block grading (p=" + std::to_string(block) + ")" : ", ungraded");
  return mb;
}

}  // namespace

Vec GradedLieAlgebra::bracket(const Vec& x, const Vec& y) const {
  assert(static_cast<int>(x.size()) == dim_ && static_cast<int>(y.size()) == dim_);
  Vec out(dim_);
  for (int a = 0; a < dim_; ++a) {
    if (x[a] == 0) continue;
    for (int b = 0; b < dim_; ++b) {
      if (y[b] == 0) continue;
      const auto& terms = bracket_basis(a, b);
      if (terms.empty()) continue;
      Rational xy = x[a] * y[b];
      for (const auto& [c, q] : terms) out[c] += xy * q;
    }
  }
  return out;
}

Mat GradedLieAlgebra::ad(int a) const {
  Mat m(dim_, dim_);
  for (int e = 0; e < dim_; ++e)
    for (const auto& [c, q] : bracket_basis(a, e)) m(c, e) = q;
  return m;
}

Mat GradedLieAlgebra::grade_projector(int g) const {
  Mat p(dim_, dim_);
  for (int a = 0; a < dim_; ++a)
    if (grade_[a] == ((g % n_) + n_) % n_) p(a, a) = 1;
  return p;
}

bool GradedLieAlgebra::pair_vacuous(int ga, int gb) const {
  for (int a : by_grade_[ga])
    for (int b : by_grade_[gb])
      if (!bracket_basis(a, b).empty()) return false;
  return true;
}

void GradedLieAlgebra::validate() const {
  // Antisymmetry, including the diagonal.
  for (int a = 0; a < dim_; ++a)
    for (int b = a; b < dim_; ++b) {
      Vec ab(dim_), ba(dim_);
      for (const auto& [c, q] : bracket_basis(a, b)) ab[c] += q;
      for (const auto& [c, q] : bracket_basis(b, a)) ba[c] += q;
      if (!is_zero(ab + ba))
        throw Error(Errc::NotAntisymmetric,
                    "[" + names_[a] + ", " + names_[b] + "] + [" + names_[b] + ", " + names_[a] +
                        "] != 0");
    }
  // Grading closure, entry by entry.
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b)
      for (const auto& [c, q] : bracket_basis(a, b)) {
        if (q == 0) continue;
        if (grade_[c] != (grade_[a] + grade_[b]) % n_)
          throw Error(Errc::GradingViolation,
                      "[" + names_[a] + ", " + names_[b] + "] hits " + names_[c] + " of grade " +
                          std::to_string(grade_[c]) + ", expected " +
                          std::to_string((grade_[a] + grade_[b]) % n_));
      }
  // Jacobi on index triples a < b < c (triples with a repeat hold by
  // antisymmetry).
  auto nested = [this](int a, int b, int c, Vec& acc, const Rational& sign) {
    for (const auto& [d, q] : bracket_basis(a, b))
      for (const auto& [e, r] : bracket_basis(d, c)) acc[e] += sign * q * r;
  };
  for (int a = 0; a < dim_; ++a)
    for (int b = a + 1; b < dim_; ++b)
      for (int c = b + 1; c < dim_; ++c) {
        Vec acc(dim_);
        nested(a, b, c, acc, 1);
        nested(b, c, a, acc, 1);
        nested(c, a, b, acc, 1);
        if (!is_zero(acc))
          throw Error(Errc::JacobiFailure, "Jacobi fails on (" + names_[a] + ", " + names_[b] +
                                               ", " + names_[c] + ")");
      }
  // Ad-invariance of the Killing form: k([a,b],c) = k(a,[b,c]).
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b)
      for (int c = 0; c < dim_; ++c) {
        Rational lhs = 0, rhs = 0;
        for (const auto& [d, q] : bracket_basis(a, b)) lhs += q * killing_(d, c);
        for (const auto& [d, q] : bracket_basis(b, c)) rhs += q * killing_(a, d);
        if (lhs != rhs)
          throw Error(Errc::JacobiFailure, "Killing form not ad-invariant at (" + names_[a] +
                                               ", " + names_[b] + ", " + names_[c] + ")");
      }
}

struct AlgebraBuilder {
  static std::shared_ptr<GradedLieAlgebra> from_matrix_basis(const MatrixBasis& mb) {
    auto alg = std::make_shared<GradedLieAlgebra>();
    int dim = static_cast<int>(mb.b.size());
    alg->dim_ = dim;
    alg->n_ = mb.n_grades;
    alg->grade_ = mb.grade;
    alg->names_ = mb.names;
    alg->description_ = mb.desc;
    alg->f_.assign(static_cast<std::size_t>(dim) * dim, {});
    // Exact expansion of commutators in the basis via the trace form.
    Mat gram(dim, dim);
    for (int a = 0; a < dim; ++a)
      for (int b = a; b < dim; ++b) {
        gram(a, b) = trace_product(mb.b[a], mb.b[b]);
        gram(b, a) = gram(a, b);
      }
    auto gram_inv = inverse(gram);
    if (!gram_inv)
      throw Error(Errc::DegenerateForm, "trace form degenerate on the preset basis");
    for (int a = 0; a < dim; ++a)
      for (int b = a + 1; b < dim; ++b) {
        Mat comm = mb.b[a] * mb.b[b] - mb.b[b] * mb.b[a];
        Vec rhs(dim);
        for (int c = 0; c < dim; ++c) rhs[c] = trace_product(comm, mb.b[c]);
        Vec coords = gram_inv->apply(rhs);
        Mat recon(comm.rows(), comm.cols());
        for (int c = 0; c < dim; ++c)
          if (coords[c] != 0) recon += coords[c] * mb.b[c];
        if (!(recon == comm))
          throw Error(Errc::NotClosedUnderBracket, "[" + mb.names[a] + ", " + mb.names[b] +
                                                       "] is outside the basis span");
        for (int c = 0; c < dim; ++c) {
          if (coords[c] == 0) continue;
          alg->f_[static_cast<std::size_t>(a) * dim + b].emplace_back(c, coords[c]);
          alg->f_[static_cast<std::size_t>(b) * dim + a].emplace_back(c, -coords[c]);
        }
      }
    finish(*alg);
    return alg;
  }

  static std::shared_ptr<GradedLieAlgebra> doubled(const GradedLieAlgebra& one) {
    auto alg = std::make_shared<GradedLieAlgebra>();
    int d = one.dim_;
    alg->dim_ = 2 * d;
    alg->n_ = one.n_;
    alg->f_.assign(static_cast<std::size_t>(2 * d) * (2 * d), {});
    for (int copy = 0; copy < 2; ++copy) {
      const char* prefix = copy == 0 ? "L." : "R.";
      for (int a = 0; a < d; ++a) {
        alg->grade_.push_back(one.grade_[a]);
        alg->names_.push_back(prefix + one.names_[a]);
      }
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          for (const auto& [c, q] : one.bracket_basis(a, b))
            alg->f_[static_cast<std::size_t>(copy * d + a) * (2 * d) + (copy * d + b)]
                .emplace_back(copy * d + c, q);
    }
    alg->description_ = one.description_ + ", two commuting copies";
    finish(*alg);
    return alg;
  }

  static std::shared_ptr<GradedLieAlgebra> raw(const AlgebraSpec& spec) {
    auto alg = std::make_shared<GradedLieAlgebra>();
    if (spec.dim <= 0) throw Error(Errc::BadParameters, "raw algebra needs dim > 0");
    if (spec.n_grades < 1) throw Error(Errc::BadParameters, "grading order must be >= 1");
    if (static_cast<int>(spec.grades.size()) != spec.dim)
      throw Error(Errc::BadParameters, "grades list must have one entry per generator");
    alg->dim_ = spec.dim;
    alg->n_ = spec.n_grades;
    alg->grade_ = spec.grades;
    for (int g : alg->grade_)
      if (g < 0 || g >= alg->n_)
        throw Error(Errc::BadParameters, "generator grade outside 0..N-1");
    if (!spec.names.empty()) {
      if (static_cast<int>(spec.names.size()) != spec.dim)
        throw Error(Errc::BadParameters, "names list must have one entry per generator");
      alg->names_ = spec.names;
    } else {
      for (int a = 0; a < spec.dim; ++a) alg->names_.push_back("T" + std::to_string(a));
    }
    std::map<std::pair<int, int>, std::map<int, Rational>> given;
    for (const auto& [a, b, c, q] : spec.f_entries) {
      if (a < 0 || a >= spec.dim || b < 0 || b >= spec.dim || c < 0 || c >= spec.dim)
        throw Error(Errc::BadParameters, "structure constant index out of range");
      given[{a, b}][c] += q;
    }
    // Entries listed for one order imply the antisymmetric partner; when both
    // orders are given explicitly, validate() checks their consistency.
    alg->f_.assign(static_cast<std::size_t>(spec.dim) * spec.dim, {});
    for (const auto& [ab, terms] : given) {
      auto [a, b] = ab;
      for (const auto& [c, q] : terms) {
        if (q == 0) continue;
        alg->f_[static_cast<std::size_t>(a) * spec.dim + b].emplace_back(c, q);
        if (!given.count({b, a}))
          alg->f_[static_cast<std::size_t>(b) * spec.dim + a].emplace_back(c, -q);
      }
    }
    alg->description_ = "custom algebra (dim " + std::to_string(spec.dim) + ")";
    finish(*alg);
    return alg;
  }

  static void finish(GradedLieAlgebra& alg) {
    for (auto& list : alg.f_)
      std::sort(list.begin(), list.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
    alg.by_grade_.assign(alg.n_, {});
    for (int a = 0; a < alg.dim_; ++a) alg.by_grade_[alg.grade_[a]].push_back(a);
    alg.killing_ = Mat(alg.dim_, alg.dim_);
    for (int a = 0; a < alg.dim_; ++a)
      for (int b = a; b < alg.dim_; ++b) {
        Rational k = 0;
        for (int e = 0; e < alg.dim_; ++e)
          for (const auto& [c, q1] : alg.bracket_basis(a, e))
            for (const auto& [e2, q2] : alg.bracket_basis(b, c))
              if (e2 == e) k += q1 * q2;
        alg.killing_(a, b) = k;
        alg.killing_(b, a) = k;
      }
    alg.validate();
  }
};

std::shared_ptr<const GradedLieAlgebra> GradedLieAlgebra::build(const AlgebraSpec& spec) {
  std::shared_ptr<GradedLieAlgebra> alg;
  if (spec.preset.empty()) {
    alg = AlgebraBuilder::raw(spec);
  } else {
    MatrixBasis mb;
    if (spec.preset == "sl")
      mb = sl_basis(spec.n, spec.grading);
    else if (spec.preset == "su")
      mb = su_basis(spec.n, spec.grading);
    else if (spec.preset == "so")
      mb = so_basis(spec.n, spec.grading, spec.block);
    else
      throw Error(Errc::BadParameters, "unknown preset '" + spec.preset + "'");
    alg = AlgebraBuilder::from_matrix_basis(mb);
  }
  if (spec.doubled) alg = AlgebraBuilder::doubled(*alg);
  return alg;
}

}  // namespace laxkit
