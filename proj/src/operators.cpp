#include "laxkit/operators.hpp"

#include <cassert>

namespace laxkit {

namespace {

Mat diagonal_matrix(const GradedLieAlgebra& alg, const std::vector<Rational>& eig) {
  Mat m(alg.dim(), alg.dim());
  for (int a = 0; a < alg.dim(); ++a) m(a, a) = eig[alg.grade_of(a)];
  return m;
}

void require_square(const GradedLieAlgebra& alg, const Mat& m, const char* what) {
  if (m.rows() != alg.dim() || m.cols() != alg.dim())
    throw Error(Errc::BadParameters,
                std::string(what) + " must be " + std::to_string(alg.dim()) + "x" +
                    std::to_string(alg.dim()) + " in the algebra basis");
}

}  // namespace

ChiralOperatorPair ChiralOperatorPair::diagonal(AlgebraPtr alg, std::vector<Rational> eig_plus,
                                                std::vector<Rational> eig_minus, Rational alpha) {
  if (static_cast<int>(eig_plus.size()) != alg->grading_order() ||
      static_cast<int>(eig_minus.size()) != alg->grading_order())
    throw Error(Errc::BadParameters, "need one eigenvalue per grade (order " +
                                         std::to_string(alg->grading_order()) + ")");
  ChiralOperatorPair p;
  p.alg_ = std::move(alg);
  p.diagonal_ = true;
  p.plus_ = diagonal_matrix(*p.alg_, eig_plus);
  p.minus_ = diagonal_matrix(*p.alg_, eig_minus);
  p.eig_plus_ = std::move(eig_plus);
  p.eig_minus_ = std::move(eig_minus);
  p.alpha_ = std::move(alpha);
  return p;
}

ChiralOperatorPair ChiralOperatorPair::matrix(AlgebraPtr alg, Mat plus, Mat minus,
                                              Rational alpha) {
  require_square(*alg, plus, "S+");
  require_square(*alg, minus, "S-");
  ChiralOperatorPair p;
  p.alg_ = std::move(alg);
  p.diagonal_ = false;
  p.plus_ = std::move(plus);
  p.minus_ = std::move(minus);
  p.alpha_ = std::move(alpha);
  return p;
}

ChiralOperatorPair from_action(AlgebraPtr alg, const SigmaPart& antisym, const SigmaPart& sym,
                               const Rational& alpha) {
  const bool both_diagonal = std::holds_alternative<std::vector<Rational>>(antisym) &&
                             std::holds_alternative<std::vector<Rational>>(sym);
  auto materialize = [&](const SigmaPart& part) -> Mat {
    if (const auto* eig = std::get_if<std::vector<Rational>>(&part)) {
      if (static_cast<int>(eig->size()) != alg->grading_order())
        throw Error(Errc::BadParameters, "need one eigenvalue per grade");
      return diagonal_matrix(*alg, *eig);
    }
    Mat m = std::get<Mat>(part);
    require_square(*alg, m, "operator part");
    return m;
  };
  Mat a = materialize(antisym);
  Mat s = materialize(sym);
  const Mat& k = alg->killing();
  if (!(a.transpose() * k + k * a).is_zero())
    throw Error(Errc::BadParameters, "antisymmetric part is not Killing-antisymmetric");
  if (!(s.transpose() * k - k * s).is_zero())
    throw Error(Errc::BadParameters, "symmetric part is not Killing-symmetric");
  Mat shift = alpha * Mat::identity(alg->dim());
  if (both_diagonal) {
    const auto& ae = std::get<std::vector<Rational>>(antisym);
    const auto& se = std::get<std::vector<Rational>>(sym);
    std::vector<Rational> plus(ae.size()), minus(ae.size());
    for (std::size_t g = 0; g < ae.size(); ++g) {
      plus[g] = ae[g] + se[g] + alpha;
      minus[g] = ae[g] - se[g] + alpha;
    }
    return ChiralOperatorPair::diagonal(alg, std::move(plus), std::move(minus), alpha);
  }
  return ChiralOperatorPair::matrix(alg, a + s + shift, a - s + shift, alpha);
}

TransposeRelation check_transpose_relation(const ChiralOperatorPair& pair) {
  const GradedLieAlgebra& alg = *pair.algebra();
  auto kinv = inverse(alg.killing());
  if (!kinv) throw Error(Errc::DegenerateForm, "Killing form is singular");
  TransposeRelation out;
  out.residual = (*kinv) * pair.plus().transpose() * alg.killing() + pair.minus() -
                 (2 * pair.alpha()) * Mat::identity(alg.dim());
  out.holds = out.residual.is_zero();
  return out;
}

std::pair<Vec, Vec> chiral_split(const Vec& j, const Vec& j_star) {
  assert(j.size() == j_star.size());
  Vec plus(j.size()), minus(j.size());
  const Rational half(1, 2);
  for (std::size_t i = 0; i < j.size(); ++i) {
    plus[i] = half * (j[i] + j_star[i]);
    minus[i] = half * (j[i] - j_star[i]);
  }
  return {std::move(plus), std::move(minus)};
}

std::vector<ConstraintProjector> find_constraint_projectors(const ChiralOperatorPair& pair) {
  const GradedLieAlgebra& alg = *pair.algebra();
  std::vector<ConstraintProjector> out;
  if (pair.is_diagonal()) {
    for (int g = 0; g < alg.grading_order(); ++g) {
      if (pair.eigenvalues_plus()[g] != pair.eigenvalues_minus()[g]) continue;
      ConstraintProjector p;
      p.grade = g;
      p.mat = alg.grade_projector(g);
      p.label = "Pi^" + std::to_string(g);
      out.push_back(std::move(p));
    }
    return out;
  }
  // Left kernel of D = S+ - S-: rank-one projectors e_q w^T with w^T D = 0,
  // one per free column q of rref(D^T). Each w has w[q] = 1 and vanishes on
  // the other free columns, so the projectors are idempotent and pairwise
  // annihilating.
  Rref rr = rref(pair.difference().transpose());
  std::vector<bool> is_pivot(alg.dim(), false);
  for (int p : rr.pivots) is_pivot[p] = true;
  for (int q = 0; q < alg.dim(); ++q) {
    if (is_pivot[q]) continue;
    Vec w(alg.dim());
    w[q] = 1;
    for (int row = 0; row < rr.rank; ++row) w[rr.pivots[row]] = -rr.r(row, q);
    ConstraintProjector p;
    Mat m(alg.dim(), alg.dim());
    for (int j = 0; j < alg.dim(); ++j) m(q, j) = w[j];
    p.mat = std::move(m);
    p.label = "Pi_" + alg.name_of(q);
    out.push_back(std::move(p));
  }
  return out;
}

Mat difference_pseudo_inverse(const ChiralOperatorPair& pair) {
  return pseudo_inverse(pair.difference());
}

}  // namespace laxkit
