// The chiral operator pair (S+, S-) acting on currents: S+ on the
// self-dual component, S- on the anti-self-dual one. Pairs are either
// grading-diagonal (an eigenvalue per grade) or general matrices acting on
// the algebra in its basis. Constraint projectors live on ker(S+ - S-).
#pragma once

#include "laxkit/algebra.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace laxkit {

class ChiralOperatorPair {
 public:
  // Grading-diagonal action: one eigenvalue per grade and chirality.
  static ChiralOperatorPair diagonal(AlgebraPtr alg, std::vector<Rational> eig_plus,
                                     std::vector<Rational> eig_minus, Rational alpha = 0);
  // General action: dim x dim matrices in the algebra basis.
  static ChiralOperatorPair matrix(AlgebraPtr alg, Mat plus, Mat minus, Rational alpha = 0);

  const AlgebraPtr& algebra() const { return alg_; }
  bool is_diagonal() const { return diagonal_; }
  const std::vector<Rational>& eigenvalues_plus() const { return eig_plus_; }
  const std::vector<Rational>& eigenvalues_minus() const { return eig_minus_; }
  const Mat& plus() const { return plus_; }
  const Mat& minus() const { return minus_; }
  const Rational& alpha() const { return alpha_; }

  Vec apply_plus(const Vec& v) const { return plus_.apply(v); }
  Vec apply_minus(const Vec& v) const { return minus_.apply(v); }
  Mat difference() const { return plus_ - minus_; }

 private:
  AlgebraPtr alg_;
  bool diagonal_ = false;
  std::vector<Rational> eig_plus_, eig_minus_;
  Mat plus_, minus_;
  Rational alpha_ = 0;
};

// A part of the operator before the chirality split: either one eigenvalue
// per grade or a full matrix.
using SigmaPart = std::variant<std::vector<Rational>, Mat>;

// Builds S+/- = antisym +/- sym + alpha * Id and verifies the symmetry types
// against the Killing form: antisym^T k + k antisym = 0 and
// sym^T k - k sym = 0. Throws BadParameters on violation.
ChiralOperatorPair from_action(AlgebraPtr alg, const SigmaPart& antisym, const SigmaPart& sym,
                               const Rational& alpha = 0);

// Residual of k^{-1} (S+)^T k + S- - 2 alpha Id; the pair descends from a
// single action on currents exactly when this vanishes. Throws DegenerateForm
// when the Killing form is singular.
struct TransposeRelation {
  bool holds = false;
  Mat residual;
};
TransposeRelation check_transpose_relation(const ChiralOperatorPair& pair);

// (j, *j) -> (j_plus, j_minus) with j_pm = (j +- *j) / 2.
std::pair<Vec, Vec> chiral_split(const Vec& j, const Vec& j_star);

struct ConstraintProjector {
  std::optional<int> grade;  // set for grade projectors on diagonal pairs
  Mat mat;
  std::string label;
};

// The operators through which undetermined current components can enter:
// grade projectors on grades where the two eigenvalue lists agree (diagonal
// pairs), or rank-one projectors spanning the left kernel of S+ - S-
// (matrix pairs). Empty when the difference is invertible.
std::vector<ConstraintProjector> find_constraint_projectors(const ChiralOperatorPair& pair);

// Exact Moore-Penrose pseudo-inverse of S+ - S-.
Mat difference_pseudo_inverse(const ChiralOperatorPair& pair);

}  // namespace laxkit
