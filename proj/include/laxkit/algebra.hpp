// Finite-dimensional Z_N-graded Lie algebras with exact rational structure
// constants. Presets are built from explicit matrix representations and
// decomposed exactly; raw structure constants are accepted as data. Every
// construction path ends in validate(): antisymmetry, Jacobi, grading
// closure, and ad-invariance of the Killing form.
#pragma once

#include "laxkit/error.hpp"
#include "laxkit/matrix.hpp"

#include <memory>
#include <string>
#include <tuple>
#include <vector>

namespace laxkit {

struct AlgebraSpec {
  // Preset form: preset is "sl", "su", or "so"; n the defining matrix size.
  // grading: "none", "cyclic" (sl only: grade(E_ab) = a-b mod n),
  // "cartan" (sl only: symmetric part grade 1, antisymmetric grade 0),
  // "block" (so only: off-diagonal blocks of the first `block` rows grade 1).
  // doubled duplicates the algebra into two commuting copies.
  std::string preset;
  int n = 0;
  std::string grading = "none";
  int block = 0;
  bool doubled = false;

  // Raw form (used when preset is empty): explicit dimension, grading order,
  // per-generator grades, and sparse structure constants f^c_{ab} as
  // (a, b, c, value).
  int dim = 0;
  int n_grades = 1;
  std::vector<int> grades;
  std::vector<std::tuple<int, int, int, Rational>> f_entries;
  std::vector<std::string> names;
};

class GradedLieAlgebra {
 public:
  int dim() const { return dim_; }
  int grading_order() const { return n_; }  // N of Z_N; 1 means ungraded
  int grade_of(int a) const { return grade_[a]; }
  const std::vector<int>& grades() const { return grade_; }
  const std::string& name_of(int a) const { return names_[a]; }
  const std::string& description() const { return description_; }
  const Mat& killing() const { return killing_; }

  // Sparse structure constants of [T_a, T_b].
  const std::vector<std::pair<int, Rational>>& bracket_basis(int a, int b) const {
    return f_[static_cast<std::size_t>(a) * dim_ + b];
  }
  Vec bracket(const Vec& x, const Vec& y) const;
  Mat ad(int a) const;

  Mat grade_projector(int g) const;
  const std::vector<int>& basis_of_grade(int g) const { return by_grade_[g]; }
  // True when [g_a, g_b] = 0 identically as a bilinear map on the grade pair.
  bool pair_vacuous(int ga, int gb) const;

  // Throws Error on the first violated axiom. Construction already runs this;
  // exposed so raw data loaded from files can be revalidated explicitly.
  void validate() const;

  static std::shared_ptr<const GradedLieAlgebra> build(const AlgebraSpec& spec);

 private:
  friend struct AlgebraBuilder;
  int dim_ = 0;
  int n_ = 1;
  std::vector<int> grade_;
  std::vector<std::string> names_;
  std::vector<std::vector<std::pair<int, Rational>>> f_;  // (a*dim+b) -> [(c, f^c_ab)]
  std::vector<std::vector<int>> by_grade_;
  Mat killing_;
  std::string description_;
};

using AlgebraPtr = std::shared_ptr<const GradedLieAlgebra>;

}  // namespace laxkit
