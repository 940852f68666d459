// Deciding integrability of a coset sigma model from its chiral operator
// pair. The quadratic condition is algebraic: for each pair of currents the
// two-form residual must vanish identically for every choice of fields,
// possibly after adding a constraint operator Pi supported on
// ker(S+ - S-). check_graded handles grading-diagonal pairs by scalar
// factor tables; check_general handles arbitrary pairs by solving an exact
// linear system for Pi over the constraint projector family.
#pragma once

#include "laxkit/operators.hpp"
#include "laxkit/parallel.hpp"

#include <map>
#include <string>
#include <vector>

namespace laxkit {

enum class Verdict { integrable, integrable_with_constraints, not_integrable };
const char* verdict_name(Verdict v);

enum class Branch { plus, minus };

// Residual of the quadratic condition for basis currents (t_a in the
// self-dual slot, t_b in the anti-self-dual slot) on one chirality branch,
// with an optional constraint operator. The model is integrable with that
// operator iff this vanishes for all (a, b) on both branches.
// The context carries the conjugated operators D S-/+ D^+ so bulk callers
// pay for the pseudo-inverse once per pair of operators.
struct MapcondContext {
  Mat conj_minus;  // D S- D^+, used on the plus branch
  Mat conj_plus;   // D S+ D^+, used on the minus branch
};
MapcondContext mapcond_context(const ChiralOperatorPair& pair);
Vec mapcond_residual(const ChiralOperatorPair& pair, const MapcondContext& ctx, int a, int b,
                     Branch branch, const Mat* constraint_op = nullptr);
Vec mapcond_residual(const ChiralOperatorPair& pair, int a, int b, Branch branch,
                     const Mat* constraint_op = nullptr);

struct GradedCheckReport {
  Verdict verdict = Verdict::not_integrable;
  int n = 1;
  // Factor tables in row j = anti-self-dual slot grade, column k = self-dual
  // slot grade; entry = eig+[k] + eig-[j] - eig_branch[(k+j) mod n].
  std::vector<std::vector<Rational>> table_plus, table_minus;
  std::vector<std::vector<Rational>> product;
  std::vector<std::vector<bool>> vacuous;  // bracket vanishes identically on the pair
  std::vector<int> kernel_grades;          // grades with eig+[g] == eig-[g]
  std::map<int, Rational> pi;              // constraint eigenvalue per kernel grade
  // Positions (j, k) whose nonzero product forces a constraint, grouped by
  // the grade of the projector that absorbs them.
  std::vector<std::pair<int, int>> constraint_positions;
  std::map<int, std::vector<std::pair<int, int>>> pi_positions;
  std::string detail;  // failure description when not integrable
};
GradedCheckReport check_graded(const ChiralOperatorPair& pair);

struct GeneralCheckReport {
  Verdict verdict = Verdict::not_integrable;
  std::vector<ConstraintProjector> projectors;
  Vec coefficients;  // solved Pi coefficients over the family (empty if none)
  std::string detail;
};
// Uses find_constraint_projectors(pair) for the family.
GeneralCheckReport check_general(const ChiralOperatorPair& pair, Exec exec = Exec::serial);
GeneralCheckReport check_general(const ChiralOperatorPair& pair,
                                 const std::vector<ConstraintProjector>& projectors, Exec exec);

// Where each constraint projector actually acts: the grade pairs (j, k) with
// a nonzero projected source term, and the matching current equation.
struct ConstraintDescriptor {
  int projector = 0;                          // index into the family
  std::vector<std::pair<int, int>> positions;  // (j, k) as in the factor tables
  std::vector<std::string> equations;          // "[J+(k), J-(j)] = 0"
};
std::vector<ConstraintDescriptor> derive_constraints(
    const ChiralOperatorPair& pair, const std::vector<ConstraintProjector>& projectors);

// Symbolic content of the equations of motion implied by flatness at first
// order: dplus_coeff dJ+ + dminus_coeff dJ- + [slot_plus J+, J-] +
// [J+, slot_minus J-] = 0.
struct EomDescriptor {
  Mat dplus_coeff, dminus_coeff;
  Mat slot_plus, slot_minus;
  // Diagonal pairs: bilinear coefficient eig+[p] + eig-[m] per grade pair.
  std::vector<std::vector<Rational>> bilinear_table;
  std::string rendered;
};
EomDescriptor eom_descriptor(const ChiralOperatorPair& pair);

}  // namespace laxkit
