#pragma once
// Order-by-order flatness verification of the exponential connection: the
// derivative terms are solved from the order-0/1 equations, the expansion is
// carried to order K, and residuals are reduced modulo the constraint
// subspace. A seeded floating-point route cross-checks the exact one.

#include <map>

#include "laxkit/integrability.hpp"
#include "laxkit/parallel.hpp"

namespace laxkit {

// Exact data shared across many solve_dJ calls on one pair.
struct FlatnessContext {
  Mat dpinv;       // pseudo-inverse of D = Sigma+ - Sigma-
  Mat completion;  // (1 - D^+ D) / 2, the symmetric kernel completion
  Mat coker;       // 1 - D D^+
};
FlatnessContext flatness_context(const ChiralOperatorPair& pair);

struct DerivativeTerms {
  Vec plus, minus;
  // True when the order-1 equation left a kernel component that had to be
  // absorbed by the constraint subspace.
  bool used_constraints = false;
};

// Eliminates dJ+- from the order-0 (Maurer-Cartan) and order-1 (equations of
// motion) coefficients, with t1 in the J+ slot and t2 in the J- slot. Throws
// UnresolvedKernelComponent when the order-1 kernel residual lies outside the
// span of the projected constraint sources.
DerivativeTerms solve_dJ(const ChiralOperatorPair& pair,
                         const std::vector<ConstraintProjector>& projectors,
                         const FlatnessContext& ctx, const Vec& t1, const Vec& t2);
DerivativeTerms solve_dJ(const ChiralOperatorPair& pair,
                         const std::vector<ConstraintProjector>& projectors,
                         const Vec& t1, const Vec& t2);

// Raw lambda^n coefficients F_0..F_order of the flatness form for one
// (t1, t2), before any constraint reduction.
std::vector<Vec> flatness_coefficients(const ChiralOperatorPair& pair,
                                       const std::vector<ConstraintProjector>& projectors,
                                       const FlatnessContext& ctx, const Vec& t1,
                                       const Vec& t2, int order);

struct FlatnessSeriesReport {
  int orders_checked = 0;
  bool modulo_constraints = false;  // some residual was reduced by constraints
  bool all_zero = true;
  // order -> list of ((a, b) basis pair, reduced residual), nonzero only.
  std::map<int, std::vector<std::pair<std::pair<int, int>, Vec>>> residuals;
};
FlatnessSeriesReport flatness_series(const ChiralOperatorPair& pair,
                                     const std::vector<ConstraintProjector>& projectors,
                                     int order = 8, Exec exec = Exec::serial);

struct NumericFlatnessReport {
  double max_residual = 0.0;  // relative to the term scale, over all samples
  unsigned seed = 0;
  int trials = 0;
  std::vector<double> lambdas;
};
NumericFlatnessReport flatness_numeric(const ChiralOperatorPair& pair,
                                       const std::vector<ConstraintProjector>& projectors,
                                       std::vector<double> lambdas = {},
                                       int trials = 100, unsigned seed = 2024,
                                       Exec exec = Exec::serial);

}  // namespace laxkit
