#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "laxkit/flatness.hpp"

using namespace laxkit;

namespace {

AlgebraPtr sl_cyclic(int n) {
  AlgebraSpec s;
  s.preset = "sl";
  s.n = n;
  s.grading = "cyclic";
  return GradedLieAlgebra::build(s);
}

AlgebraPtr sl_cartan(int n) {
  AlgebraSpec s;
  s.preset = "sl";
  s.n = n;
  s.grading = "cartan";
  return GradedLieAlgebra::build(s);
}

std::vector<Rational> eig(std::initializer_list<Rational> v) { return v; }

Vec basis_vec(const AlgebraPtr& alg, const std::string& name) {
  for (int i = 0; i < alg->dim(); ++i)
    if (alg->name_of(i) == name) {
      Vec v(alg->dim());
      v[i] = 1;
      return v;
    }
  REQUIRE(false);
  return {};
}

ChiralOperatorPair z4_pair() {
  return ChiralOperatorPair::diagonal(sl_cyclic(4), eig({0, -1, -2, 1}),
                                      eig({0, -1, 2, 1}));
}

}  // namespace

TEST_CASE("derivative terms for the order-2 coset match the hand solution") {
  auto alg = sl_cyclic(2);
  auto pair = ChiralOperatorPair::diagonal(alg, eig({0, -1}), eig({0, 1}));
  auto projs = find_constraint_projectors(pair);

  // Both inputs in grade 1: dJ+- = -1/2 [t1, t2].
  Vec e12 = basis_vec(alg, "E12"), e21 = basis_vec(alg, "E21");
  auto dj = solve_dJ(pair, projs, e12, e21);
  Vec half_br = Rational(-1, 2) * alg->bracket(e12, e21);
  CHECK(dj.plus == half_br);
  CHECK(dj.minus == half_br);
  CHECK(!dj.used_constraints);

  // Mixed grades: t1 = H1 (grade 0), t2 = E21 (grade 1) forces only dJ-.
  Vec h1 = basis_vec(alg, "H1");
  auto dj2 = solve_dJ(pair, projs, h1, e21);
  CHECK(is_zero(dj2.plus));
  CHECK(dj2.minus == (Rational(2) * e21));
}

TEST_CASE("derivative terms satisfy the order-0 and order-1 equations") {
  auto pair = z4_pair();
  auto projs = find_constraint_projectors(pair);
  auto ctx = flatness_context(pair);
  const auto& alg = *pair.algebra();
  int d = alg.dim();
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    Vec t1(d), t2(d);
    for (int i = 0; i < d; ++i) {
      t1[i] = static_cast<long long>(rng() % 11) - 5;
      t2[i] = static_cast<long long>(rng() % 11) - 5;
    }
    auto coeffs = flatness_coefficients(pair, projs, ctx, t1, t2, 2);
    CHECK(is_zero(coeffs[0]));  // Maurer-Cartan holds exactly
  }
}

TEST_CASE("raw order-4 coefficients at a constraint position follow ((-3)^n - 1)/n!") {
  auto pair = z4_pair();
  auto projs = find_constraint_projectors(pair);
  auto ctx = flatness_context(pair);
  const auto& alg = *pair.algebra();
  Vec e13 = basis_vec(pair.algebra(), "E13");  // grade 2, the J+ slot
  Vec e21 = basis_vec(pair.algebra(), "E21");  // grade 1, the J- slot
  Vec br = alg.bracket(e13, e21);
  CHECK(!is_zero(br));
  auto coeffs = flatness_coefficients(pair, projs, ctx, e13, e21, 4);
  Rational fact = 1;
  Rational pw = 1;
  for (int n = 0; n <= 4; ++n) {
    if (n > 0) fact *= n;
    // ((-3)^n - 1)/n! times the bracket.
    CHECK(coeffs[n] == ((pw - 1) / fact) * br);
    pw *= -3;
  }
}

TEST_CASE("order-4 connection is flat to order 8 modulo its two constraints") {
  auto pair = z4_pair();
  auto rep = flatness_series(pair, find_constraint_projectors(pair), 8);
  CHECK(rep.all_zero);
  CHECK(rep.modulo_constraints);
  CHECK(rep.orders_checked == 8);
  CHECK(rep.residuals.empty());
}

TEST_CASE("cyclic cosets are flat to order 8 with no constraint use") {
  for (int n : {2, 3, 5}) {
    auto alg = sl_cyclic(n);
    std::vector<Rational> ep(n), em(n);
    for (int k = 0; k < n; ++k) {
      ep[k] = -k;
      em[k] = k == 0 ? 0 : n - k;
    }
    auto pair = ChiralOperatorPair::diagonal(alg, ep, em);
    auto rep = flatness_series(pair, find_constraint_projectors(pair), 8);
    CHECK(rep.all_zero);
    CHECK(!rep.modulo_constraints);
  }
}

TEST_CASE("zero operators give a connection flat at every order") {
  auto alg = sl_cyclic(3);
  auto pair = ChiralOperatorPair::diagonal(alg, eig({0, 0, 0}), eig({0, 0, 0}));
  auto rep = flatness_series(pair, {}, 6);
  CHECK(rep.all_zero);
  CHECK(!rep.modulo_constraints);
}

TEST_CASE("a non-integrable point first fails flatness at order 2") {
  // The general order-2 family at (alpha, beta, gamma) = (1, 2, 3).
  auto alg = sl_cartan(3);
  auto pair = ChiralOperatorPair::diagonal(alg, eig({3, 4}), eig({-1, -2}));
  auto rep = flatness_series(pair, find_constraint_projectors(pair), 4);
  CHECK(!rep.all_zero);
  CHECK(rep.residuals.count(0) == 0);
  CHECK(rep.residuals.count(1) == 0);
  CHECK(rep.residuals.count(2) == 1);
}

TEST_CASE("twice the order-2 coefficient is the quadratic condition residual") {
  // Random diagonal pairs with invertible difference operator, where the
  // identity holds exactly with no projector freedom.
  std::mt19937 rng(11);
  auto random_rational = [&]() {
    return Rational(static_cast<long long>(rng() % 13) - 6);
  };
  for (int trial = 0; trial < 12; ++trial) {
    AlgebraPtr alg = (trial % 2) ? sl_cyclic(3) : sl_cyclic(2);
    int n = alg->grading_order();
    std::vector<Rational> ep(n), em(n);
    bool invertible = true;
    for (int g = 0; g < n; ++g) {
      ep[g] = random_rational();
      em[g] = random_rational();
      if (ep[g] == em[g]) invertible = false;
    }
    if (!invertible) continue;
    auto pair = ChiralOperatorPair::diagonal(alg, ep, em);
    auto fctx = flatness_context(pair);
    auto mctx = mapcond_context(pair);
    int d = alg->dim();
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        Vec t1(d), t2(d);
        t1[a] = 1;
        t2[b] = 1;
        auto coeffs = flatness_coefficients(pair, {}, fctx, t1, t2, 2);
        Vec doubled = Rational(2) * coeffs[2];
        CHECK(doubled == mapcond_residual(pair, mctx, a, b, Branch::plus));
        CHECK(doubled == mapcond_residual(pair, mctx, a, b, Branch::minus));
      }
  }
}

TEST_CASE("missing projectors surface as an unresolved kernel component") {
  auto pair = z4_pair();
  const auto& alg = *pair.algebra();
  Vec e13 = basis_vec(pair.algebra(), "E13"), e21 = basis_vec(pair.algebra(), "E21");
  CHECK(!is_zero(alg.bracket(e13, e21)));
  CHECK_THROWS_AS((void)solve_dJ(pair, {}, e13, e21), Error);
  CHECK_THROWS_AS((void)flatness_series(pair, {}, 4), Error);
}

TEST_CASE("identity operators are flat only modulo the full current constraint") {
  // Sigma+- = alpha on an ungraded algebra: A = e^{alpha lambda} J, flat
  // subject to dJ = [J, J] = 0.
  AlgebraSpec s;
  s.preset = "sl";
  s.n = 2;
  s.grading = "none";
  auto alg = GradedLieAlgebra::build(s);
  auto pair = ChiralOperatorPair::diagonal(alg, eig({1}), eig({1}), Rational(1));
  auto projs = find_constraint_projectors(pair);
  REQUIRE(projs.size() == 1);
  auto rep = flatness_series(pair, projs, 6);
  CHECK(rep.all_zero);
  CHECK(rep.modulo_constraints);
}

TEST_CASE("numeric flatness separates integrable models from the witness") {
  auto z3 = ChiralOperatorPair::diagonal(sl_cyclic(3), eig({0, -1, -2}), eig({0, 2, 1}));
  auto good = flatness_numeric(z3, find_constraint_projectors(z3), {}, 20, 2024);
  CHECK(good.max_residual < 1e-10);
  CHECK(good.trials == 20);
  CHECK(good.lambdas.size() == 5);

  auto witness =
      ChiralOperatorPair::diagonal(sl_cartan(3), eig({3, 4}), eig({-1, -2}));
  auto bad = flatness_numeric(witness, find_constraint_projectors(witness), {}, 20, 2024);
  CHECK(bad.max_residual > 1e-3);
}

TEST_CASE("numeric flatness accepts the constrained order-4 model") {
  auto pair = z4_pair();
  auto rep = flatness_numeric(pair, find_constraint_projectors(pair), {}, 20, 99);
  CHECK(rep.max_residual < 1e-10);
  CHECK(rep.seed == 99);
}
