#include "laxkit/flatness.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>

#include "laxkit/error.hpp"
#include "laxkit/numeric.hpp"

namespace laxkit {

namespace {

struct PairTerms {
  Vec br;  // [t1, t2]
  Vec x;   // [Sigma+ t1, t2] + [t1, Sigma- t2]
  Vec u;   // Sigma-(br) - x
  Vec v;   // Sigma+(br) - x
};

PairTerms pair_terms(const ChiralOperatorPair& pair, const Vec& t1, const Vec& t2) {
  const auto& alg = *pair.algebra();
  PairTerms t;
  t.br = alg.bracket(t1, t2);
  t.x = alg.bracket(pair.apply_plus(t1), t2) + alg.bracket(t1, pair.apply_minus(t2));
  t.u = pair.apply_minus(t.br) - t.x;
  t.v = pair.apply_plus(t.br) - t.x;
  return t;
}

// The projected constraint sources Pi_i(u), Pi_i(v): the quantities the
// model's constraints set to zero.
std::vector<Vec> constraint_sources(const std::vector<ConstraintProjector>& projectors,
                                    const PairTerms& t) {
  std::vector<Vec> out;
  for (const auto& cp : projectors) {
    for (const Vec* src : {&t.u, &t.v}) {
      Vec w = cp.mat.apply(*src);
      if (!is_zero(w)) out.push_back(std::move(w));
    }
  }
  return out;
}

DerivativeTerms solve_from_terms(const ChiralOperatorPair& pair,
                                 const std::vector<ConstraintProjector>& projectors,
                                 const FlatnessContext& ctx, const PairTerms& t) {
  DerivativeTerms dj;
  Vec half_ker = ctx.completion.apply(t.br);
  dj.plus = ctx.dpinv.apply(t.u) - half_ker;
  dj.minus = Rational(-1) * ctx.dpinv.apply(t.v) - half_ker;
  Vec order1 = ctx.coker.apply(t.u);
  if (!is_zero(order1)) {
    dj.used_constraints = true;
    RowSpan span(pair.algebra()->dim());
    for (auto& w : constraint_sources(projectors, t)) span.add(std::move(w));
    if (!span.contains(order1))
      throw Error(Errc::UnresolvedKernelComponent,
                  "order-1 kernel residual is not spanned by the constraints");
  }
  return dj;
}

// Double-precision structure-constant bracket for the floating route.
std::vector<double> bracket_d(const GradedLieAlgebra& alg,
                              const std::vector<double>& x,
                              const std::vector<double>& y) {
  std::vector<double> out(x.size(), 0.0);
  int d = alg.dim();
  for (int a = 0; a < d; ++a) {
    if (x[a] == 0.0) continue;
    for (int b = 0; b < d; ++b) {
      if (y[b] == 0.0) continue;
      for (const auto& [c, f] : alg.bracket_basis(a, b))
        out[c] += x[a] * y[b] * static_cast<double>(f);
    }
  }
  return out;
}

}  // namespace

FlatnessContext flatness_context(const ChiralOperatorPair& pair) {
  FlatnessContext ctx;
  Mat d = pair.difference();
  ctx.dpinv = pseudo_inverse(d);
  Mat id = Mat::identity(d.rows());
  ctx.completion = Rational(1, 2) * (id - ctx.dpinv * d);
  ctx.coker = id - d * ctx.dpinv;
  return ctx;
}

DerivativeTerms solve_dJ(const ChiralOperatorPair& pair,
                         const std::vector<ConstraintProjector>& projectors,
                         const FlatnessContext& ctx, const Vec& t1, const Vec& t2) {
  return solve_from_terms(pair, projectors, ctx, pair_terms(pair, t1, t2));
}

DerivativeTerms solve_dJ(const ChiralOperatorPair& pair,
                         const std::vector<ConstraintProjector>& projectors,
                         const Vec& t1, const Vec& t2) {
  return solve_dJ(pair, projectors, flatness_context(pair), t1, t2);
}

std::vector<Vec> flatness_coefficients(const ChiralOperatorPair& pair,
                                       const std::vector<ConstraintProjector>& projectors,
                                       const FlatnessContext& ctx, const Vec& t1,
                                       const Vec& t2, int order) {
  const auto& alg = *pair.algebra();
  PairTerms t = pair_terms(pair, t1, t2);
  DerivativeTerms dj = solve_from_terms(pair, projectors, ctx, t);

  // Sigma-power towers for the four ingredients.
  std::vector<Vec> tp(order + 1), tm(order + 1), dp(order + 1), dm(order + 1);
  tp[0] = t1;
  tm[0] = t2;
  dp[0] = dj.plus;
  dm[0] = dj.minus;
  for (int k = 1; k <= order; ++k) {
    tp[k] = pair.apply_plus(tp[k - 1]);
    tm[k] = pair.apply_minus(tm[k - 1]);
    dp[k] = pair.apply_plus(dp[k - 1]);
    dm[k] = pair.apply_minus(dm[k - 1]);
  }
  std::vector<Rational> inv_fact(order + 1, 1);
  for (int k = 1; k <= order; ++k) inv_fact[k] = inv_fact[k - 1] / k;

  std::vector<Vec> out(order + 1);
  for (int n = 0; n <= order; ++n) {
    Vec f = inv_fact[n] * dp[n] + inv_fact[n] * dm[n];
    for (int i = 0; i <= n; ++i)
      f += (inv_fact[i] * inv_fact[n - i]) * alg.bracket(tp[i], tm[n - i]);
    out[n] = std::move(f);
  }
  return out;
}

FlatnessSeriesReport flatness_series(const ChiralOperatorPair& pair,
                                     const std::vector<ConstraintProjector>& projectors,
                                     int order, Exec exec) {
  if (order < 2) throw Error(Errc::BadParameters, "flatness order must be >= 2");
  const auto& alg = *pair.algebra();
  int d = alg.dim();
  FlatnessContext ctx = flatness_context(pair);

  struct Slot {
    std::vector<std::pair<int, Vec>> nonzero;  // (order, residual)
    bool reduced = false;
    bool failed = false;
    std::string error;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(d) * d);

  parallel_for(static_cast<long long>(d) * d, exec, [&](long long idx) {
    int a = static_cast<int>(idx / d), b = static_cast<int>(idx % d);
    Slot& slot = slots[idx];
    Vec t1(d), t2(d);
    t1[a] = 1;
    t2[b] = 1;
    try {
      PairTerms t = pair_terms(pair, t1, t2);
      auto coeffs = flatness_coefficients(pair, projectors, ctx, t1, t2, order);
      // Constraint subspace, grown with the Sigma-word length allowed at each
      // order: length <= max(0, n - 2).
      RowSpan span(d);
      std::vector<Vec> frontier;
      for (auto& w : constraint_sources(projectors, t)) {
        if (span.add(w)) frontier.push_back(w);
      }
      auto grow = [&]() {
        std::vector<Vec> next;
        for (const auto& w : frontier)
          for (bool plus : {true, false}) {
            Vec img = plus ? pair.apply_plus(w) : pair.apply_minus(w);
            if (span.add(img)) next.push_back(std::move(img));
          }
        frontier = std::move(next);
      };
      for (int n = 0; n <= order; ++n) {
        if (n >= 3) grow();
        Vec r = span.dim() ? span.reduce(coeffs[n]) : coeffs[n];
        if (span.dim() && !(r == coeffs[n])) slot.reduced = true;
        if (!is_zero(r)) slot.nonzero.emplace_back(n, std::move(r));
      }
    } catch (const Error& e) {
      slot.failed = true;
      slot.error = e.what();
    }
  });

  FlatnessSeriesReport rep;
  rep.orders_checked = order;
  for (long long idx = 0; idx < static_cast<long long>(slots.size()); ++idx) {
    const Slot& slot = slots[idx];
    if (slot.failed) throw Error(Errc::UnresolvedKernelComponent, slot.error);
    if (slot.reduced) rep.modulo_constraints = true;
    int a = static_cast<int>(idx / d), b = static_cast<int>(idx % d);
    for (const auto& [n, r] : slot.nonzero) {
      rep.all_zero = false;
      rep.residuals[n].push_back({{a, b}, r});
    }
  }
  return rep;
}

NumericFlatnessReport flatness_numeric(const ChiralOperatorPair& pair,
                                       const std::vector<ConstraintProjector>& projectors,
                                       std::vector<double> lambdas, int trials,
                                       unsigned seed, Exec exec) {
  const auto& alg = *pair.algebra();
  int d = alg.dim();
  if (lambdas.empty()) lambdas = {-2.0, -1.0, 0.5, 1.0, 3.0};
  FlatnessContext ctx = flatness_context(pair);

  // Per-lambda exponentials are trial-independent.
  std::vector<DMat> ep, em;
  for (double l : lambdas) {
    ep.push_back(dmat_exp(scaled(to_double(pair.plus()), l)));
    em.push_back(dmat_exp(scaled(to_double(pair.minus()), l)));
  }

  std::vector<double> worst(trials, 0.0);
  std::vector<std::string> errors(trials);
  parallel_for(trials, exec, [&](long long trial) {
    std::mt19937 rng(seed + static_cast<unsigned>(trial));
    Vec t1(d), t2(d);
    for (int i = 0; i < d; ++i) {
      t1[i] = static_cast<long long>(rng() % 21) - 10;
      t2[i] = static_cast<long long>(rng() % 21) - 10;
    }
    try {
      PairTerms t = pair_terms(pair, t1, t2);
      DerivativeTerms dj = solve_from_terms(pair, projectors, ctx, t);

      // Full Krylov closure of the constraint sources under Sigma+-, then an
      // orthonormal double basis for the reduction.
      RowSpan span(d);
      std::vector<Vec> frontier, basis;
      for (auto& w : constraint_sources(projectors, t))
        if (span.add(w)) {
          frontier.push_back(w);
          basis.push_back(w);
        }
      while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const auto& w : frontier)
          for (bool plus : {true, false}) {
            Vec img = plus ? pair.apply_plus(w) : pair.apply_minus(w);
            if (span.add(img)) {
              next.push_back(img);
              basis.push_back(std::move(img));
            }
          }
        frontier = std::move(next);
      }
      std::vector<std::vector<double>> ortho;
      for (const auto& w : basis) {
        auto q = to_double(w);
        for (const auto& o : ortho) {
          double dot = 0;
          for (int i = 0; i < d; ++i) dot += q[i] * o[i];
          for (int i = 0; i < d; ++i) q[i] -= dot * o[i];
        }
        double nrm = 0;
        for (int i = 0; i < d; ++i) nrm += q[i] * q[i];
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) continue;
        for (int i = 0; i < d; ++i) q[i] /= nrm;
        ortho.push_back(std::move(q));
      }

      auto djp = to_double(dj.plus), djm = to_double(dj.minus);
      auto x1 = to_double(t1), x2 = to_double(t2);
      for (std::size_t li = 0; li < lambdas.size(); ++li) {
        auto term1 = matvec(ep[li], djp);
        auto term2 = matvec(em[li], djm);
        auto term3 = bracket_d(alg, matvec(ep[li], x1), matvec(em[li], x2));
        double scale = std::max({1.0, max_abs(term1), max_abs(term2), max_abs(term3)});
        std::vector<double> f(d);
        for (int i = 0; i < d; ++i) f[i] = term1[i] + term2[i] + term3[i];
        for (const auto& o : ortho) {
          double dot = 0;
          for (int i = 0; i < d; ++i) dot += f[i] * o[i];
          for (int i = 0; i < d; ++i) f[i] -= dot * o[i];
        }
        worst[trial] = std::max(worst[trial], max_abs(f) / scale);
      }
    } catch (const Error& e) {
      errors[trial] = e.what();
    }
  });

  for (const auto& e : errors)
    if (!e.empty()) throw Error(Errc::UnresolvedKernelComponent, e);
  NumericFlatnessReport rep;
  rep.seed = seed;
  rep.trials = trials;
  rep.lambdas = lambdas;
  for (double w : worst) rep.max_residual = std::max(rep.max_residual, w);
  return rep;
}

}  // namespace laxkit
