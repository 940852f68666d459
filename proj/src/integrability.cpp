#include "laxkit/integrability.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <sstream>

namespace laxkit {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::integrable: return "integrable";
    case Verdict::integrable_with_constraints: return "integrable-with-constraints";
    case Verdict::not_integrable: return "not-integrable";
  }
  return "?";
}

namespace {

Vec basis_vec(int dim, int a) {
  Vec v(dim);
  v[a] = 1;
  return v;
}

// Shared per-pair source terms of the quadratic condition.
struct PairTerms {
  Vec br;   // [t_a, t_b]
  Vec x;    // [S+ t_a, t_b] + [t_a, S- t_b]
  Vec q;    // [S+S+ t_a, t_b] + 2 [S+ t_a, S- t_b] + [t_a, S-S- t_b]
};

PairTerms pair_terms(const ChiralOperatorPair& p, int a, int b) {
  const GradedLieAlgebra& alg = *p.algebra();
  Vec ta = basis_vec(alg.dim(), a), tb = basis_vec(alg.dim(), b);
  Vec sa = p.apply_plus(ta), sb = p.apply_minus(tb);
  PairTerms t;
  t.br = alg.bracket(ta, tb);
  t.x = alg.bracket(sa, tb) + alg.bracket(ta, sb);
  t.q = alg.bracket(p.apply_plus(sa), tb) + Rational(2) * alg.bracket(sa, sb) +
        alg.bracket(ta, p.apply_minus(sb));
  return t;
}

}  // namespace

MapcondContext mapcond_context(const ChiralOperatorPair& pair) {
  Mat dp = difference_pseudo_inverse(pair);
  return {pair.difference() * pair.minus() * dp, pair.difference() * pair.plus() * dp};
}

Vec mapcond_residual(const ChiralOperatorPair& pair, const MapcondContext& ctx, int a, int b,
                     Branch branch, const Mat* constraint_op) {
  PairTerms t = pair_terms(pair, a, b);
  const Mat& conj = branch == Branch::plus ? ctx.conj_minus : ctx.conj_plus;
  Vec sbr = branch == Branch::plus ? pair.apply_plus(t.br) : pair.apply_minus(t.br);
  Vec sx = branch == Branch::plus ? pair.apply_plus(t.x) : pair.apply_minus(t.x);
  Vec r = conj.apply(sbr - t.x) - sx + t.q;
  if (constraint_op) r += constraint_op->apply(sbr - t.x);
  return r;
}

Vec mapcond_residual(const ChiralOperatorPair& pair, int a, int b, Branch branch,
                     const Mat* constraint_op) {
  return mapcond_residual(pair, mapcond_context(pair), a, b, branch, constraint_op);
}

GradedCheckReport check_graded(const ChiralOperatorPair& pair) {
  if (!pair.is_diagonal())
    throw Error(Errc::BadParameters, "check_graded needs a grading-diagonal pair");
  const GradedLieAlgebra& alg = *pair.algebra();
  const int n = alg.grading_order();
  const auto& ep = pair.eigenvalues_plus();
  const auto& em = pair.eigenvalues_minus();

  GradedCheckReport rep;
  rep.n = n;
  rep.table_plus.assign(n, std::vector<Rational>(n));
  rep.table_minus.assign(n, std::vector<Rational>(n));
  rep.product.assign(n, std::vector<Rational>(n));
  rep.vacuous.assign(n, std::vector<bool>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      rep.table_plus[j][k] = ep[k] + em[j] - ep[(j + k) % n];
      rep.table_minus[j][k] = ep[k] + em[j] - em[(j + k) % n];
      rep.product[j][k] = rep.table_plus[j][k] * rep.table_minus[j][k];
      rep.vacuous[j][k] = alg.pair_vacuous(j, k);
    }
  for (int g = 0; g < n; ++g)
    if (ep[g] == em[g]) rep.kernel_grades.push_back(g);

  // Both branch conditions with one constraint eigenvalue pi_g per target
  // grade g = (j + k) mod n:
  //   (M- + pi) M+ = 0 and (M+ + pi) M- = 0, with M+- = -table entry.
  // Nonzero product forces pi_g = -M (needs M+ = M-); a single nonzero factor
  // forces pi_g = 0; pi_g must vanish on grades outside the kernel list.
  std::map<int, std::optional<Rational>> forced;
  for (int g = 0; g < n; ++g) forced[g] = std::nullopt;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (rep.vacuous[j][k]) continue;
      const int g = (j + k) % n;
      const Rational mp = -rep.table_plus[j][k];
      const Rational mm = -rep.table_minus[j][k];
      std::optional<Rational> need;
      if (mp != 0 && mm != 0) {
        if (mp != mm) {
          rep.verdict = Verdict::not_integrable;
          std::ostringstream os;
          os << "grade pair (j=" << j << ", k=" << k
             << "): the two branch factors disagree (" << to_string(mp) << " vs "
             << to_string(mm) << "), no single constraint eigenvalue works";
          rep.detail = os.str();
          return rep;
        }
        need = -mp;
      } else if (mp != 0 || mm != 0) {
        need = Rational(0);
      }
      if (!need) continue;
      if (forced[g] && *forced[g] != *need) {
        rep.verdict = Verdict::not_integrable;
        std::ostringstream os;
        os << "target grade " << g << " needs constraint eigenvalue " << to_string(*forced[g])
           << " and " << to_string(*need) << " simultaneously";
        rep.detail = os.str();
        return rep;
      }
      forced[g] = need;
      if (*need != 0) {
        rep.constraint_positions.emplace_back(j, k);
        rep.pi_positions[g].emplace_back(j, k);
      }
    }
  for (int g = 0; g < n; ++g) {
    const bool kernel = ep[g] == em[g];
    if (forced[g] && *forced[g] != 0 && !kernel) {
      rep.verdict = Verdict::not_integrable;
      std::ostringstream os;
      os << "grade " << g << " needs constraint eigenvalue " << to_string(*forced[g])
         << " but lies outside ker(S+ - S-)";
      rep.detail = os.str();
      return rep;
    }
    if (kernel) rep.pi[g] = forced[g] ? *forced[g] : Rational(0);
  }
  bool any_nonzero = false;
  for (const auto& [g, v] : rep.pi) any_nonzero = any_nonzero || v != 0;
  rep.verdict = any_nonzero ? Verdict::integrable_with_constraints : Verdict::integrable;
  return rep;
}

GeneralCheckReport check_general(const ChiralOperatorPair& pair, Exec exec) {
  return check_general(pair, find_constraint_projectors(pair), exec);
}

GeneralCheckReport check_general(const ChiralOperatorPair& pair,
                                 const std::vector<ConstraintProjector>& projectors, Exec exec) {
  const GradedLieAlgebra& alg = *pair.algebra();
  const int dim = alg.dim();
  const int np = static_cast<int>(projectors.size());

  GeneralCheckReport rep;
  rep.projectors = projectors;

  Mat dp = difference_pseudo_inverse(pair);
  Mat conj_minus = pair.difference() * pair.minus() * dp;  // used on the + branch
  Mat conj_plus = pair.difference() * pair.plus() * dp;    // used on the - branch

  // One row block per basis pair and branch: base residual plus the linear
  // action of each projector coefficient.
  struct Block {
    Vec base_p, base_m;
    std::vector<Vec> coeff_p, coeff_m;
  };
  std::vector<Block> blocks(static_cast<std::size_t>(dim) * dim);
  parallel_for(blocks.size(), exec, [&](std::size_t idx) {
    const int a = static_cast<int>(idx) / dim;
    const int b = static_cast<int>(idx) % dim;
    PairTerms t = pair_terms(pair, a, b);
    Block& blk = blocks[idx];
    Vec sp = pair.apply_plus(t.br) - t.x;  // S+ [t_a,t_b] - X
    Vec sm = pair.apply_minus(t.br) - t.x;
    blk.base_p = conj_minus.apply(sp) - pair.apply_plus(t.x) + t.q;
    blk.base_m = conj_plus.apply(sm) - pair.apply_minus(t.x) + t.q;
    blk.coeff_p.reserve(np);
    blk.coeff_m.reserve(np);
    for (int i = 0; i < np; ++i) {
      blk.coeff_p.push_back(projectors[i].mat.apply(sp));
      blk.coeff_m.push_back(projectors[i].mat.apply(sm));
    }
  });

  // Deterministic serial assembly into an exact linear system for the
  // projector coefficients c: sum_i c_i K_i = -base, row per component.
  RowSpan seen(np + 1);
  std::vector<Vec> rows;
  bool base_all_zero = true;
  auto harvest = [&](const Vec& base, const std::vector<Vec>& coeff) {
    for (int comp = 0; comp < dim; ++comp) {
      Vec row(np + 1);
      bool nonzero = base[comp] != 0;
      row[np] = -base[comp];
      for (int i = 0; i < np; ++i) {
        row[i] = coeff[i][comp];
        nonzero = nonzero || row[i] != 0;
      }
      if (!nonzero) continue;
      base_all_zero = base_all_zero && base[comp] == 0;
      if (seen.add(row)) rows.push_back(std::move(row));
    }
  };
  for (const Block& blk : blocks) {
    harvest(blk.base_p, blk.coeff_p);
    harvest(blk.base_m, blk.coeff_m);
  }

  if (base_all_zero) {
    rep.verdict = Verdict::integrable;
    rep.coefficients.assign(np, Rational(0));
    return rep;
  }
  Mat sys(static_cast<int>(rows.size()), np);
  Vec rhs(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int i = 0; i < np; ++i) sys(static_cast<int>(r), i) = rows[r][i];
    rhs[r] = rows[r][np];
  }
  auto c = solve(sys, rhs);
  if (!c) {
    rep.verdict = Verdict::not_integrable;
    rep.detail = "no constraint operator over the projector family cancels the residual";
    return rep;
  }
  rep.coefficients = *c;
  bool nonzero = false;
  for (const auto& v : *c) nonzero = nonzero || v != 0;
  rep.verdict = nonzero ? Verdict::integrable_with_constraints : Verdict::integrable;
  return rep;
}

std::vector<ConstraintDescriptor> derive_constraints(
    const ChiralOperatorPair& pair, const std::vector<ConstraintProjector>& projectors) {
  const GradedLieAlgebra& alg = *pair.algebra();
  const int dim = alg.dim();
  std::vector<ConstraintDescriptor> out;
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    ConstraintDescriptor cd;
    cd.projector = static_cast<int>(i);
    std::vector<std::vector<bool>> seen(alg.grading_order(),
                                        std::vector<bool>(alg.grading_order(), false));
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        PairTerms t = pair_terms(pair, a, b);
        Vec vp = projectors[i].mat.apply(pair.apply_plus(t.br) - t.x);
        Vec vm = projectors[i].mat.apply(pair.apply_minus(t.br) - t.x);
        if (is_zero(vp) && is_zero(vm)) continue;
        const int j = alg.grade_of(b), k = alg.grade_of(a);
        if (!seen[j][k]) {
          seen[j][k] = true;
          cd.positions.emplace_back(j, k);
        }
      }
    std::sort(cd.positions.begin(), cd.positions.end());
    for (auto [j, k] : cd.positions) {
      std::ostringstream os;
      os << "[J+(" << k << "), J-(" << j << ")] = 0";
      cd.equations.push_back(os.str());
    }
    out.push_back(std::move(cd));
  }
  return out;
}

EomDescriptor eom_descriptor(const ChiralOperatorPair& pair) {
  const GradedLieAlgebra& alg = *pair.algebra();
  EomDescriptor d;
  d.dplus_coeff = pair.plus();
  d.dminus_coeff = pair.minus();
  d.slot_plus = pair.plus();
  d.slot_minus = pair.minus();
  std::ostringstream os;
  if (pair.is_diagonal()) {
    const int n = alg.grading_order();
    d.bilinear_table.assign(n, std::vector<Rational>(n));
    for (int p = 0; p < n; ++p)
      for (int m = 0; m < n; ++m)
        d.bilinear_table[p][m] = pair.eigenvalues_plus()[p] + pair.eigenvalues_minus()[m];
    for (int g = 0; g < n; ++g) {
      if (g) os << "\n";
      os << "grade " << g << ": " << to_string(pair.eigenvalues_plus()[g]) << " dJ+(" << g
         << ") + " << to_string(pair.eigenvalues_minus()[g]) << " dJ-(" << g << ")";
      for (int p = 0; p < n; ++p)
        for (int m = 0; m < n; ++m) {
          if ((p + m) % n != g || alg.pair_vacuous(m, p)) continue;
          const Rational& c = d.bilinear_table[p][m];
          if (c == 0) continue;
          os << " + " << to_string(c) << " [J+(" << p << "), J-(" << m << ")]";
        }
      os << " = 0";
    }
  } else {
    os << "S+ dJ+ + S- dJ- + [S+ J+, J-] + [J+, S- J-] = 0";
  }
  d.rendered = os.str();
  return d;
}

}  // namespace laxkit
