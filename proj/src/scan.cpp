#include "laxkit/scan.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "laxkit/catalog.hpp"
#include "laxkit/error.hpp"
#include "laxkit/parallel.hpp"

namespace laxkit {

namespace {

// A family whose symmetric-part eigenvalue on each grade is an affine form in
// the parameters; the chiral pair at a point is sym(g) +- ... + alpha via
// from_action. Forms are coefficient vectors over (params..., 1).
struct LinearFamily {
  std::string name;
  AlgebraPtr algebra;
  std::vector<std::string> params;
  std::vector<Vec> sym_forms;  // one per grade, length params + 1
  Vec alpha_form;
};

Rational eval_form(const Vec& form, const std::vector<Rational>& point) {
  Rational v = form.back();
  for (std::size_t i = 0; i < point.size(); ++i) v += form[i] * point[i];
  return v;
}

ChiralOperatorPair instantiate(const LinearFamily& fam, const std::vector<Rational>& point) {
  const int n = fam.algebra->grading_order();
  std::vector<Rational> sym(n), antisym(n, Rational(0));
  for (int g = 0; g < n; ++g) sym[g] = eval_form(fam.sym_forms[g], point);
  return from_action(fam.algebra, antisym, sym, eval_form(fam.alpha_form, point));
}

// Affine forms over columns [pi_0 .. pi_{n-1} | params reversed | 1], kept as
// a fully reduced row echelon span. Reversed parameter order makes the
// echelon pivots fall on the later parameters, so solved loci read as
// "gamma = ...", "beta = ..." with the first parameter kept free.
class AffineSpan {
 public:
  explicit AffineSpan(int cols) : cols_(cols) {}

  Vec reduce(Vec f) const {
    for (const auto& row : rows_) {
      int p = pivot(row);
      if (f[p] != 0) f -= f[p] * row;
    }
    return f;
  }

  // False when the reduced form is a nonzero constant (inconsistent system).
  bool add(Vec f) {
    f = reduce(std::move(f));
    int p = pivot(f);
    if (p < 0) return true;
    if (p == cols_ - 1) return false;
    const Rational inv = Rational(1) / f[p];
    Vec row = inv * std::move(f);
    for (auto& r : rows_)
      if (r[p] != 0) r -= r[p] * row;
    rows_.insert(std::upper_bound(rows_.begin(), rows_.end(), row,
                                  [](const Vec& a, const Vec& b) {
                                    return pivot(a) < pivot(b);
                                  }),
                 std::move(row));
    return true;
  }

  const std::vector<Vec>& rows() const { return rows_; }

  static int pivot(const Vec& f) {
    for (std::size_t i = 0; i < f.size(); ++i)
      if (f[i] != 0) return static_cast<int>(i);
    return -1;
  }

 private:
  int cols_ = 0;
  std::vector<Vec> rows_;
};

struct Condition {
  Vec f, g;  // require f * g = 0 identically on the locus
};

void explore(const AffineSpan& span, const std::vector<Condition>& conds, std::size_t i,
             std::vector<AffineSpan>& leaves) {
  for (; i < conds.size(); ++i) {
    Vec f = span.reduce(conds[i].f);
    Vec g = span.reduce(conds[i].g);
    if (is_zero(f) || is_zero(g)) continue;
    AffineSpan left = span;
    if (left.add(std::move(f))) explore(left, conds, i + 1, leaves);
    AffineSpan right = span;
    if (right.add(std::move(g))) explore(right, conds, i + 1, leaves);
    return;
  }
  leaves.push_back(span);
}

// A leaf split into parameter-space locus rows and solved pi forms, both over
// natural column order (params..., 1).
struct Leaf {
  std::vector<Vec> locus;        // canonical RREF rows in internal order, for keying
  std::vector<Vec> locus_rows;   // same rows over (params..., 1)
  std::map<int, Vec> pi_forms;   // grade -> form over (params..., 1); zeros dropped
  bool pi_free = true;           // pi == 0 satisfies the leaf on its locus
};

// Rebuilds a form over internal columns [pi | params reversed | 1] into
// (params..., 1), optionally negated (moving it to an equation's right side).
Vec param_part(const Vec& f, int n, int nparams, bool negate) {
  Vec out(nparams + 1, Rational(0));
  for (int i = 0; i < nparams; ++i) out[nparams - 1 - i] = negate ? -f[n + i] : f[n + i];
  out[nparams] = negate ? -f.back() : f.back();
  return out;
}

Leaf split_leaf(const AffineSpan& span, int n, int nparams) {
  Leaf leaf;
  for (const auto& row : span.rows()) {
    int p = AffineSpan::pivot(row);
    if (p < n) {
      Vec form = param_part(row, n, nparams, true);
      if (!is_zero(form)) {
        leaf.pi_forms[p] = std::move(form);
        leaf.pi_free = false;
      }
    } else {
      leaf.locus.push_back(row);
      leaf.locus_rows.push_back(param_part(row, n, nparams, false));
    }
  }
  return leaf;
}

std::string render_term(const Rational& c, const std::string& name, bool first) {
  std::ostringstream os;
  if (c < 0)
    os << (first ? "-" : " - ");
  else if (!first)
    os << " + ";
  Rational a = abs(c);
  if (name.empty())
    os << to_string(a);
  else if (a == 1)
    os << name;
  else
    os << to_string(a) << "*" << name;
  return os.str();
}

std::string render_form(const Vec& form, const std::vector<std::string>& params) {
  std::string out;
  for (std::size_t i = 0; i < params.size(); ++i)
    if (form[i] != 0) out += render_term(form[i], params[i], out.empty());
  if (form.back() != 0) out += render_term(form.back(), "", out.empty());
  return out.empty() ? "0" : out;
}

// Pivot variable on the left, the rest moved right: "beta = alpha".
std::string render_equation(const Vec& row_internal, int n,
                            const std::vector<std::string>& params) {
  const int nparams = static_cast<int>(params.size());
  int p = AffineSpan::pivot(row_internal);
  assert(p >= n && p < n + nparams);
  std::string lhs = params[nparams - 1 - (p - n)];
  Vec rhs = param_part(row_internal, n, nparams, true);
  rhs[nparams - 1 - (p - n)] = 0;
  return lhs + " = " + render_form(rhs, params);
}

struct LocusSeed {
  std::vector<Vec> key;  // internal canonical rows
  std::vector<Vec> rows;
  std::vector<std::string> equations;
  bool any_pi_free = false;
  std::map<int, Vec> pi_forms;
  std::map<int, std::string> pi_render;
  bool has_pi = false;
};

std::vector<ScanLocus> classify(const LinearFamily& fam) {
  const GradedLieAlgebra& alg = *fam.algebra;
  const int n = alg.grading_order();
  const int nparams = static_cast<int>(fam.params.size());
  const int cols = n + nparams + 1;

  // Internal form layout for the factor M_branch(j, k) at target grade g:
  // for '+': sym[g] - sym[k] + sym[j] - alpha; for '-' the sign of sym[g]
  // flips. pi_g occupies column g.
  auto factor = [&](int j, int k, int sign_g) {
    const int g = (j + k) % n;
    Vec f(cols, Rational(0));
    auto acc = [&](const Vec& form, const Rational& w) {
      for (int i = 0; i < nparams; ++i) f[n + i] += w * form[nparams - 1 - i];
      f[cols - 1] += w * form[nparams];
    };
    acc(fam.sym_forms[g], sign_g);
    acc(fam.sym_forms[k], -1);
    acc(fam.sym_forms[j], 1);
    acc(fam.alpha_form, -1);
    return f;
  };

  std::vector<AffineSpan> leaves;
  for (int mask = 0; mask < (1 << n); ++mask) {
    AffineSpan base(cols);
    bool ok = true;
    for (int g = 0; g < n && ok; ++g)
      if (mask & (1 << g)) {
        // Kernel membership of grade g: eig+[g] == eig-[g], i.e. sym[g] = 0.
        Vec d(cols, Rational(0));
        for (int i = 0; i < nparams; ++i) d[n + i] = fam.sym_forms[g][nparams - 1 - i];
        d[cols - 1] = fam.sym_forms[g][nparams];
        ok = base.add(std::move(d));
      }
    if (!ok) continue;
    std::vector<Condition> conds;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (alg.pair_vacuous(j, k)) continue;
        const int g = (j + k) % n;
        Vec mp = factor(j, k, 1), mm = factor(j, k, -1);
        Vec mp_pi = mp, mm_pi = mm;
        if (mask & (1 << g)) {
          mp_pi[g] += 1;
          mm_pi[g] += 1;
        }
        conds.push_back({mm_pi, mp});  // (M- + pi_g) M+ = 0
        conds.push_back({mp_pi, mm});  // (M+ + pi_g) M- = 0
      }
    explore(base, conds, 0, leaves);
  }

  // Merge leaves sharing a parameter-space locus; a locus is plainly
  // integrable when any of its leaves is satisfied by pi == 0.
  std::vector<LocusSeed> seeds;
  for (const auto& span : leaves) {
    Leaf leaf = split_leaf(span, n, nparams);
    auto it = std::find_if(seeds.begin(), seeds.end(),
                           [&](const LocusSeed& s) { return s.key == leaf.locus; });
    if (it == seeds.end()) {
      LocusSeed s;
      s.key = leaf.locus;
      s.rows = leaf.locus_rows;
      for (const auto& row : leaf.locus) s.equations.push_back(render_equation(row, n, fam.params));
      seeds.push_back(std::move(s));
      it = seeds.end() - 1;
    }
    if (leaf.pi_free) {
      it->any_pi_free = true;
    } else if (!it->has_pi) {
      it->has_pi = true;
      it->pi_forms = leaf.pi_forms;
      for (const auto& [g, form] : leaf.pi_forms)
        it->pi_render[g] = "pi_" + std::to_string(g) + " = " + render_form(form, fam.params);
    }
  }

  // Drop any locus strictly contained in another: A lies inside B exactly
  // when every defining row of B reduces to zero against A's span.
  auto contains = [&](const LocusSeed& outer, const LocusSeed& inner) {
    AffineSpan s(cols);
    for (const auto& row : inner.key) s.add(row);
    for (const auto& row : outer.key)
      if (!is_zero(s.reduce(row))) return false;
    return true;
  };
  std::vector<ScanLocus> out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < seeds.size() && !dominated; ++j)
      dominated = i != j && seeds[j].key != seeds[i].key && contains(seeds[j], seeds[i]);
    if (dominated) continue;
    ScanLocus loc;
    loc.verdict = seeds[i].any_pi_free ? Verdict::integrable
                                       : Verdict::integrable_with_constraints;
    loc.equations = seeds[i].equations;
    loc.rows = seeds[i].rows;
    if (loc.verdict == Verdict::integrable_with_constraints) {
      loc.pi = seeds[i].pi_render;
      loc.pi_forms = seeds[i].pi_forms;
    }
    std::ostringstream os;
    os << (loc.verdict == Verdict::integrable ? "integrable" : "integrable with constraints")
       << ": ";
    for (std::size_t e = 0; e < loc.equations.size(); ++e)
      os << (e ? ", " : "") << loc.equations[e];
    if (loc.equations.empty()) os << "all parameters";
    bool first_pi = true;
    for (const auto& [g, txt] : loc.pi) {
      os << (first_pi ? " [" : ", ") << txt;
      first_pi = false;
    }
    if (!first_pi) os << "]";
    loc.description = os.str();
    out.push_back(std::move(loc));
  }
  std::sort(out.begin(), out.end(),
            [](const ScanLocus& a, const ScanLocus& b) { return a.description < b.description; });
  return out;
}

Rational point_residual(const GradedCheckReport& rep) {
  Rational worst = 0;
  for (int j = 0; j < rep.n; ++j)
    for (int k = 0; k < rep.n; ++k) {
      if (rep.vacuous[j][k]) continue;
      const int g = (j + k) % rep.n;
      const Rational mp = -rep.table_plus[j][k];
      const Rational mm = -rep.table_minus[j][k];
      Rational pi = rep.pi.count(g) ? rep.pi.at(g) : Rational(0);
      worst = std::max({worst, Rational(abs((mm + pi) * mp)), Rational(abs((mp + pi) * mm))});
    }
  return worst;
}

ScanResult run_scan(const LinearFamily& fam, const GridSpec& grid, Exec exec) {
  ScanResult res;
  res.family = fam.name;
  res.param_names = fam.params;
  auto points = make_grid(grid, static_cast<int>(fam.params.size()));
  res.points.resize(points.size());
  parallel_for(points.size(), exec, [&](std::size_t idx) {
    ScanPointResult& p = res.points[idx];
    p.params = points[idx];
    GradedCheckReport rep = check_graded(instantiate(fam, p.params));
    p.verdict = rep.verdict;
    p.pi = rep.pi;
    p.residual = point_residual(rep);
  });

  res.loci = classify(fam);

  // Cross-check the two routes against each other.
  for (auto& p : res.points) {
    for (std::size_t li = 0; li < res.loci.size(); ++li) {
      ScanLocus& loc = res.loci[li];
      bool on = true;
      for (const auto& row : loc.rows) on = on && eval_form(row, p.params) == 0;
      if (!on) continue;
      p.loci.push_back(static_cast<int>(li));
      if (p.verdict != loc.verdict) continue;
      bool match = true;
      for (const auto& [g, form] : loc.pi_forms)
        match = match && p.pi.count(g) && p.pi.at(g) == eval_form(form, p.params);
      if (match) ++loc.witnesses;
    }
    // The branch enumeration is exhaustive, so the loci must cover every
    // integrable grid point.
    assert(p.verdict == Verdict::not_integrable || !p.loci.empty());
  }
  return res;
}

}  // namespace

std::vector<std::vector<Rational>> make_grid(const GridSpec& spec, int nparams) {
  if (spec.step <= 0 || spec.hi < spec.lo)
    throw Error(Errc::BadParameters, "grid needs step > 0 and hi >= lo");
  std::vector<Rational> axis;
  for (Rational v = spec.lo; v <= spec.hi; v += spec.step) axis.push_back(v);
  std::vector<std::vector<Rational>> grid;
  std::vector<std::size_t> idx(nparams, 0);
  while (true) {
    std::vector<Rational> point(nparams);
    for (int i = 0; i < nparams; ++i) point[i] = axis[idx[i]];
    grid.push_back(std::move(point));
    int i = nparams - 1;
    for (; i >= 0; --i) {
      if (++idx[i] < axis.size()) break;
      idx[i] = 0;
    }
    if (i < 0) break;
  }
  return grid;
}

ChiralOperatorPair general_z2_pair(const AlgebraPtr& algebra, const Rational& alpha,
                                   const Rational& beta, const Rational& gamma) {
  return from_action(algebra, std::vector<Rational>{0, 0}, std::vector<Rational>{beta, gamma},
                     alpha);
}

ChiralOperatorPair pcm_pair(const Rational& alpha, const Rational& beta) {
  AlgebraSpec s;
  s.preset = "sl";
  s.n = 2;
  s.grading = "none";
  return from_action(GradedLieAlgebra::build(s), std::vector<Rational>{0},
                     std::vector<Rational>{beta}, alpha);
}

ScanResult scan_general_z2(const AlgebraPtr& algebra, const GridSpec& grid, Exec exec) {
  if (algebra->grading_order() != 2)
    throw Error(Errc::BadParameters, "the three-coupling scan needs a Z_2 grading");
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      if (algebra->pair_vacuous(j, k))
        throw Error(Errc::BadParameters,
                    "the three-coupling scan needs nonvanishing grade-pair brackets");
  LinearFamily fam;
  fam.name = "general_z2";
  fam.algebra = algebra;
  fam.params = {"alpha", "beta", "gamma"};
  fam.sym_forms = {Vec{0, 1, 0, 0}, Vec{0, 0, 1, 0}};
  fam.alpha_form = Vec{1, 0, 0, 0};
  ScanResult res = run_scan(fam, grid, exec);
  res.notes =
      "integrable loci are lines through the origin; verdicts are invariant "
      "under rescaling (alpha, beta, gamma) -> c (alpha, beta, gamma) and "
      "under the chirality swap (beta, gamma) -> (-beta, -gamma)";
  return res;
}

ScanResult scan_pcm(const GridSpec& grid, Exec exec) {
  LinearFamily fam;
  fam.name = "pcm";
  AlgebraSpec s;
  s.preset = "sl";
  s.n = 2;
  s.grading = "none";
  fam.algebra = GradedLieAlgebra::build(s);
  fam.params = {"alpha", "beta"};
  fam.sym_forms = {Vec{0, 1, 0}};
  fam.alpha_form = Vec{1, 0, 0};
  ScanResult res = run_scan(fam, grid, exec);

  // The two-copy formulation covers the points the gauge-fixed family
  // cannot: run it wherever it is defined (beta != 0).
  int doubled_points = 0, doubled_integrable = 0;
  parallel_for(res.points.size(), exec, [&](std::size_t idx) {
    ScanPointResult& p = res.points[idx];
    if (p.params[1] == 0) return;
    ModelSpec m = builtin("pcm_doubled(" + to_string(p.params[0]) + "," +
                          to_string(p.params[1]) + ")");
    p.doubled = check_general(m.pair).verdict;
  });
  for (const auto& p : res.points)
    if (p.doubled) {
      ++doubled_points;
      if (*p.doubled == Verdict::integrable) ++doubled_integrable;
    }
  std::ostringstream os;
  os << "two-copy formulation integrable at " << doubled_integrable << " of " << doubled_points
     << " grid points with beta != 0";
  res.notes = os.str();
  return res;
}

}  // namespace laxkit
