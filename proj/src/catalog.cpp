#include "laxkit/catalog.hpp"

#include <sstream>

#include "laxkit/error.hpp"

namespace laxkit {

namespace {

struct ParsedName {
  std::string base;
  std::vector<Rational> args;
};

ParsedName parse_name(const std::string& name) {
  ParsedName p;
  auto open = name.find('(');
  if (open == std::string::npos) {
    p.base = name;
    return p;
  }
  if (name.back() != ')')
    throw Error(Errc::BadInput, "malformed model name: " + name);
  p.base = name.substr(0, open);
  std::string inner = name.substr(open + 1, name.size() - open - 2);
  std::string piece;
  std::istringstream in(inner);
  while (std::getline(in, piece, ',')) {
    auto from = piece.find_first_not_of(" \t");
    auto to = piece.find_last_not_of(" \t");
    std::string trimmed =
        from == std::string::npos ? std::string() : piece.substr(from, to - from + 1);
    auto q = parse_rational(trimmed);
    if (!q) throw Error(Errc::BadInput, "bad model argument: " + piece);
    p.args.push_back(*q);
  }
  if (p.args.empty())
    throw Error(Errc::BadInput, "empty argument list in: " + name);
  return p;
}

AlgebraPtr sl_algebra(int n, const std::string& grading, bool doubled = false) {
  AlgebraSpec s;
  s.preset = "sl";
  s.n = n;
  s.grading = grading;
  s.doubled = doubled;
  return GradedLieAlgebra::build(s);
}

int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

std::string canonical(const std::string& base, const std::vector<Rational>& args) {
  std::ostringstream os;
  os << base;
  if (!args.empty()) {
    os << "(";
    for (std::size_t i = 0; i < args.size(); ++i)
      os << (i ? "," : "") << to_string(args[i]);
    os << ")";
  }
  return os.str();
}

// The canonical cyclic-coset eigenvalues: Sigma+ acts by -k on grade k,
// Sigma- by N-k (and 0 on grade 0).
ModelSpec make_zn(int n, const std::string& display_name) {
  if (n < 2) throw Error(Errc::BadParameters, "cyclic coset needs order >= 2");
  ModelSpec m;
  m.name = display_name;
  m.algebra = sl_algebra(n, "cyclic");
  std::vector<Rational> ep(n), em(n);
  for (int k = 0; k < n; ++k) {
    ep[k] = -k;
    em[k] = k == 0 ? 0 : n - k;
  }
  m.pair = ChiralOperatorPair::diagonal(m.algebra, ep, em);
  m.projectors = find_constraint_projectors(m.pair);
  m.expected_verdict = Verdict::integrable;

  LaurentConnection c;
  c.algebra = m.algebra;
  c.lambda_scale = 1;
  for (int k = 0; k < n; ++k) {
    Mat p = m.algebra->grade_projector(k);
    c.plus_coeffs[-k] = p;
    c.minus_coeffs[k == 0 ? 0 : n - k] = p;
  }
  c.effective_plus = m.pair.plus();
  c.effective_minus = m.pair.minus();
  m.expected = std::move(c);
  m.notes = "cyclic coset of order " + std::to_string(n) +
            " on sl(" + std::to_string(n) + "); unconditionally integrable";
  return m;
}

// Scalar-operator connection e^{p lambda} J+ + e^{q lambda} J- on an
// ungraded algebra, with the content-1 rescaling already applied.
LaurentConnection scalar_connection(const AlgebraPtr& alg, const Rational& sp,
                                    const Rational& sm) {
  LaurentConnection c;
  c.algebra = alg;
  Integer lcd = 1;
  for (const auto& v : {sp, sm})
    if (v != 0) lcd = lcm(lcd, denominator(v));
  Integer content = 0;
  for (const auto& v : {sp, sm})
    if (v != 0) content = gcd(content, Integer(numerator(v) * (lcd / denominator(v))));
  Rational r = content == 0 ? Rational(1) : Rational(lcd, content);
  c.lambda_scale = r;
  int d = alg->dim();
  c.plus_coeffs[static_cast<long long>(numerator(Rational(r * sp)))] = Mat::identity(d);
  c.minus_coeffs[static_cast<long long>(numerator(Rational(r * sm)))] = Mat::identity(d);
  c.effective_plus = (r * sp) * Mat::identity(d);
  c.effective_minus = (r * sm) * Mat::identity(d);
  return c;
}

ModelSpec make_pcm(const Rational& alpha, const Rational& beta,
                   const std::string& display_name) {
  ModelSpec m;
  m.name = display_name;
  m.algebra = sl_algebra(2, "none");
  m.pair = ChiralOperatorPair::diagonal(m.algebra, {alpha + beta}, {alpha - beta},
                                        alpha);
  m.projectors = find_constraint_projectors(m.pair);
  if (alpha == beta || alpha == -beta) {
    m.expected_verdict = Verdict::integrable;
    m.expected = scalar_connection(m.algebra, alpha + beta, alpha - beta);
    m.notes = beta == 0 ? "group-manifold model with zero operators; A = J"
                        : "group-manifold model at its conformal point";
  } else if (beta == 0) {
    m.expected_verdict = Verdict::integrable_with_constraints;
    m.expected = scalar_connection(m.algebra, alpha, alpha);
    m.notes =
        "pure antisymmetric-coupling point: A = e^{alpha lambda} J, flat only "
        "subject to the full current constraint";
  } else {
    m.expected_verdict = Verdict::not_integrable;
    m.notes =
        "group-manifold model at generic couplings: the flat connection known "
        "for this model needs three exponents, outside the exp(lambda Sigma)J "
        "family";
  }
  return m;
}

ModelSpec make_pcm_doubled(const Rational& alpha, const Rational& beta) {
  if (beta == 0)
    throw Error(Errc::BadParameters, "doubled model needs a nonzero beta");
  ModelSpec m;
  m.name = canonical("pcm_doubled", {alpha, beta});
  m.algebra = sl_algebra(2, "none", true);
  int d = m.algebra->dim();
  int half = d / 2;
  Mat plus(d, d), minus(d, d);
  // Copy-space action (1/2 beta) [[alpha +- beta, -alpha -+ beta],
  // [alpha -+ beta, -alpha +- beta]], tensored with the identity.
  Rational inv = Rational(1) / (2 * beta);
  for (int k = 0; k < half; ++k) {
    plus(k, k) = inv * (alpha + beta);
    plus(k, half + k) = inv * (-alpha - beta);
    plus(half + k, k) = inv * (alpha - beta);
    plus(half + k, half + k) = inv * (-alpha + beta);
    minus(k, k) = inv * (alpha - beta);
    minus(k, half + k) = inv * (-alpha + beta);
    minus(half + k, k) = inv * (alpha + beta);
    minus(half + k, half + k) = inv * (-alpha - beta);
  }
  m.pair = ChiralOperatorPair::matrix(m.algebra, plus, minus);
  m.projectors = find_constraint_projectors(m.pair);
  m.expected_verdict = Verdict::integrable;

  // exp(lambda S+) = 1 + (e^lambda - 1) S+ and the mirrored minus rule.
  LaurentConnection c;
  c.algebra = m.algebra;
  c.lambda_scale = 1;
  c.plus_coeffs[0] = Mat::identity(d) - plus;
  c.plus_coeffs[1] = plus;
  c.minus_coeffs[0] = Mat::identity(d) + minus;
  c.minus_coeffs[-1] = Rational(-1) * minus;
  c.effective_plus = plus;
  c.effective_minus = minus;
  m.expected = std::move(c);
  m.notes =
      "two-copy formulation of the group-manifold model; the chiral operators "
      "are complementary projectors, integrable for every nonzero beta";
  return m;
}

ModelSpec make_general_z2(const Rational& alpha, const Rational& beta,
                          const Rational& gamma, const std::string& display_name) {
  ModelSpec m;
  m.name = display_name;
  m.algebra = sl_algebra(3, "cartan");
  m.pair = ChiralOperatorPair::diagonal(
      m.algebra, {beta + alpha, gamma + alpha}, {alpha - beta, alpha - gamma}, alpha);
  m.projectors = find_constraint_projectors(m.pair);
  bool zero = alpha == 0 && beta == 0 && gamma == 0;
  if (zero)
    m.expected_verdict = Verdict::integrable;
  else if ((beta == gamma && beta == alpha) || (beta == gamma && beta == -alpha))
    m.expected_verdict = Verdict::integrable;
  else if (alpha == 0 && beta == 0)
    m.expected_verdict = Verdict::integrable;
  else if (gamma == 0 && (beta == alpha || beta == -alpha) && alpha != 0)
    m.expected_verdict = Verdict::integrable_with_constraints;
  else if (gamma == 0 && beta == 0 && alpha != 0)
    m.expected_verdict = Verdict::integrable_with_constraints;
  else
    m.expected_verdict = Verdict::not_integrable;
  m.notes =
      "three-coupling order-2 family on sl(3); integrable only on six lines "
      "through the origin of (alpha, beta, gamma)";
  return m;
}

ModelSpec make_new_z2(const Rational& beta) {
  ModelSpec m;
  m.name = canonical("new_z2", {beta});
  m.algebra = sl_algebra(3, "cartan");
  m.pair = ChiralOperatorPair::diagonal(m.algebra, {2 * beta, beta},
                                        {Rational(0), beta}, beta);
  m.projectors = find_constraint_projectors(m.pair);
  m.expected_verdict =
      beta == 0 ? Verdict::integrable : Verdict::integrable_with_constraints;

  LaurentConnection c;
  c.algebra = m.algebra;
  int d = m.algebra->dim();
  Mat p0 = m.algebra->grade_projector(0), p1 = m.algebra->grade_projector(1);
  if (beta == 0) {
    c.lambda_scale = 1;
    c.plus_coeffs[0] = Mat::identity(d);
    c.minus_coeffs[0] = Mat::identity(d);
    c.effective_plus = Mat(d, d);
    c.effective_minus = Mat(d, d);
  } else {
    int s = sign_of(beta);
    c.lambda_scale = Rational(s) / beta;
    c.plus_coeffs[2 * s] = p0;
    c.plus_coeffs[s] = p1;
    c.minus_coeffs[0] = p0;
    c.minus_coeffs[s] = p1;
    c.effective_plus = c.lambda_scale * m.pair.plus();
    c.effective_minus = c.lambda_scale * m.pair.minus();
  }
  m.expected = std::move(c);
  m.notes =
      "constrained order-2 model at gamma = 0, beta = alpha: "
      "A = e^{2 lambda} J+(0) + J-(0) + e^{lambda} J(1)";
  return m;
}

}  // namespace

ModelSpec builtin(const std::string& name) {
  ParsedName p = parse_name(name);
  auto want = [&](std::size_t lo, std::size_t hi) {
    if (p.args.size() < lo || p.args.size() > hi)
      throw Error(Errc::BadInput, "wrong argument count for " + p.base);
  };
  if (p.base == "z2_symmetric") {
    want(0, 0);
    auto m = make_zn(2, "z2_symmetric");
    m.notes = "order-2 symmetric space on sl(2)";
    return m;
  }
  if (p.base == "z3_coset") {
    want(0, 0);
    auto m = make_zn(3, "z3_coset");
    m.notes = "order-3 coset on sl(3)";
    return m;
  }
  if (p.base == "z4_superspace") {
    want(0, 0);
    ModelSpec m;
    m.name = "z4_superspace";
    m.algebra = sl_algebra(4, "cyclic");
    m.pair = ChiralOperatorPair::diagonal(m.algebra, {0, -1, -2, 1}, {0, -1, 2, 1});
    m.projectors = find_constraint_projectors(m.pair);
    m.expected_verdict = Verdict::integrable_with_constraints;
    LaurentConnection c;
    c.algebra = m.algebra;
    c.lambda_scale = 1;
    c.plus_coeffs[0] = m.algebra->grade_projector(0);
    c.plus_coeffs[-1] = m.algebra->grade_projector(1);
    c.plus_coeffs[-2] = m.algebra->grade_projector(2);
    c.plus_coeffs[1] = m.algebra->grade_projector(3);
    c.minus_coeffs[0] = m.algebra->grade_projector(0);
    c.minus_coeffs[-1] = m.algebra->grade_projector(1);
    c.minus_coeffs[2] = m.algebra->grade_projector(2);
    c.minus_coeffs[1] = m.algebra->grade_projector(3);
    c.effective_plus = m.pair.plus();
    c.effective_minus = m.pair.minus();
    m.expected = std::move(c);
    m.notes =
        "order-4 grading with the asymmetric eigenvalue table; integrable "
        "subject to two current constraints";
    return m;
  }
  if (p.base == "zn_coset") {
    want(0, 1);
    Rational n = p.args.empty() ? Rational(5) : p.args[0];
    if (denominator(n) != 1 || n < 2)
      throw Error(Errc::BadParameters, "zn_coset needs an integer order >= 2");
    int ni = static_cast<int>(numerator(n));
    if (ni > 12) throw Error(Errc::BadParameters, "zn_coset order capped at 12");
    return make_zn(ni, canonical("zn_coset", {n}));
  }
  if (p.base == "pcm_gauge_fixed") {
    want(0, 2);
    Rational a = p.args.size() > 0 ? p.args[0] : Rational(1);
    Rational b = p.args.size() > 1 ? p.args[1] : Rational(2);
    return make_pcm(a, b, canonical("pcm_gauge_fixed", {a, b}));
  }
  if (p.base == "wzw") {
    want(0, 1);
    Rational b = p.args.empty() ? Rational(1) : p.args[0];
    return make_pcm(b, b, canonical("wzw", {b}));
  }
  if (p.base == "pcm_doubled") {
    want(0, 2);
    Rational a = p.args.size() > 0 ? p.args[0] : Rational(0);
    Rational b = p.args.size() > 1 ? p.args[1] : Rational(1);
    return make_pcm_doubled(a, b);
  }
  if (p.base == "general_z2") {
    want(0, 3);
    Rational a = p.args.size() > 0 ? p.args[0] : Rational(1);
    Rational b = p.args.size() > 1 ? p.args[1] : Rational(2);
    Rational g = p.args.size() > 2 ? p.args[2] : Rational(3);
    return make_general_z2(a, b, g, canonical("general_z2", {a, b, g}));
  }
  if (p.base == "new_z2") {
    want(0, 1);
    Rational b = p.args.empty() ? Rational(1) : p.args[0];
    return make_new_z2(b);
  }
  throw Error(Errc::BadInput, "unknown model: " + name);
}

std::vector<std::string> builtin_names() {
  return {"z2_symmetric",         "z3_coset",   "z4_superspace",
          "zn_coset(5)",          "wzw(1)",     "pcm_gauge_fixed(1,2)",
          "pcm_doubled(0,1)",     "new_z2(1)",  "general_z2(1,2,3)"};
}

LaurentConnection expected_lax(const std::string& name) {
  ModelSpec m = builtin(name);
  if (!m.expected)
    throw Error(Errc::NoClosedForm, "no transcribed connection for " + m.name);
  return *m.expected;
}

}  // namespace laxkit
