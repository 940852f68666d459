#include "laxkit/lax.hpp"

#include <cassert>
#include <cmath>
#include <random>
#include <sstream>

#include "laxkit/error.hpp"
#include "laxkit/numeric.hpp"

namespace laxkit {

namespace {

long long to_ll(const Rational& q) {
  assert(denominator(q) == 1);
  return static_cast<long long>(numerator(q));
}

// Eigenvalue/projector lists for one chirality; nullopt when the spectrum is
// not rational-diagonalizable.
std::optional<SpectralDecomposition> chirality_spectrum(
    const ChiralOperatorPair& pair, bool plus) {
  const auto& alg = *pair.algebra();
  if (pair.is_diagonal()) {
    const auto& eig = plus ? pair.eigenvalues_plus() : pair.eigenvalues_minus();
    SpectralDecomposition sd;
    for (int a = 0; a < alg.dim(); ++a) {
      Rational v = eig[alg.grade_of(a)];
      std::size_t slot = 0;
      for (; slot < sd.values.size(); ++slot)
        if (sd.values[slot] == v) break;
      if (slot == sd.values.size()) {
        sd.values.push_back(v);
        sd.projectors.emplace_back(alg.dim(), alg.dim());
      }
      sd.projectors[slot](a, a) = 1;
    }
    return sd;
  }
  return spectral_decomposition(plus ? pair.plus() : pair.minus());
}

// Smallest positive factor r making every r*value an integer, with overall
// integer content 1.
Rational rescale_factor(const std::vector<Rational>& values) {
  Integer lcd = 1;
  for (const auto& v : values)
    if (v != 0) lcd = lcm(lcd, denominator(v));
  Integer content = 0;
  for (const auto& v : values)
    if (v != 0) content = gcd(content, Integer(numerator(v) * (lcd / denominator(v))));
  if (content == 0) return 1;  // all eigenvalues vanish
  return Rational(lcd, content);
}

void build_series(const ChiralOperatorPair& pair, int order, LaurentConnection& conn) {
  conn.exact = false;
  conn.lambda_scale = 1;
  conn.series_order = order;
  conn.effective_plus = pair.plus();
  conn.effective_minus = pair.minus();
  int d = pair.algebra()->dim();
  Mat tp = Mat::identity(d), tm = Mat::identity(d);
  conn.plus_coeffs[0] = tp;
  conn.minus_coeffs[0] = tm;
  for (int k = 1; k <= order; ++k) {
    tp = Rational(1, k) * (conn.effective_plus * tp);
    tm = Rational(1, k) * (conn.effective_minus * tm);
    conn.plus_coeffs[k] = tp;
    conn.minus_coeffs[k] = tm;
  }
}

std::vector<double> evaluate_side(const LaurentConnection& conn, double lambda,
                                  const std::map<long long, Mat>& coeffs,
                                  const std::vector<double>& j) {
  std::vector<double> out(j.size(), 0.0);
  for (const auto& [p, c] : coeffs) {
    double w = conn.exact ? std::exp(static_cast<double>(p) * lambda)
                          : std::pow(lambda, static_cast<double>(p));
    DMat dc = to_double(c);
    auto contrib = matvec(dc, j);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * contrib[i];
  }
  return out;
}

bool coeff_is_grade_sum(const GradedLieAlgebra& alg, const Mat& c,
                        std::vector<int>& grades_out) {
  for (int i = 0; i < c.rows(); ++i)
    for (int j = 0; j < c.cols(); ++j) {
      if (i != j && c(i, j) != 0) return false;
      if (i == j && c(i, i) != 0 && c(i, i) != 1) return false;
    }
  std::vector<int> status(alg.grading_order(), -1);  // -1 unseen, else 0/1
  for (int a = 0; a < alg.dim(); ++a) {
    int g = alg.grade_of(a);
    int bit = c(a, a) == 1 ? 1 : 0;
    if (status[g] == -1)
      status[g] = bit;
    else if (status[g] != bit)
      return false;
  }
  grades_out.clear();
  for (int g = 0; g < alg.grading_order(); ++g)
    if (status[g] == 1) grades_out.push_back(g);
  return true;
}

std::string power_prefix(long long p) {
  if (p == 0) return "";
  std::ostringstream os;
  os << "e^{";
  if (p == -1)
    os << "-";
  else if (p != 1)
    os << p << " ";
  os << "lambda} ";
  return os.str();
}

}  // namespace

LaurentConnection build_lax(const ChiralOperatorPair& pair, const LaxOptions& opt) {
  if (opt.series_order < 2)
    throw Error(Errc::BadParameters, "series order must be at least 2");
  LaurentConnection conn;
  conn.algebra = pair.algebra();
  if (opt.force_series) {
    build_series(pair, opt.series_order, conn);
    return conn;
  }
  auto sp = chirality_spectrum(pair, true);
  auto sm = chirality_spectrum(pair, false);
  if (!sp || !sm) {
    build_series(pair, opt.series_order, conn);
    conn.noninteger_spectrum = true;
    return conn;
  }
  std::vector<Rational> all = sp->values;
  all.insert(all.end(), sm->values.begin(), sm->values.end());
  conn.lambda_scale = rescale_factor(all);
  for (std::size_t i = 0; i < sp->values.size(); ++i)
    conn.plus_coeffs[to_ll(conn.lambda_scale * sp->values[i])] = sp->projectors[i];
  for (std::size_t i = 0; i < sm->values.size(); ++i)
    conn.minus_coeffs[to_ll(conn.lambda_scale * sm->values[i])] = sm->projectors[i];
  conn.effective_plus = conn.lambda_scale * pair.plus();
  conn.effective_minus = conn.lambda_scale * pair.minus();
  return conn;
}

std::vector<LaurentEntry> laurent_coefficients(const LaurentConnection& conn) {
  if (!conn.exact)
    throw Error(Errc::NoClosedForm,
                "connection is a truncated series; no Laurent coefficients");
  std::vector<LaurentEntry> out;
  std::map<long long, std::vector<LaurentEntry>> by_power;
  for (const auto& [p, c] : conn.plus_coeffs) by_power[p].push_back({p, '+', c});
  for (const auto& [p, c] : conn.minus_coeffs) by_power[p].push_back({p, '-', c});
  for (auto& [p, entries] : by_power)
    for (auto& e : entries) out.push_back(std::move(e));
  return out;
}

std::vector<double> evaluate(const LaurentConnection& conn, double lambda,
                             const std::vector<double>& j_plus,
                             const std::vector<double>& j_minus) {
  auto a = evaluate_side(conn, lambda, conn.plus_coeffs, j_plus);
  auto b = evaluate_side(conn, lambda, conn.minus_coeffs, j_minus);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

bool series_radius_exceeded(const LaurentConnection& conn, double lambda) {
  if (conn.exact) return false;
  double scale = std::max(inf_norm(to_double(conn.effective_plus)),
                          inf_norm(to_double(conn.effective_minus)));
  return std::fabs(lambda) * scale > conn.series_order / 2.0;
}

IdentityCheckReport check_connection_identities(const LaurentConnection& conn,
                                                unsigned seed, double tolerance) {
  if (!conn.exact)
    throw Error(Errc::NoClosedForm, "identity checks need the exact Laurent form");
  IdentityCheckReport rep;
  rep.derivative_exact = true;
  rep.shift_exact = true;
  for (const auto* side : {&conn.plus_coeffs, &conn.minus_coeffs}) {
    const Mat& eff =
        side == &conn.plus_coeffs ? conn.effective_plus : conn.effective_minus;
    for (const auto& [p, c] : *side) {
      if (!((eff * c) == (Rational(p) * c))) rep.derivative_exact = false;
      Mat acc = c;
      Rational pk = 1;
      for (int k = 1; k <= 3; ++k) {
        acc = eff * acc;
        pk *= p;
        if (!(acc == (pk * c))) rep.shift_exact = false;
      }
    }
  }

  rep.lambdas = {-2.0, -1.0, 0.5, 1.0, 3.0};
  const double mu = 0.7;
  std::mt19937 rng(seed);
  int d = conn.algebra->dim();
  std::vector<double> jp(d), jm(d);
  for (int i = 0; i < d; ++i) {
    jp[i] = static_cast<double>(static_cast<long long>(rng() % 21) - 10);
    jm[i] = static_cast<double>(static_cast<long long>(rng() % 21) - 10);
  }
  std::vector<double> zero(d, 0.0);
  DMat shift_p = dmat_exp(scaled(to_double(conn.effective_plus), mu));
  DMat shift_m = dmat_exp(scaled(to_double(conn.effective_minus), mu));
  DMat eff_p = to_double(conn.effective_plus);
  DMat eff_m = to_double(conn.effective_minus);
  for (double lambda : rep.lambdas) {
    auto plus_part = evaluate(conn, lambda, jp, zero);
    auto minus_part = evaluate(conn, lambda, zero, jm);

    // Finite shift by mu, chirality by chirality.
    auto lhs = evaluate(conn, lambda + mu, jp, jm);
    auto rhs = matvec(shift_p, plus_part);
    auto rhs_m = matvec(shift_m, minus_part);
    double scale = std::max(1.0, max_abs(lhs));
    for (int i = 0; i < d; ++i) rhs[i] += rhs_m[i];
    for (int i = 0; i < d; ++i) rhs[i] -= lhs[i];
    rep.max_float_residual = std::max(rep.max_float_residual, max_abs(rhs) / scale);

    // Infinitesimal shift: the analytic lambda-derivative against Sigma o A.
    std::vector<double> deriv(d, 0.0);
    for (const auto& [p, c] : conn.plus_coeffs) {
      auto term = matvec(to_double(c), jp);
      double w = p * std::exp(p * lambda);
      for (int i = 0; i < d; ++i) deriv[i] += w * term[i];
    }
    for (const auto& [p, c] : conn.minus_coeffs) {
      auto term = matvec(to_double(c), jm);
      double w = p * std::exp(p * lambda);
      for (int i = 0; i < d; ++i) deriv[i] += w * term[i];
    }
    auto sa = matvec(eff_p, plus_part);
    auto sam = matvec(eff_m, minus_part);
    double dscale = std::max(1.0, max_abs(deriv));
    for (int i = 0; i < d; ++i) sa[i] += sam[i] - deriv[i];
    rep.max_float_residual = std::max(rep.max_float_residual, max_abs(sa) / dscale);
  }
  rep.float_ok = rep.max_float_residual <= tolerance;
  return rep;
}

std::string format_connection(const LaurentConnection& conn) {
  std::ostringstream os;
  if (!conn.exact) {
    os << "A(lambda) = sum_{k<=" << conn.series_order
       << "} lambda^k (Ck+ J+ + Ck- J-)  (truncated series";
    if (conn.noninteger_spectrum) os << "; spectrum not rational-diagonalizable";
    os << ")";
    return os.str();
  }
  const auto& alg = *conn.algebra;
  std::vector<std::string> terms;
  std::vector<std::pair<std::string, Mat>> raw;
  for (const auto& e : laurent_coefficients(conn)) {
    std::string prefix = power_prefix(e.power);
    std::string side = e.chirality == '+' ? "J+" : "J-";
    std::vector<int> grades;
    bool projector_sum = coeff_is_grade_sum(alg, e.coeff, grades);
    if (projector_sum && alg.grading_order() > 1) {
      for (int g : grades) {
        std::ostringstream t;
        t << prefix << side << "(" << g << ")";
        terms.push_back(t.str());
      }
    } else if (projector_sum && !grades.empty()) {
      terms.push_back(prefix + side);
    } else {
      std::ostringstream label;
      label << "C[" << e.power << "]" << e.chirality;
      terms.push_back(prefix + label.str() + " " + side);
      raw.emplace_back(label.str(), e.coeff);
    }
  }
  os << "A(lambda) = ";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) os << " + ";
    os << terms[i];
  }
  if (conn.lambda_scale != 1)
    os << "\n  (spectral parameter rescaled by " << to_string(conn.lambda_scale)
       << ")";
  for (const auto& [label, m] : raw) os << "\n  " << label << " = " << m;
  return os.str();
}

std::string format_support(const LaurentConnection& conn) {
  if (!conn.exact) return "series mode: no finite Laurent support";
  std::vector<long long> powers;
  for (const auto& [p, c] : conn.plus_coeffs) powers.push_back(p);
  for (const auto& [p, c] : conn.minus_coeffs)
    if (!conn.plus_coeffs.count(p)) powers.push_back(p);
  std::sort(powers.begin(), powers.end());
  std::ostringstream os;
  os << "e^lambda powers {";
  for (std::size_t i = 0; i < powers.size(); ++i)
    os << (i ? ", " : "") << powers[i];
  os << "}; z = e^lambda monomials z^p for the same p; x-parametrization with "
        "z = (x+1)/(x-1): terms ((x+1)/(x-1))^p";
  return os.str();
}

}  // namespace laxkit
