#pragma once
// Laurent-in-e^lambda connection exp(lambda Sigma+)J+ + exp(lambda Sigma-)J-,
// with exact coefficient extraction, lambda-rescaling normalization, and the
// shift/derivative identity checks.

#include <map>
#include <string>
#include <vector>

#include "laxkit/operators.hpp"

namespace laxkit {

struct LaurentConnection {
  AlgebraPtr algebra;
  // Exact mode: coefficient matrices per integer power of e^lambda, so the
  // connection is sum_p e^{p lambda} (Cp+ J+ + Cp- J-) after replacing the
  // original spectral parameter by lambda_scale * lambda. Series mode
  // (exact == false): the key is the lambda-power of a truncated Taylor
  // expansion instead, and lambda_scale stays 1.
  bool exact = true;
  Rational lambda_scale = 1;
  std::map<long long, Mat> plus_coeffs;
  std::map<long long, Mat> minus_coeffs;
  Mat effective_plus;   // lambda_scale * Sigma+ as a matrix
  Mat effective_minus;  // lambda_scale * Sigma-
  int series_order = 0;
  bool noninteger_spectrum = false;  // warning: spectrum forced series mode
};

struct LaxOptions {
  int series_order = 8;
  bool force_series = false;  // build the Taylor form even when exact exists
};

// Always succeeds: an operator pair with a rational diagonalizable spectrum
// yields the exact Laurent form (non-integer spectra are absorbed into
// lambda_scale); anything else degrades to the truncated series with the
// noninteger_spectrum warning set.
LaurentConnection build_lax(const ChiralOperatorPair& pair, const LaxOptions& opt = {});

// Deterministic (power, chirality) listing of the exact coefficients,
// ordered by power then '+' before '-'. Throws NoClosedForm in series mode.
struct LaurentEntry {
  long long power = 0;
  char chirality = '+';
  Mat coeff;
};
std::vector<LaurentEntry> laurent_coefficients(const LaurentConnection& conn);

// A(lambda) applied to floating chiral components.
std::vector<double> evaluate(const LaurentConnection& conn, double lambda,
                             const std::vector<double>& j_plus,
                             const std::vector<double>& j_minus);

// True when a series-mode evaluation at this lambda is outside the radius
// where the truncated tail is negligible.
bool series_radius_exceeded(const LaurentConnection& conn, double lambda);

struct IdentityCheckReport {
  // p * Cp == Sigma_eff * Cp for every stored power (the coefficient form of
  // dA/dlambda = Sigma A).
  bool derivative_exact = false;
  // Sigma_eff^k * Cp == p^k * Cp for k = 1..3, the coefficient form of the
  // finite shift A(lambda + mu) = exp(mu Sigma_eff) A(lambda).
  bool shift_exact = false;
  std::vector<double> lambdas;      // floating spot-check sample points
  double max_float_residual = 0.0;  // relative, across samples
  bool float_ok = false;
};
IdentityCheckReport check_connection_identities(const LaurentConnection& conn,
                                                unsigned seed = 2024,
                                                double tolerance = 1e-12);

// One term per power, grade projectors rendered as J+(k) / J-(k) symbols.
std::string format_connection(const LaurentConnection& conn);
// The Laurent support in the three common parametrizations: e^lambda powers,
// z = e^lambda monomials, and the Moebius variable x with z = (x+1)/(x-1).
std::string format_support(const LaurentConnection& conn);

}  // namespace laxkit
