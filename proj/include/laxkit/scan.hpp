#pragma once
// Parameter-space scans over action families: pointwise verdicts on an exact
// rational grid, plus symbolic classification of the integrable loci by
// branching on the linear factors of the quadratic condition. The two routes
// are independent and cross-checked against each other: every locus must be
// backed by grid points, every integrable grid point must lie on a locus.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "laxkit/integrability.hpp"

namespace laxkit {

struct GridSpec {
  Rational lo = -3;
  Rational hi = 3;
  Rational step = 1;
};

// One axis sweep per parameter; throws BadParameters on an empty range.
std::vector<std::vector<Rational>> make_grid(const GridSpec& spec, int nparams);

struct ScanPointResult {
  std::vector<Rational> params;
  Verdict verdict = Verdict::not_integrable;
  std::map<int, Rational> pi;  // solved constraint eigenvalues (kernel grades)
  Rational residual;           // max |branch residual| with solved pi; 0 unless failing
  std::vector<int> loci;       // indices into ScanResult::loci containing this point
  std::optional<Verdict> doubled;  // two-copy formulation verdict (pcm family, beta != 0)
};

struct ScanLocus {
  Verdict verdict = Verdict::integrable;
  std::vector<std::string> equations;  // canonical defining equations on the parameters
  std::map<int, std::string> pi;       // grade -> eigenvalue form (constrained loci)
  std::string description;
  int witnesses = 0;  // grid points on the locus whose verdict (and pi) match
  // Exact data: each row is an affine form over (params..., 1) vanishing on
  // the locus; pi_forms give the constraint eigenvalue as the same kind of form.
  std::vector<Vec> rows;
  std::map<int, Vec> pi_forms;
};

struct ScanResult {
  std::string family;
  std::vector<std::string> param_names;
  std::vector<ScanPointResult> points;  // grid order: last parameter fastest
  std::vector<ScanLocus> loci;          // deduplicated, maximal, deterministic order
  std::string notes;
};

// The three-coupling order-2 family on a Z_2-graded algebra: grade-0 coupling
// beta, grade-1 coupling gamma, shift alpha. Requires grading order 2 with no
// identically vanishing grade-pair bracket.
ScanResult scan_general_z2(const AlgebraPtr& algebra, const GridSpec& grid = {},
                           Exec exec = Exec::serial);

// The two-coupling ungraded family on sl(2). Also runs the two-copy
// formulation at every beta != 0 point and records its verdict per point.
ScanResult scan_pcm(const GridSpec& grid = {}, Exec exec = Exec::serial);

// The pairs the scans instantiate at a parameter point, exposed for
// cross-route tests (built through from_action, not through the catalog).
ChiralOperatorPair general_z2_pair(const AlgebraPtr& algebra, const Rational& alpha,
                                   const Rational& beta, const Rational& gamma);
ChiralOperatorPair pcm_pair(const Rational& alpha, const Rational& beta);

}  // namespace laxkit
