#pragma once
// Named models as executable fixtures: operator pair, projector family,
// expected verdict, and (where a closed form exists) the independently
// transcribed expected connection.

#include <optional>
#include <string>

#include "laxkit/integrability.hpp"
#include "laxkit/lax.hpp"

namespace laxkit {

struct ModelSpec {
  std::string name;  // canonical name with arguments
  AlgebraPtr algebra;
  ChiralOperatorPair pair;
  std::vector<ConstraintProjector> projectors;
  std::optional<Verdict> expected_verdict;    // always set for builtins
  std::optional<LaurentConnection> expected;  // transcribed, not rebuilt
  std::string notes;
};

// Accepts "z2_symmetric", "zn_coset(6)", "pcm_gauge_fixed(1,2)",
// "general_z2(1,2,3)", "wzw(3/2)", "new_z2(-2)", "pcm_doubled(0,1)".
// Arguments are exact rationals; omitted arguments take the documented
// defaults. Unknown names throw BadInput, invalid arguments BadParameters.
ModelSpec builtin(const std::string& name);

// Default instantiations, as shown by `catalog list`.
std::vector<std::string> builtin_names();

// The transcribed closed-form connection; throws NoClosedForm when the model
// has none (the gauge-fixed PCM away from its special loci).
LaurentConnection expected_lax(const std::string& name);

}  // namespace laxkit
