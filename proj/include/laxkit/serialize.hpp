#pragma once
// JSON wire format for models and reports, plus the CSV table for scans.
// Exact scalars travel as canonical "p/q" strings (JSON integers are also
// accepted on input); floating-point numbers in model files are rejected so
// the wire format stays exact. Reports may contain floats where the
// underlying check is floating-point.

#include <string>

#include "json.hpp"
#include "laxkit/catalog.hpp"
#include "laxkit/flatness.hpp"
#include "laxkit/lax.hpp"
#include "laxkit/scan.hpp"

namespace laxkit {

using Json = nlohmann::ordered_json;

Json rational_to_json(const Rational& r);
// `where` names the field in error messages.
Rational rational_from_json(const Json& v, const std::string& where);

Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& v, const std::string& where);

Verdict verdict_from_name(const std::string& name);

// Model files: { "name"?, "algebra": {...}, "sigma": {...},
// "projectors": [...]?, "expected": {...}?, "notes"? }. The algebra block is
// either a preset ({"preset","n","grading"?,"block"?,"doubled"?}) or raw data
// ({"dim","n_grades","grades","f","names"?}); sigma is either grade
// eigenvalue lists or matrices, with an optional "alpha" shift; projectors
// default to the computed constraint family; "expected" may carry a verdict
// and a connection. model_to_json always emits the raw algebra form, so the
// output is self-contained and reloads without preset knowledge.
ModelSpec model_from_json(const Json& j);
Json model_to_json(const ModelSpec& m);
ModelSpec load_model(const std::string& path);

Json connection_to_json(const LaurentConnection& conn);
LaurentConnection connection_from_json(const Json& j, const AlgebraPtr& algebra);

Json report_to_json(const GradedCheckReport& rep);
Json report_to_json(const GeneralCheckReport& rep);
Json report_to_json(const FlatnessSeriesReport& rep);
Json report_to_json(const NumericFlatnessReport& rep);
Json constraints_to_json(const std::vector<ConstraintDescriptor>& descriptors,
                         const std::vector<ConstraintProjector>& projectors);

Json scan_to_json(const ScanResult& res);
std::string scan_to_csv(const ScanResult& res);

}  // namespace laxkit
