#include "laxkit/serialize.hpp"

#include <fstream>
#include <sstream>

#include "laxkit/error.hpp"

namespace laxkit {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(Errc::BadInput, where + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) bad(where, "missing required field '" + key + "'");
  return *it;
}

int int_field(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) bad(where, "expected an integer");
  return v.get<int>();
}

std::string string_field(const Json& v, const std::string& where) {
  if (!v.is_string()) bad(where, "expected a string");
  return v.get<std::string>();
}

std::vector<Rational> rational_list(const Json& v, const std::string& where) {
  if (!v.is_array()) bad(where, "expected an array of rationals");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(rational_from_json(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

AlgebraPtr algebra_from_json(const Json& j) {
  if (!j.is_object()) bad("algebra", "expected an object");
  AlgebraSpec spec;
  if (j.contains("preset")) {
    spec.preset = string_field(j.at("preset"), "algebra.preset");
    spec.n = int_field(field(j, "n", "algebra"), "algebra.n");
    if (j.contains("grading")) spec.grading = string_field(j.at("grading"), "algebra.grading");
    if (j.contains("block")) spec.block = int_field(j.at("block"), "algebra.block");
    if (j.contains("doubled")) {
      if (!j.at("doubled").is_boolean()) bad("algebra.doubled", "expected a boolean");
      spec.doubled = j.at("doubled").get<bool>();
    }
    return GradedLieAlgebra::build(spec);
  }
  spec.dim = int_field(field(j, "dim", "algebra"), "algebra.dim");
  const Json& ng = j.contains("n_grades") ? j.at("n_grades") : field(j, "N", "algebra");
  spec.n_grades = int_field(ng, "algebra.n_grades");
  const Json& grades = field(j, "grades", "algebra");
  if (!grades.is_array()) bad("algebra.grades", "expected an array");
  for (std::size_t i = 0; i < grades.size(); ++i)
    spec.grades.push_back(int_field(grades[i], "algebra.grades"));
  const Json& f = field(j, "f", "algebra");
  if (!f.is_array()) bad("algebra.f", "expected an array of [a, b, c, value] entries");
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Json& e = f[i];
    const std::string where = "algebra.f[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 4) bad(where, "expected [a, b, c, value]");
    spec.f_entries.emplace_back(int_field(e[0], where), int_field(e[1], where),
                                int_field(e[2], where), rational_from_json(e[3], where));
  }
  if (j.contains("names")) {
    const Json& names = j.at("names");
    if (!names.is_array()) bad("algebra.names", "expected an array of strings");
    for (std::size_t i = 0; i < names.size(); ++i)
      spec.names.push_back(string_field(names[i], "algebra.names"));
  }
  return GradedLieAlgebra::build(spec);
}

ChiralOperatorPair sigma_from_json(const Json& j, const AlgebraPtr& alg) {
  if (!j.is_object()) bad("sigma", "expected an object");
  Rational alpha = 0;
  if (j.contains("alpha")) alpha = rational_from_json(j.at("alpha"), "sigma.alpha");
  if (j.contains("eigenvalues_plus")) {
    auto ep = rational_list(field(j, "eigenvalues_plus", "sigma"), "sigma.eigenvalues_plus");
    auto em = rational_list(field(j, "eigenvalues_minus", "sigma"), "sigma.eigenvalues_minus");
    if (static_cast<int>(ep.size()) != alg->grading_order() || em.size() != ep.size())
      bad("sigma", "need one eigenvalue per grade on both chiralities");
    return ChiralOperatorPair::diagonal(alg, std::move(ep), std::move(em), alpha);
  }
  if (!j.contains("matrix_plus"))
    bad("sigma", "expected either eigenvalue lists or matrices");
  Mat plus = matrix_from_json(field(j, "matrix_plus", "sigma"), "sigma.matrix_plus");
  Mat minus = matrix_from_json(field(j, "matrix_minus", "sigma"), "sigma.matrix_minus");
  if (plus.rows() != alg->dim() || plus.cols() != alg->dim() || minus.rows() != alg->dim() ||
      minus.cols() != alg->dim())
    bad("sigma", "operator matrices must be dim x dim");
  return ChiralOperatorPair::matrix(alg, std::move(plus), std::move(minus), alpha);
}

std::vector<ConstraintProjector> projectors_from_json(const Json& j,
                                                      const ChiralOperatorPair& pair) {
  if (!j.is_array()) bad("projectors", "expected an array");
  std::vector<ConstraintProjector> out;
  const Mat d = pair.difference();
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "projectors[" + std::to_string(i) + "]";
    const Json& e = j[i];
    if (!e.is_object()) bad(where, "expected an object");
    ConstraintProjector p;
    if (e.contains("grade")) {
      int g = int_field(e.at("grade"), where + ".grade");
      if (g < 0 || g >= pair.algebra()->grading_order()) bad(where, "grade out of range");
      p.grade = g;
      p.mat = pair.algebra()->grade_projector(g);
      p.label = "Pi^" + std::to_string(g);
    } else {
      p.mat = matrix_from_json(field(e, "matrix", where), where + ".matrix");
      p.label = "Pi[" + std::to_string(i) + "]";
    }
    if (!(p.mat * p.mat == p.mat))
      throw Error(Errc::BadParameters, where + ": projector is not idempotent");
    if (!(p.mat * d).is_zero())
      throw Error(Errc::BadParameters,
                  where + ": projector does not annihilate Sigma+ - Sigma-");
    out.push_back(std::move(p));
  }
  return out;
}

Json coefficients_to_json(const std::map<long long, Mat>& coeffs) {
  Json out = Json::object();
  for (const auto& [p, m] : coeffs) out[std::to_string(p)] = matrix_to_json(m);
  return out;
}

std::map<long long, Mat> coefficients_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object keyed by integer powers");
  std::map<long long, Mat> out;
  for (const auto& [key, value] : j.items()) {
    long long p = 0;
    try {
      std::size_t used = 0;
      p = std::stoll(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      bad(where, "power key '" + key + "' is not an integer");
    }
    out[p] = matrix_from_json(value, where + "[" + key + "]");
  }
  return out;
}

Json positions_to_json(const std::vector<std::pair<int, int>>& positions) {
  Json out = Json::array();
  for (const auto& [j, k] : positions) out.push_back(Json::array({j, k}));
  return out;
}

Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_to_json(x));
  return out;
}

}  // namespace

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_float())
    bad(where, "floating-point values are not accepted; use an exact \"p/q\" string");
  if (!v.is_string()) bad(where, "expected an exact rational");
  auto r = parse_rational(v.get<std::string>());
  if (!r) bad(where, "'" + v.get<std::string>() + "' is not a valid rational");
  return *r;
}

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(rational_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const Json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) bad(where, "expected a nonempty array of rows");
  const int rows = static_cast<int>(v.size());
  if (!v[0].is_array() || v[0].empty()) bad(where, "expected array rows");
  const int cols = static_cast<int>(v[0].size());
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!v[i].is_array() || static_cast<int>(v[i].size()) != cols)
      bad(where, "ragged rows in matrix");
    for (int j = 0; j < cols; ++j)
      m(i, j) = rational_from_json(v[i][j],
                                   where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  }
  return m;
}

Verdict verdict_from_name(const std::string& name) {
  if (name == "integrable") return Verdict::integrable;
  if (name == "integrable-with-constraints") return Verdict::integrable_with_constraints;
  if (name == "not-integrable") return Verdict::not_integrable;
  bad("expected.verdict", "unknown verdict '" + name + "'");
}

ModelSpec model_from_json(const Json& j) {
  if (!j.is_object()) bad("model", "expected a JSON object");
  ModelSpec m;
  m.name = j.contains("name") ? string_field(j.at("name"), "name") : "model";
  if (j.contains("notes")) m.notes = string_field(j.at("notes"), "notes");
  m.algebra = algebra_from_json(field(j, "algebra", "model"));
  m.pair = sigma_from_json(field(j, "sigma", "model"), m.algebra);
  m.projectors = j.contains("projectors") ? projectors_from_json(j.at("projectors"), m.pair)
                                          : find_constraint_projectors(m.pair);
  if (j.contains("expected")) {
    const Json& e = j.at("expected");
    if (!e.is_object()) bad("expected", "expected an object");
    if (e.contains("verdict"))
      m.expected_verdict = verdict_from_name(string_field(e.at("verdict"), "expected.verdict"));
    if (e.contains("lax")) m.expected = connection_from_json(e.at("lax"), m.algebra);
  }
  return m;
}

Json model_to_json(const ModelSpec& m) {
  const GradedLieAlgebra& alg = *m.algebra;
  Json j;
  j["name"] = m.name;

  Json a;
  a["dim"] = alg.dim();
  a["n_grades"] = alg.grading_order();
  a["grades"] = alg.grades();
  Json f = Json::array();
  for (int x = 0; x < alg.dim(); ++x)
    for (int y = x + 1; y < alg.dim(); ++y)
      for (const auto& [c, q] : alg.bracket_basis(x, y))
        f.push_back(Json::array({x, y, c, rational_to_json(q)}));
  a["f"] = std::move(f);
  Json names = Json::array();
  for (int x = 0; x < alg.dim(); ++x) names.push_back(alg.name_of(x));
  a["names"] = std::move(names);
  j["algebra"] = std::move(a);

  Json s;
  if (m.pair.is_diagonal()) {
    s["eigenvalues_plus"] = vec_to_json(m.pair.eigenvalues_plus());
    s["eigenvalues_minus"] = vec_to_json(m.pair.eigenvalues_minus());
  } else {
    s["matrix_plus"] = matrix_to_json(m.pair.plus());
    s["matrix_minus"] = matrix_to_json(m.pair.minus());
  }
  s["alpha"] = rational_to_json(m.pair.alpha());
  j["sigma"] = std::move(s);

  Json projs = Json::array();
  for (const auto& p : m.projectors) {
    Json e;
    if (p.grade)
      e["grade"] = *p.grade;
    else
      e["matrix"] = matrix_to_json(p.mat);
    projs.push_back(std::move(e));
  }
  j["projectors"] = std::move(projs);

  if (m.expected_verdict || m.expected) {
    Json e;
    if (m.expected_verdict) e["verdict"] = verdict_name(*m.expected_verdict);
    if (m.expected) e["lax"] = connection_to_json(*m.expected);
    j["expected"] = std::move(e);
  }
  if (!m.notes.empty()) j["notes"] = m.notes;
  return j;
}

ModelSpec load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::BadInput, "cannot open model file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::BadInput, std::string("model file is not valid JSON: ") + e.what());
  }
  ModelSpec m = model_from_json(j);
  if (m.name == "model") m.name = path;
  return m;
}

Json connection_to_json(const LaurentConnection& conn) {
  Json j;
  j["exact"] = conn.exact;
  j["lambda_scale"] = rational_to_json(conn.lambda_scale);
  if (!conn.exact) j["series_order"] = conn.series_order;
  if (conn.noninteger_spectrum) j["noninteger_spectrum"] = true;
  j["plus"] = coefficients_to_json(conn.plus_coeffs);
  j["minus"] = coefficients_to_json(conn.minus_coeffs);
  j["effective_plus"] = matrix_to_json(conn.effective_plus);
  j["effective_minus"] = matrix_to_json(conn.effective_minus);
  j["pretty"] = format_connection(conn);
  j["support"] = format_support(conn);
  return j;
}

LaurentConnection connection_from_json(const Json& j, const AlgebraPtr& algebra) {
  if (!j.is_object()) bad("lax", "expected an object");
  LaurentConnection conn;
  conn.algebra = algebra;
  if (j.contains("exact")) {
    if (!j.at("exact").is_boolean()) bad("lax.exact", "expected a boolean");
    conn.exact = j.at("exact").get<bool>();
  }
  if (j.contains("lambda_scale"))
    conn.lambda_scale = rational_from_json(j.at("lambda_scale"), "lax.lambda_scale");
  if (j.contains("series_order"))
    conn.series_order = int_field(j.at("series_order"), "lax.series_order");
  if (j.contains("noninteger_spectrum")) {
    if (!j.at("noninteger_spectrum").is_boolean())
      bad("lax.noninteger_spectrum", "expected a boolean");
    conn.noninteger_spectrum = j.at("noninteger_spectrum").get<bool>();
  }
  conn.plus_coeffs = coefficients_from_json(field(j, "plus", "lax"), "lax.plus");
  conn.minus_coeffs = coefficients_from_json(field(j, "minus", "lax"), "lax.minus");
  conn.effective_plus = matrix_from_json(field(j, "effective_plus", "lax"), "lax.effective_plus");
  conn.effective_minus =
      matrix_from_json(field(j, "effective_minus", "lax"), "lax.effective_minus");
  return conn;
}

Json report_to_json(const GradedCheckReport& rep) {
  Json j;
  j["type"] = "graded";
  j["verdict"] = verdict_name(rep.verdict);
  j["n"] = rep.n;
  auto table = [](const std::vector<std::vector<Rational>>& t) {
    Json rows = Json::array();
    for (const auto& row : t) rows.push_back(vec_to_json(row));
    return rows;
  };
  j["table_plus"] = table(rep.table_plus);
  j["table_minus"] = table(rep.table_minus);
  j["product"] = table(rep.product);
  Json vac = Json::array();
  for (const auto& row : rep.vacuous) {
    Json r = Json::array();
    for (bool b : row) r.push_back(b);
    vac.push_back(std::move(r));
  }
  j["vacuous"] = std::move(vac);
  j["kernel_grades"] = rep.kernel_grades;
  Json pi = Json::object();
  for (const auto& [g, v] : rep.pi) pi[std::to_string(g)] = rational_to_json(v);
  j["pi"] = std::move(pi);
  j["constraint_positions"] = positions_to_json(rep.constraint_positions);
  Json pp = Json::object();
  for (const auto& [g, pos] : rep.pi_positions) pp[std::to_string(g)] = positions_to_json(pos);
  j["pi_positions"] = std::move(pp);
  if (!rep.detail.empty()) j["detail"] = rep.detail;
  return j;
}

Json report_to_json(const GeneralCheckReport& rep) {
  Json j;
  j["type"] = "general";
  j["verdict"] = verdict_name(rep.verdict);
  Json projs = Json::array();
  for (const auto& p : rep.projectors) projs.push_back(p.label);
  j["projectors"] = std::move(projs);
  j["coefficients"] = vec_to_json(rep.coefficients);
  if (!rep.detail.empty()) j["detail"] = rep.detail;
  return j;
}

Json report_to_json(const FlatnessSeriesReport& rep) {
  Json j;
  j["orders_checked"] = rep.orders_checked;
  j["modulo_constraints"] = rep.modulo_constraints;
  j["all_zero"] = rep.all_zero;
  Json res = Json::object();
  for (const auto& [order, entries] : rep.residuals) {
    Json list = Json::array();
    for (const auto& [slot, v] : entries) {
      Json e;
      e["pair"] = Json::array({slot.first, slot.second});
      e["residual"] = vec_to_json(v);
      list.push_back(std::move(e));
    }
    res[std::to_string(order)] = std::move(list);
  }
  j["residuals"] = std::move(res);
  return j;
}

Json report_to_json(const NumericFlatnessReport& rep) {
  Json j;
  j["max_residual"] = rep.max_residual;
  j["seed"] = rep.seed;
  j["trials"] = rep.trials;
  j["lambdas"] = rep.lambdas;
  return j;
}

Json constraints_to_json(const std::vector<ConstraintDescriptor>& descriptors,
                         const std::vector<ConstraintProjector>& projectors) {
  Json out = Json::array();
  for (const auto& d : descriptors) {
    Json e;
    e["projector"] = d.projector;
    e["label"] = projectors[d.projector].label;
    e["positions"] = positions_to_json(d.positions);
    e["equations"] = d.equations;
    out.push_back(std::move(e));
  }
  return out;
}

Json scan_to_json(const ScanResult& res) {
  Json j;
  j["family"] = res.family;
  j["params"] = res.param_names;
  if (!res.notes.empty()) j["notes"] = res.notes;
  Json grid = Json::array();
  Json verdicts = Json::array();
  for (const auto& p : res.points) {
    grid.push_back(vec_to_json(p.params));
    Json v;
    v["verdict"] = verdict_name(p.verdict);
    Json pi = Json::object();
    for (const auto& [g, val] : p.pi) pi[std::to_string(g)] = rational_to_json(val);
    v["pi"] = std::move(pi);
    v["residual"] = rational_to_json(p.residual);
    v["loci"] = p.loci;
    if (p.doubled) v["doubled_verdict"] = verdict_name(*p.doubled);
    verdicts.push_back(std::move(v));
  }
  j["grid"] = std::move(grid);
  j["verdicts"] = std::move(verdicts);
  Json loci = Json::array();
  for (const auto& loc : res.loci) {
    Json l;
    l["description"] = loc.description;
    l["verdict"] = verdict_name(loc.verdict);
    l["equations"] = loc.equations;
    Json pi = Json::object();
    for (const auto& [g, txt] : loc.pi) pi[std::to_string(g)] = txt;
    l["pi"] = std::move(pi);
    l["witnesses"] = loc.witnesses;
    loci.push_back(std::move(l));
  }
  j["loci"] = std::move(loci);
  return j;
}

std::string scan_to_csv(const ScanResult& res) {
  std::ostringstream os;
  bool any_doubled = false;
  for (const auto& p : res.points) any_doubled = any_doubled || p.doubled.has_value();
  for (const auto& name : res.param_names) os << name << ",";
  os << "verdict,residual,pi,loci,labels";
  if (any_doubled) os << ",doubled_verdict";
  os << "\n";
  for (const auto& p : res.points) {
    for (const auto& v : p.params) os << to_string(v) << ",";
    os << verdict_name(p.verdict) << "," << to_string(p.residual) << ",";
    bool first = true;
    for (const auto& [g, val] : p.pi) {
      os << (first ? "" : ";") << "pi_" << g << "=" << to_string(val);
      first = false;
    }
    os << ",";
    first = true;
    for (int li : p.loci) {
      os << (first ? "" : ";") << li;
      first = false;
    }
    os << ",\"";
    first = true;
    for (int li : p.loci) {
      os << (first ? "" : "; ") << res.loci[li].description;
      first = false;
    }
    os << "\"";
    if (any_doubled) os << "," << (p.doubled ? verdict_name(*p.doubled) : "");
    os << "\n";
  }
  return os.str();
}

}  // namespace laxkit
