#include "ncprism/json_io.hpp"

#include <cmath>

namespace ncprism {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) fail(std::string("missing field '") + name + "'");
  return j.at(name);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " is not a number");
  return j.get<double>();
}

std::size_t count(const Json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) fail(std::string(what) + " is not an integer");
  const auto v = j.get<long long>();
  if (v < 0) fail(std::string(what) + " is negative");
  return static_cast<std::size_t>(v);
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " is not an array");
  return j;
}

std::vector<ComplexMatrix> matrices(const Json& j, const char* what) {
  std::vector<ComplexMatrix> out;
  for (const auto& m : array(j, what)) out.push_back(matrix_from_json(m));
  return out;
}

Json matrices_to_json(const std::vector<ComplexMatrix>& mats) {
  Json out = Json::array();
  for (const auto& m : mats) out.push_back(matrix_to_json(m));
  return out;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& ex) {
    fail(ex.what());
  }
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail("expected a number or an [re, im] pair");
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(complex_to_json(m(r, c)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (j.is_number() || j.is_array()) return ComplexMatrix::Constant(1, 1, complex_from_json(j));
  const auto rows = static_cast<Eigen::Index>(count(field(j, "rows"), "rows"));
  const auto cols = static_cast<Eigen::Index>(count(field(j, "cols"), "cols"));
  const Json& data = array(field(j, "data"), "data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols)
    fail("matrix data length does not match rows * cols");
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(data[static_cast<std::size_t>(r * cols + c)]);
  if (!is_finite(m)) fail("matrix has non-finite entries");
  return m;
}

Json tuple_to_json(const std::vector<ComplexMatrix>& mats) {
  return Json{{"tuple", matrices_to_json(mats)}};
}

std::vector<ComplexMatrix> tuple_from_json(const Json& j) {
  if (j.is_array()) return matrices(j, "tuple");
  return matrices(field(j, "tuple"), "tuple");
}

Json symmetry_tuple_to_json(const SymmetryTuple& t) {
  Json out = tuple_to_json(t.mats);
  out["provenance"] = t.provenance;
  return out;
}

Json rep_pair_to_json(const RepPair& p) {
  Json out{{"k", p.k},
           {"W", matrix_to_json(p.W)},
           {"V", matrix_to_json(p.V)},
           {"provenance", p.provenance}};
  out["commutant_dim"] = p.commutant_dim ? Json(*p.commutant_dim) : Json(nullptr);
  return out;
}

RepPair rep_pair_from_json(const Json& j) {
  RepPair p;
  p.W = matrix_from_json(field(j, "W"));
  p.V = matrix_from_json(field(j, "V"));
  p.k = j.contains("k") ? count(j.at("k"), "k") : 3;
  if (j.contains("provenance") && j.at("provenance").is_string()) p.provenance = j.at("provenance").get<std::string>();
  if (j.contains("commutant_dim") && !j.at("commutant_dim").is_null())
    p.commutant_dim = count(j.at("commutant_dim"), "commutant_dim");
  return p;
}

Json dilation_to_json(const DilationResult& d) {
  return Json{{"isometry", matrix_to_json(d.isometry)},
              {"operators", matrices_to_json(d.operators)},
              {"labels", d.labels}};
}

DilationResult dilation_from_json(const Json& j) {
  DilationResult d;
  d.isometry = matrix_from_json(field(j, "isometry"));
  d.operators = matrices(field(j, "operators"), "operators");
  if (j.contains("labels")) {
    for (const auto& l : array(j.at("labels"), "labels")) {
      if (!l.is_string()) fail("label is not a string");
      d.labels.push_back(l.get<std::string>());
    }
  }
  return d;
}

Json povm_to_json(const Povm& p) {
  Json labels = Json::array();
  for (const auto& z : p.outcome_labels) labels.push_back(complex_to_json(z));
  return Json{{"effects", matrices_to_json(p.effects)}, {"outcome_labels", std::move(labels)}};
}

Povm povm_from_json(const Json& j) {
  Povm p;
  p.effects = matrices(field(j, "effects"), "effects");
  for (const auto& z : array(field(j, "outcome_labels"), "outcome_labels")) p.outcome_labels.push_back(complex_from_json(z));
  if (p.outcome_labels.size() != p.effects.size()) fail("effects and labels differ in length");
  return p;
}

Json element_to_json(const PrismElement& e) {
  return Json{{"k", e.k}, {"q", e.q}, {"c", matrices_to_json(e.c)}, {"g", matrix_to_json(e.g)}};
}

PrismElement element_from_json(const Json& j) {
  PrismElement e;
  e.c = matrices(field(j, "c"), "c");
  e.g = matrix_from_json(field(j, "g"));
  e.k = j.contains("k") ? count(j.at("k"), "k") : e.c.size();
  e.q = j.contains("q") ? static_cast<Eigen::Index>(count(j.at("q"), "q")) : e.g.rows();
  try {
    validate_element(e);
  } catch (const Error& ex) {
    fail(ex.what());
  }
  return e;
}

Json diag_tuple_to_json(const DiagTuple& x) {
  return Json{{"k", x.k}, {"q", x.q}, {"blocks", matrices_to_json(x.blocks)}};
}

DiagTuple diag_tuple_from_json(const Json& j) {
  DiagTuple x;
  x.blocks = matrices(field(j, "blocks"), "blocks");
  if (x.blocks.size() < 2) fail("tuple needs at least two blocks");
  x.k = j.contains("k") ? count(j.at("k"), "k") : x.blocks.size() - 2;
  x.q = j.contains("q") ? static_cast<Eigen::Index>(count(j.at("q"), "q")) : x.blocks.front().rows();
  if (x.blocks.size() != x.k + 2) fail("tuple needs k + 2 blocks");
  for (const auto& b : x.blocks)
    if (b.rows() != x.q || b.cols() != x.q) fail("tuple block is not q x q");
  return x;
}

Json dual_tuple_to_json(const DualTuple& z) {
  Json entries = Json::array();
  for (const auto& v : z.z) entries.push_back(complex_to_json(v));
  return Json{{"k", z.k}, {"z", std::move(entries)}};
}

DualTuple dual_tuple_from_json(const Json& j) {
  DualTuple z;
  for (const auto& v : array(field(j, "z"), "z")) z.z.push_back(complex_from_json(v));
  if (z.z.size() < 2) fail("tuple needs at least two entries");
  z.k = j.contains("k") ? count(j.at("k"), "k") : z.z.size() - 2;
  if (z.z.size() != z.k + 2) fail("tuple needs k + 2 entries");
  return z;
}

Json membership_to_json(const MembershipReport& r) {
  auto facet = [](const FacetReport& f) {
    return Json{{"index", f.index},
                {"normal", f.facet.normal},
                {"offset", f.facet.offset},
                {"support", f.support},
                {"slack", f.slack}};
  };
  Json facets = Json::array();
  for (const auto& f : r.facets) facets.push_back(facet(f));
  return Json{{"member", r.member}, {"margin", r.margin}, {"worst_facet", facet(r.worst)}, {"facets", std::move(facets)}};
}

Json canonical_form_to_json(const CanonicalForm& f) {
  return Json{{"lambdas", f.lambdas},
              {"char_counts",
               {{"++", f.char_counts[0]}, {"+-", f.char_counts[1]}, {"-+", f.char_counts[2]}, {"--", f.char_counts[3]}}},
              {"conjugator", matrix_to_json(f.conjugator)},
              {"reconstruction_error", f.reconstruction_error}};
}

Json polytope_to_json(const PolytopeSpec& p) {
  Json facets = Json::array();
  for (const auto& f : p.facets) facets.push_back(Json{{"normal", f.normal}, {"offset", f.offset}});
  return Json{{"name", p.name}, {"ambient_dim", p.ambient_dim}, {"vertices", p.vertices}, {"facets", std::move(facets)}};
}

Json witness_to_json(const RefutationWitness& w) {
  return Json{{"pair", rep_pair_to_json(w.pair)}, {"min_eigenvalue", w.min_eigenvalue}};
}

RefutationWitness witness_from_json(const Json& j) {
  return {rep_pair_from_json(field(j, "pair")), number(field(j, "min_eigenvalue"), "min_eigenvalue")};
}

Json certificate_to_json(const PositivityCertificate& c) {
  return Json{{"lift", diag_tuple_to_json(c.lift)},
              {"residual", c.residual},
              {"min_block_eigenvalue", c.min_block_eigenvalue},
              {"iterations", c.iterations}};
}

PositivityCertificate certificate_from_json(const Json& j) {
  PositivityCertificate c;
  c.lift = diag_tuple_from_json(field(j, "lift"));
  c.residual = number(field(j, "residual"), "residual");
  c.min_block_eigenvalue = number(field(j, "min_block_eigenvalue"), "min_block_eigenvalue");
  c.iterations = j.contains("iterations") ? count(j.at("iterations"), "iterations") : 0;
  return c;
}

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Refuted: return "Refuted";
    case VerdictKind::Certified: return "Certified";
    case VerdictKind::Unknown: return "Unknown";
  }
  return "Unknown";
}

VerdictKind verdict_kind_from_string(const std::string& s) {
  if (s == "Refuted") return VerdictKind::Refuted;
  if (s == "Certified") return VerdictKind::Certified;
  if (s == "Unknown") return VerdictKind::Unknown;
  fail("unknown verdict '" + s + "'");
}

Json verdict_to_json(const PositivityVerdict& v) {
  Json out{{"verdict", to_string(v.kind)}, {"pairs_tested", v.pairs_tested}};
  out["witness"] = v.witness ? witness_to_json(*v.witness) : Json(nullptr);
  out["certificate"] = v.certificate ? certificate_to_json(*v.certificate) : Json(nullptr);
  return out;
}

PositivityVerdict verdict_from_json(const Json& j) {
  PositivityVerdict v;
  const Json& kind = field(j, "verdict");
  if (!kind.is_string()) fail("verdict is not a string");
  v.kind = verdict_kind_from_string(kind.get<std::string>());
  if (j.contains("pairs_tested")) v.pairs_tested = count(j.at("pairs_tested"), "pairs_tested");
  if (j.contains("witness") && !j.at("witness").is_null()) v.witness = witness_from_json(j.at("witness"));
  if (j.contains("certificate") && !j.at("certificate").is_null())
    v.certificate = certificate_from_json(j.at("certificate"));
  return v;
}

}  // namespace ncprism
