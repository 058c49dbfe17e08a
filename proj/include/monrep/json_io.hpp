#pragma once

#include "monrep/algebra.hpp"
#include "monrep/certificate.hpp"
#include "monrep/embed.hpp"
#include "monrep/field.hpp"
#include "monrep/homological.hpp"
#include "monrep/mat.hpp"
#include "monrep/module.hpp"
#include "monrep/quiver.hpp"
#include "monrep/rep.hpp"
#include "monrep/stable.hpp"

#include <json.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monrep {

/// Order-preserving JSON so that serialization is byte-deterministic.
using Json = nlohmann::ordered_json;

class JsonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline const Json& require_key(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw JsonError(std::string(what) + ": missing key \"" + key + "\"");
  return j.at(key);
}

inline std::uint64_t require_uint(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw JsonError(std::string(what) + ": expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

inline std::string require_string(const Json& j, const char* what) {
  if (!j.is_string()) throw JsonError(std::string(what) + ": expected a string");
  return j.get<std::string>();
}

inline bool require_bool(const Json& j, const char* what) {
  if (!j.is_boolean()) throw JsonError(std::string(what) + ": expected a boolean");
  return j.get<bool>();
}

inline void require_array(const Json& j, std::size_t size, const char* what) {
  if (!j.is_array() || j.size() != size)
    throw JsonError(std::string(what) + ": expected an array of length " + std::to_string(size));
}

}  // namespace detail

// --------------------------------------------------------------------------
// Field specs and field elements

inline Json field_spec_to_json(const FieldSpec& s) {
  Json j;
  if (s.kind == FieldSpec::Kind::Prime) {
    j["kind"] = "prime";
    j["p"] = s.p;
  } else {
    j["kind"] = "rational";
  }
  return j;
}

inline FieldSpec field_spec_from_json(const Json& j) {
  std::string kind = detail::require_string(detail::require_key(j, "kind", "field"), "field.kind");
  if (kind == "rational") return FieldSpec{FieldSpec::Kind::Rationals, 0};
  if (kind == "prime") {
    std::uint64_t p = detail::require_uint(detail::require_key(j, "p", "field"), "field.p");
    if (p >= (std::uint64_t{1} << 31)) throw JsonError("field.p: modulus out of range");
    return FieldSpec{FieldSpec::Kind::Prime, static_cast<std::uint32_t>(p)};
  }
  throw JsonError("field.kind: expected \"prime\" or \"rational\"");
}

/// Command-line field argument: "Q" for the rationals, otherwise a prime p.
inline FieldSpec parse_field_arg(const std::string& s) {
  if (s == "Q" || s == "q") return FieldSpec{FieldSpec::Kind::Rationals, 0};
  std::uint64_t p = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw JsonError("--field: expected a prime number or Q, got " + s);
    p = p * 10 + static_cast<std::uint64_t>(c - '0');
    if (p >= (std::uint64_t{1} << 31)) throw JsonError("--field: modulus out of range");
  }
  if (s.empty()) throw JsonError("--field: empty argument");
  return FieldSpec{FieldSpec::Kind::Prime, static_cast<std::uint32_t>(p)};
}

inline Json elem_to_json(const PrimeField&, PrimeField::Elem e) { return e; }

inline Json elem_to_json(const RationalField&, const RationalField::Elem& e) {
  std::ostringstream os;
  os << e;
  return os.str();
}

inline PrimeField::Elem elem_from_json(const PrimeField& f, const Json& j) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    throw JsonError("entry: expected an integer");
  return f.from_int(j.get<std::int64_t>());
}

inline RationalField::Elem elem_from_json(const RationalField& f, const Json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) return f.from_int(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return RationalField::Elem(j.get<std::string>());
    } catch (const std::exception&) {
      throw JsonError("entry: malformed rational \"" + j.get<std::string>() + "\"");
    }
  }
  throw JsonError("entry: expected an integer or a rational string");
}

// --------------------------------------------------------------------------
// Matrices. Two layouts: a bare row-major nested array when the shape is
// known from context, and a self-describing {"rows","cols","entries"} object
// for certificate payloads.

template <ExactField F>
Json mat_to_json(const F& f, const Mat<F>& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(elem_to_json(f, m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <ExactField F>
Mat<F> mat_from_json(const F& f, const Json& j, std::size_t rows, std::size_t cols,
                     const char* what = "matrix") {
  detail::require_array(j, rows, what);
  Mat<F> m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    detail::require_array(j.at(r), cols, what);
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = elem_from_json(f, j.at(r).at(c));
  }
  return m;
}

template <ExactField F>
Json mat_to_json_sized(const F& f, const Mat<F>& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["entries"] = mat_to_json(f, m);
  return j;
}

template <ExactField F>
Mat<F> mat_from_json_sized(const F& f, const Json& j, const char* what = "matrix") {
  std::size_t rows = detail::require_uint(detail::require_key(j, "rows", what), what);
  std::size_t cols = detail::require_uint(detail::require_key(j, "cols", what), what);
  return mat_from_json(f, detail::require_key(j, "entries", what), rows, cols, what);
}

/// Coordinate column as a flat array (algebra structure constants, unit,
/// idempotent and radical coordinates).
template <ExactField F>
Json col_to_json(const F& f, const Mat<F>& v) {
  Json arr = Json::array();
  for (std::size_t r = 0; r < v.rows(); ++r) arr.push_back(elem_to_json(f, v.at(r, 0)));
  return arr;
}

template <ExactField F>
Mat<F> col_from_json(const F& f, const Json& j, std::size_t dim, const char* what) {
  detail::require_array(j, dim, what);
  Mat<F> v(f, dim, 1);
  for (std::size_t r = 0; r < dim; ++r) v.at(r, 0) = elem_from_json(f, j.at(r));
  return v;
}

// --------------------------------------------------------------------------
// Quivers

inline Json quiver_to_json(const Quiver& q) {
  Json j;
  j["n"] = q.num_vertices();
  Json arrows = Json::array();
  for (const Arrow& a : q.arrows()) arrows.push_back(Json::array({a.s, a.e}));
  j["arrows"] = std::move(arrows);
  return j;
}

inline Quiver quiver_from_json(const Json& j) {
  std::size_t n = detail::require_uint(detail::require_key(j, "n", "quiver"), "quiver.n");
  const Json& ja = detail::require_key(j, "arrows", "quiver");
  if (!ja.is_array()) throw JsonError("quiver.arrows: expected an array");
  std::vector<Arrow> arrows;
  for (const Json& e : ja) {
    detail::require_array(e, 2, "quiver arrow");
    arrows.push_back(Arrow{detail::require_uint(e.at(0), "arrow source"),
                           detail::require_uint(e.at(1), "arrow end")});
  }
  try {
    return Quiver(n, std::move(arrows));
  } catch (const QuiverError& err) {
    throw JsonError(std::string("quiver: ") + err.what());
  }
}

// --------------------------------------------------------------------------
// Algebras. The document carries the structure constants plus the chosen
// idempotents and radical basis; loading re-validates every algebra law.
// The optional "id" key names the algebra so modules and representations can
// cross-reference it; it defaults to "A".

template <ExactField F>
Json algebra_to_json(const Algebra<F>& a) {
  const F& f = a.field();
  Json j;
  j["field"] = field_spec_to_json(f.spec());
  j["id"] = a.id();
  j["dim"] = a.dim();
  j["basis"] = a.labels();
  Json mul = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < a.dim(); ++k) row.push_back(col_to_json(f, a.table(i, k)));
    mul.push_back(std::move(row));
  }
  j["mul"] = std::move(mul);
  j["unit"] = col_to_json(f, a.unit());
  Json idem = Json::array();
  for (const auto& e : a.idempotents()) idem.push_back(col_to_json(f, e));
  j["idempotents"] = std::move(idem);
  Json rad = Json::array();
  for (const auto& r : a.radical_basis()) rad.push_back(col_to_json(f, r));
  j["radical"] = std::move(rad);
  return j;
}

template <ExactField F>
AlgebraPtr<F> algebra_from_json(const F& f, const Json& j) {
  FieldSpec spec = field_spec_from_json(detail::require_key(j, "field", "algebra"));
  if (!(spec == f.spec()))
    throw JsonError("algebra: document field " + spec.name() + " does not match the run field " +
                    f.spec().name());
  std::size_t dim = detail::require_uint(detail::require_key(j, "dim", "algebra"), "algebra.dim");
  const Json& jb = detail::require_key(j, "basis", "algebra");
  detail::require_array(jb, dim, "algebra.basis");
  std::vector<std::string> labels;
  for (const Json& l : jb) labels.push_back(detail::require_string(l, "algebra.basis entry"));
  const Json& jm = detail::require_key(j, "mul", "algebra");
  detail::require_array(jm, dim, "algebra.mul");
  std::vector<std::vector<Mat<F>>> table;
  for (std::size_t i = 0; i < dim; ++i) {
    detail::require_array(jm.at(i), dim, "algebra.mul row");
    std::vector<Mat<F>> row;
    for (std::size_t k = 0; k < dim; ++k)
      row.push_back(col_from_json(f, jm.at(i).at(k), dim, "algebra.mul entry"));
    table.push_back(std::move(row));
  }
  Mat<F> unit = col_from_json(f, detail::require_key(j, "unit", "algebra"), dim, "algebra.unit");
  auto col_list = [&](const char* key) {
    const Json& arr = detail::require_key(j, key, "algebra");
    if (!arr.is_array()) throw JsonError(std::string("algebra.") + key + ": expected an array");
    std::vector<Mat<F>> out;
    for (const Json& e : arr) out.push_back(col_from_json(f, e, dim, key));
    return out;
  };
  std::vector<Mat<F>> idem = col_list("idempotents");
  std::vector<Mat<F>> rad = col_list("radical");
  std::string id = j.contains("id") ? detail::require_string(j.at("id"), "algebra.id") : "A";
  AlgebraPtr<F> a;
  try {
    a = make_algebra(f, dim, std::move(labels), std::move(table), std::move(unit),
                     std::move(idem), std::move(rad), std::move(id));
    validate_algebra(*a);
  } catch (const AlgebraError& err) {
    throw JsonError(std::string("algebra: ") + err.what());
  }
  return a;
}

// --------------------------------------------------------------------------
// Modules. One dim x dim action matrix per algebra basis element; the
// "algebra" key must match the id of the algebra the document is loaded
// against. Loading re-validates the module laws.

template <ExactField F>
Json module_to_json(const Module<F>& m) {
  const F& f = m.field();
  Json j;
  j["algebra"] = m.algebra()->id();
  j["dim"] = m.dim();
  Json action = Json::array();
  for (std::size_t i = 0; i < m.algebra()->dim(); ++i)
    action.push_back(mat_to_json(f, m.action_basis(i)));
  j["action"] = std::move(action);
  return j;
}

template <ExactField F>
Module<F> module_from_json(const AlgebraPtr<F>& a, const Json& j) {
  const F& f = a->field();
  std::string ref = detail::require_string(detail::require_key(j, "algebra", "module"),
                                           "module.algebra");
  if (ref != a->id())
    throw JsonError("module: references algebra \"" + ref + "\" but \"" + a->id() +
                    "\" is loaded");
  std::size_t dim = detail::require_uint(detail::require_key(j, "dim", "module"), "module.dim");
  const Json& ja = detail::require_key(j, "action", "module");
  detail::require_array(ja, a->dim(), "module.action");
  std::vector<Mat<F>> action;
  for (std::size_t i = 0; i < a->dim(); ++i)
    action.push_back(mat_from_json(f, ja.at(i), dim, dim, "module.action entry"));
  try {
    Module<F> m(a, dim, std::move(action));
    validate_module(m);
    return m;
  } catch (const ModuleError& err) {
    throw JsonError(std::string("module: ") + err.what());
  }
}

// --------------------------------------------------------------------------
// Representations. Vertex modules are keyed by decimal vertex labels;
// arrows carry their index into quiver.arrows plus the matrix.

template <ExactField F>
Json rep_to_json(const Representation<F>& x) {
  const F& f = x.field();
  Json j;
  j["quiver"] = quiver_to_json(x.quiver());
  j["algebra"] = x.algebra()->id();
  Json verts = Json::object();
  for (std::size_t v = 1; v <= x.quiver().num_vertices(); ++v)
    verts[std::to_string(v)] = module_to_json(x.vertex(v));
  j["vertices"] = std::move(verts);
  Json arrows = Json::array();
  for (std::size_t k = 0; k < x.quiver().arrows().size(); ++k) {
    Json e;
    e["arrow"] = k;
    e["mat"] = mat_to_json(f, x.arrow_mat(k));
    arrows.push_back(std::move(e));
  }
  j["arrows"] = std::move(arrows);
  return j;
}

template <ExactField F>
Representation<F> rep_from_json(const AlgebraPtr<F>& a, const Json& j) {
  const F& f = a->field();
  Quiver q = quiver_from_json(detail::require_key(j, "quiver", "representation"));
  std::string ref = detail::require_string(detail::require_key(j, "algebra", "representation"),
                                           "representation.algebra");
  if (ref != a->id())
    throw JsonError("representation: references algebra \"" + ref + "\" but \"" + a->id() +
                    "\" is loaded");
  const Json& jv = detail::require_key(j, "vertices", "representation");
  if (!jv.is_object()) throw JsonError("representation.vertices: expected an object");
  std::vector<Module<F>> verts;
  for (std::size_t v = 1; v <= q.num_vertices(); ++v) {
    std::string key = std::to_string(v);
    if (!jv.contains(key))
      throw JsonError("representation.vertices: missing vertex \"" + key + "\"");
    verts.push_back(module_from_json(a, jv.at(key)));
  }
  const Json& ja = detail::require_key(j, "arrows", "representation");
  detail::require_array(ja, q.arrows().size(), "representation.arrows");
  std::vector<Mat<F>> mats(q.arrows().size(), Mat<F>(f, 0, 0));
  std::vector<bool> seen(q.arrows().size(), false);
  for (const Json& e : ja) {
    std::size_t k = detail::require_uint(detail::require_key(e, "arrow", "representation arrow"),
                                         "representation arrow index");
    if (k >= q.arrows().size())
      throw JsonError("representation.arrows: index " + std::to_string(k) + " out of range");
    if (seen[k])
      throw JsonError("representation.arrows: duplicate entry for arrow " + std::to_string(k));
    seen[k] = true;
    const Arrow& ar = q.arrows()[k];
    mats[k] = mat_from_json(f, detail::require_key(e, "mat", "representation arrow"),
                            verts[ar.e - 1].dim(), verts[ar.s - 1].dim(), "arrow matrix");
  }
  try {
    return Representation<F>(q, a, std::move(verts), std::move(mats));
  } catch (const RepError& err) {
    throw JsonError(std::string("representation: ") + err.what());
  }
}

// --------------------------------------------------------------------------
// Certificates: every stored identity round-trips, so a written certificate
// can be re-verified without re-running the construction that produced it.

inline const char* check_kind_name(CheckKind k) {
  switch (k) {
    case CheckKind::ProductEq: return "product_eq";
    case CheckKind::RankEq: return "rank_eq";
    case CheckKind::Closure: return "closure";
  }
  return "product_eq";
}

inline CheckKind check_kind_from_name(const std::string& s) {
  if (s == "product_eq") return CheckKind::ProductEq;
  if (s == "rank_eq") return CheckKind::RankEq;
  if (s == "closure") return CheckKind::Closure;
  throw JsonError("check.type: unknown kind \"" + s + "\"");
}

template <ExactField F>
Json certificate_to_json(const F& f, const Certificate<F>& cert) {
  Json j;
  j["kind"] = cert.kind;
  j["verified"] = cert.verified;
  Json checks = Json::array();
  for (const Check<F>& c : cert.checks) {
    Json e;
    e["name"] = c.name;
    e["type"] = check_kind_name(c.kind);
    Json lhs = Json::array();
    for (const Mat<F>& m : c.lhs) lhs.push_back(mat_to_json_sized(f, m));
    e["lhs"] = std::move(lhs);
    Json rhs = Json::array();
    for (const Mat<F>& m : c.rhs) rhs.push_back(mat_to_json_sized(f, m));
    e["rhs"] = std::move(rhs);
    if (c.kind != CheckKind::ProductEq) e["expected"] = c.expected;
    if (c.kind == CheckKind::Closure) {
      e["accumulate"] = c.accumulate;
      e["max_steps"] = c.max_steps;
    }
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  return j;
}

template <ExactField F>
Certificate<F> certificate_from_json(const F& f, const Json& j) {
  Certificate<F> cert;
  cert.kind = detail::require_string(detail::require_key(j, "kind", "certificate"),
                                     "certificate.kind");
  cert.verified = detail::require_bool(detail::require_key(j, "verified", "certificate"),
                                       "certificate.verified");
  const Json& jc = detail::require_key(j, "checks", "certificate");
  if (!jc.is_array()) throw JsonError("certificate.checks: expected an array");
  for (const Json& e : jc) {
    Check<F> c;
    c.name = detail::require_string(detail::require_key(e, "name", "check"), "check.name");
    c.kind = check_kind_from_name(
        detail::require_string(detail::require_key(e, "type", "check"), "check.type"));
    const Json& lhs = detail::require_key(e, "lhs", "check");
    if (!lhs.is_array()) throw JsonError("check.lhs: expected an array");
    for (const Json& m : lhs) c.lhs.push_back(mat_from_json_sized(f, m, "check.lhs matrix"));
    const Json& rhs = detail::require_key(e, "rhs", "check");
    if (!rhs.is_array()) throw JsonError("check.rhs: expected an array");
    for (const Json& m : rhs) c.rhs.push_back(mat_from_json_sized(f, m, "check.rhs matrix"));
    if (e.contains("expected")) {
      if (!e.at("expected").is_number_integer() && !e.at("expected").is_number_unsigned())
        throw JsonError("check.expected: expected an integer");
      c.expected = e.at("expected").get<std::int64_t>();
    }
    if (e.contains("accumulate"))
      c.accumulate = detail::require_bool(e.at("accumulate"), "check.accumulate");
    if (e.contains("max_steps")) {
      if (!e.at("max_steps").is_number_integer() && !e.at("max_steps").is_number_unsigned())
        throw JsonError("check.max_steps: expected an integer");
      c.max_steps = e.at("max_steps").get<std::int64_t>();
    }
    cert.checks.push_back(std::move(c));
  }
  return cert;
}

// --------------------------------------------------------------------------
// Reports

/// Embedding report: per-vertex injectivity/exactness summary, the summand
/// provenance of the constructed injective object, and the full certificate.
template <ExactField F>
Json embedding_report_json(const EmbeddingResult<F>& r) {
  const F& f = r.e.field();
  const Quiver& q = r.e.quiver();
  Json j;
  j["kind"] = "injective_embedding";
  Json vchecks = Json::array();
  bool squares_ok = r.embed.is_hom() && r.project.is_hom();
  for (std::size_t v = 1; v <= q.num_vertices(); ++v) {
    const Mat<F>& fv = r.embed.comp(v);
    const Mat<F>& pv = r.project.comp(v);
    Json e;
    e["i"] = v;
    e["f_injective"] = is_injective_map(fv);
    bool composite_zero = (pv * fv).is_zero();
    bool ranks_split = rank(fv) + rank(pv) == r.e.vertex(v).dim();
    e["exact"] = composite_zero && ranks_split;
    vchecks.push_back(std::move(e));
  }
  j["vertex_checks"] = std::move(vchecks);
  j["squares_ok"] = squares_ok;
  j["Z_monic"] = is_monic(r.z).monic;
  Json summands = Json::array();
  for (const SummandInfo<F>& s : r.summands) {
    Json e;
    e["vertex"] = s.vertex;
    e["role"] = s.role();
    e["dim"] = s.seed.dim();
    summands.push_back(std::move(e));
  }
  j["summands"] = std::move(summands);
  j["certificate"] = certificate_to_json(f, r.cert);
  return j;
}

inline Json agreement_report_json(const AgreementReport& r) {
  Json j;
  j["monic"] = r.monic;
  j["vertexwise_perp"] = r.vertexwise_perp;
  j["cok_perp"] = r.cok_perp;
  j["lambda_perp"] = r.lambda_perp;
  j["bound"] = r.bound;
  j["agree"] = r.agree;
  return j;
}

inline Json perp_report_json(const PerpReport& r) {
  Json j;
  j["member"] = r.member;
  j["bound"] = r.bound;
  j["table"] = r.table;
  j["justification"] = r.justification;
  return j;
}

inline Json shift_vanishing_json(const ShiftVanishingReport& r) {
  Json j;
  j["nmax"] = r.nmax;
  j["module_pos"] = r.module_pos;
  j["module_neg"] = r.module_neg;
  j["mon_pos"] = r.mon_pos;
  j["mon_neg"] = r.mon_neg;
  j["module_all_zero"] = r.module_all_zero;
  j["mon_all_zero"] = r.mon_all_zero;
  j["implication_holds"] = r.implication_holds;
  return j;
}

}  // namespace monrep
