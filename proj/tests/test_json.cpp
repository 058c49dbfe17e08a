#include <catch2/catch_amalgamated.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "monrep/algebra.hpp"
#include "monrep/embed.hpp"
#include "monrep/generate.hpp"
#include "monrep/homological.hpp"
#include "monrep/json_io.hpp"
#include "monrep/module.hpp"
#include "monrep/quiver.hpp"
#include "monrep/rep.hpp"
#include "monrep/rng.hpp"

using namespace monrep;

namespace {

PrimeField gf(std::uint64_t p) { return PrimeField(p); }

AlgebraPtr<PrimeField> dual_numbers(std::uint64_t p = 2) {
  return monomial_quotient(Quiver(1, {{1, 1}}), {{0, 0}}, gf(p), "k[x]/x2");
}

AlgebraPtr<PrimeField> nakayama2(std::uint64_t p = 2) {
  return monomial_quotient(Quiver(2, {{1, 2}, {2, 1}}), {{0, 1}, {1, 0}}, gf(p), "Nak2");
}

// submodule generated by x inside the regular module of the dual numbers
Module<PrimeField> simple_dual(const AlgebraPtr<PrimeField>& a) { return simple_module(a, 0); }

Representation<PrimeField> zero_into_simple(const AlgebraPtr<PrimeField>& a) {
  Quiver q(2, {Arrow{2, 1}});
  const PrimeField& f = a->field();
  Module<PrimeField> s = simple_dual(a);
  return Representation<PrimeField>(q, a, {s, zero_module(a)}, {Mat<PrimeField>(f, 1, 0)});
}

}  // namespace

TEST_CASE("field specs and field elements round trip") {
  FieldSpec p2{FieldSpec::Kind::Prime, 2};
  FieldSpec qq{FieldSpec::Kind::Rationals, 0};
  REQUIRE(field_spec_from_json(field_spec_to_json(p2)) == p2);
  REQUIRE(field_spec_from_json(field_spec_to_json(qq)) == qq);
  REQUIRE(field_spec_to_json(p2).dump() == R"({"kind":"prime","p":2})");
  REQUIRE(field_spec_to_json(qq).dump() == R"({"kind":"rational"})");
  REQUIRE_THROWS_AS(field_spec_from_json(Json{{"kind", "complex"}}), JsonError);
  REQUIRE_THROWS_AS(field_spec_from_json(Json{{"kind", "prime"}}), JsonError);

  REQUIRE(parse_field_arg("5") == FieldSpec{FieldSpec::Kind::Prime, 5});
  REQUIRE(parse_field_arg("Q") == FieldSpec{FieldSpec::Kind::Rationals, 0});
  REQUIRE_THROWS_AS(parse_field_arg("x7"), JsonError);
  REQUIRE_THROWS_AS(parse_field_arg(""), JsonError);

  RationalField rf;
  RationalField::Elem e = rf.from_int(-2);
  e = rf.mul(e, rf.inv(rf.from_int(3)));  // -2/3
  Json je = elem_to_json(rf, e);
  REQUIRE(je.get<std::string>() == "-2/3");
  REQUIRE(rf.eq(elem_from_json(rf, je), e));
  REQUIRE(rf.eq(elem_from_json(rf, Json(7)), rf.from_int(7)));
  REQUIRE_THROWS_AS(elem_from_json(rf, Json("2/x")), JsonError);

  PrimeField f5 = gf(5);
  REQUIRE(f5.eq(elem_from_json(f5, Json(-1)), f5.from_int(4)));
  REQUIRE_THROWS_AS(elem_from_json(f5, Json("3")), JsonError);
}

TEST_CASE("matrices round trip in both layouts") {
  PrimeField f = gf(7);
  Rng rng(3);
  Mat<PrimeField> m = random_mat(f, rng, 3, 2);
  REQUIRE(mat_from_json(f, mat_to_json(f, m), 3, 2) == m);
  REQUIRE(mat_from_json_sized(f, mat_to_json_sized(f, m)) == m);

  // degenerate shapes survive the self-describing layout
  Mat<PrimeField> empty(f, 0, 3);
  REQUIRE(mat_from_json_sized(f, mat_to_json_sized(f, empty)) == empty);

  REQUIRE_THROWS_AS(mat_from_json(f, mat_to_json(f, m), 2, 2, "m"), JsonError);
  Json bad = mat_to_json(f, m);
  bad[1] = Json::array({1});
  REQUIRE_THROWS_AS(mat_from_json(f, bad, 3, 2, "m"), JsonError);

  RationalField rf;
  Json jm = Json::array({Json::array({"1/2", -3}), Json::array({0, "5/7"})});
  Mat<RationalField> rm = mat_from_json(rf, jm, 2, 2);
  REQUIRE(rf.eq(rm.at(0, 0), rf.inv(rf.from_int(2))));
  REQUIRE(mat_from_json(rf, mat_to_json(rf, rm), 2, 2) == rm);
}

TEST_CASE("quivers round trip") {
  Quiver q(3, {Arrow{2, 1}, Arrow{3, 1}});
  REQUIRE(quiver_from_json(quiver_to_json(q)) == q);
  REQUIRE(quiver_to_json(q).dump() == R"({"n":3,"arrows":[[2,1],[3,1]]})");
  REQUIRE_THROWS_AS(quiver_from_json(Json{{"arrows", Json::array()}}), JsonError);
  Json out_of_range = Json{{"n", 2}, {"arrows", Json::array({Json::array({3, 1})})}};
  REQUIRE_THROWS_AS(quiver_from_json(out_of_range), JsonError);
}

TEST_CASE("algebras round trip through structure constants") {
  auto a = nakayama2();
  PrimeField f = gf(2);
  Json j = algebra_to_json(*a);
  AlgebraPtr<PrimeField> b = algebra_from_json(f, j);
  REQUIRE(b->dim() == a->dim());
  REQUIRE(b->labels() == a->labels());
  REQUIRE(b->id() == a->id());
  REQUIRE(b->unit() == a->unit());
  REQUIRE(b->idempotents() == a->idempotents());
  REQUIRE(b->radical_basis() == a->radical_basis());
  for (std::size_t i = 0; i < a->dim(); ++i)
    for (std::size_t k = 0; k < a->dim(); ++k) REQUIRE(b->table(i, k) == a->table(i, k));

  // a hand-written minimal document (no id) loads with the default name
  Json doc = Json::parse(R"({
    "field": {"kind": "prime", "p": 2},
    "dim": 2,
    "basis": ["1", "x"],
    "mul": [[[1,0],[0,1]],[[0,1],[0,0]]],
    "unit": [1,0],
    "idempotents": [[1,0]],
    "radical": [[0,1]]
  })");
  AlgebraPtr<PrimeField> d = algebra_from_json(f, doc);
  REQUIRE(d->id() == "A");
  REQUIRE(d->dim() == 2);
  REQUIRE(d->num_idempotents() == 1);
  // behaves as the dual numbers: x * x = 0
  REQUIRE(d->table(1, 1).is_zero());
  REQUIRE(is_isomorphic(regular_module(d), regular_module(d)).status == IsoStatus::Yes);

  // violated laws are rejected at load time
  Json broken = doc;
  broken["unit"] = Json::array({1, 1});
  REQUIRE_THROWS_AS(algebra_from_json(f, broken), JsonError);
  Json mismatch = doc;
  mismatch["field"]["p"] = 3;
  REQUIRE_THROWS_AS(algebra_from_json(f, mismatch), JsonError);
}

TEST_CASE("modules round trip and are validated on load") {
  auto a = dual_numbers();
  Module<PrimeField> s = simple_dual(a);
  Json j = module_to_json(s);
  REQUIRE(j["algebra"].get<std::string>() == "k[x]/x2");
  REQUIRE(module_from_json(a, j) == s);
  REQUIRE(module_from_json(a, module_to_json(regular_module(a))) == regular_module(a));

  Json wrong_ref = j;
  wrong_ref["algebra"] = "other";
  REQUIRE_THROWS_AS(module_from_json(a, wrong_ref), JsonError);

  // an action table that breaks multiplicativity is rejected
  Json broken = module_to_json(regular_module(a));
  broken["action"][1][0][0] = 1;  // x would act with a unit component
  REQUIRE_THROWS_AS(module_from_json(a, broken), JsonError);
}

TEST_CASE("representations round trip") {
  auto a = dual_numbers();
  Representation<PrimeField> x = zero_into_simple(a);
  Json j = rep_to_json(x);
  REQUIRE(rep_from_json(a, j) == x);

  // randomly generated instances survive the round trip
  Quiver q(3, {Arrow{2, 1}, Arrow{3, 1}});
  auto na = nakayama2();
  Rng rng(17);
  for (int k = 0; k < 3; ++k) {
    Representation<PrimeField> y = random_monic_rep(q, na, rng);
    REQUIRE(rep_from_json(na, rep_to_json(y)) == y);
  }

  Json missing_vertex = j;
  missing_vertex["vertices"].erase("2");
  REQUIRE_THROWS_AS(rep_from_json(a, missing_vertex), JsonError);

  Json dup = j;
  dup["arrows"].push_back(dup["arrows"][0]);
  REQUIRE_THROWS_AS(rep_from_json(a, dup), JsonError);

  // non-homomorphism arrow matrices are rejected at construction
  Representation<PrimeField> reg2(Quiver(2, {Arrow{2, 1}}), a,
                                  {regular_module(a), regular_module(a)},
                                  {Mat<PrimeField>::identity(a->field(), 2)});
  Json bad = rep_to_json(reg2);
  bad["arrows"][0]["mat"][0][1] = 1;  // breaks commutation with the x-action
  REQUIRE_THROWS_AS(rep_from_json(a, bad), JsonError);
}

TEST_CASE("certificates round trip and re-verify from stored matrices") {
  auto a = dual_numbers();
  PrimeField f = gf(2);

  // product/rank/closure checks all appear in the algebra law certificate
  Certificate<PrimeField> laws = validate_algebra(*a);
  Certificate<PrimeField> parsed = certificate_from_json(f, certificate_to_json(f, laws));
  REQUIRE(parsed.kind == laws.kind);
  REQUIRE(parsed.checks.size() == laws.checks.size());
  REQUIRE(parsed.verified);
  std::string bad_name;
  REQUIRE(verify(parsed, &bad_name));

  // an embedding certificate survives, and tampering is caught by re-verification
  Representation<PrimeField> x = zero_into_simple(a);
  EmbeddingResult<PrimeField> emb = injective_embedding(x);
  Json jc = certificate_to_json(f, emb.cert);
  Certificate<PrimeField> emb2 = certificate_from_json(f, jc);
  REQUIRE(verify(emb2, &bad_name));

  Json tampered = jc;
  bool flipped = false;
  for (auto& chk : tampered["checks"]) {
    for (auto& m : chk["lhs"]) {
      if (m["rows"].get<std::size_t>() > 0 && m["cols"].get<std::size_t>() > 0) {
        auto cur = m["entries"][0][0].get<std::uint64_t>();
        m["entries"][0][0] = cur == 0 ? 1 : 0;
        flipped = true;
        break;
      }
    }
    if (flipped) break;
  }
  REQUIRE(flipped);
  Certificate<PrimeField> forged = certificate_from_json(f, tampered);
  std::string first;
  REQUIRE_FALSE(verify(forged, &first));
  REQUIRE_FALSE(first.empty());
}

TEST_CASE("embedding reports carry vertex checks and summand provenance") {
  auto a = dual_numbers();
  Representation<PrimeField> x = zero_into_simple(a);
  EmbeddingResult<PrimeField> emb = injective_embedding(x);
  Json j = embedding_report_json(emb);
  REQUIRE(j["kind"].get<std::string>() == "injective_embedding");
  REQUIRE(j["squares_ok"].get<bool>());
  REQUIRE(j["Z_monic"].get<bool>());
  REQUIRE(j["vertex_checks"].size() == 2);
  REQUIRE(j["vertex_checks"][0]["i"].get<std::size_t>() == 1);
  REQUIRE(j["vertex_checks"][0]["f_injective"].get<bool>());
  REQUIRE(j["vertex_checks"][0]["exact"].get<bool>());
  REQUIRE(j["summands"].size() == 2);
  REQUIRE(j["summands"][0]["vertex"].get<std::size_t>() == 1);
  REQUIRE(j["summands"][0]["role"].get<std::string>() == "cokernel-envelope");
  REQUIRE(j["summands"][0]["dim"].get<std::size_t>() == 2);
  REQUIRE(j["summands"][1]["role"].get<std::string>() == "source-envelope");
  REQUIRE(j["summands"][1]["dim"].get<std::size_t>() == 0);
  REQUIRE(j.contains("certificate"));

  // identical construction twice gives identical bytes
  Json j2 = embedding_report_json(injective_embedding(x));
  REQUIRE(j.dump() == j2.dump());
}

TEST_CASE("analysis reports serialize with fixed keys") {
  auto a = dual_numbers();
  Representation<PrimeField> x = zero_into_simple(a);
  AgreementReport ar = mon_cm_check(x, 2);
  Json j = agreement_report_json(ar);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  REQUIRE(keys == std::vector<std::string>{"monic", "vertexwise_perp", "cok_perp", "lambda_perp",
                                           "bound", "agree"});
  REQUIRE(j["monic"].get<bool>());
  REQUIRE(j["agree"].get<bool>());
  REQUIRE(j["bound"].get<std::size_t>() == 2);
  REQUIRE(j["vertexwise_perp"].size() == 2);

  PerpReport pr = perp_membership(simple_dual(a), regular_module(a), 3, "bound note");
  Json pj = perp_report_json(pr);
  REQUIRE(pj["member"].get<bool>());
  REQUIRE(pj["table"].size() == 3);
  REQUIRE(pj["justification"].get<std::string>() == "bound note");
}
