#include <catch2/catch_amalgamated.hpp>

#include "monrep/algebra.hpp"
#include "oracles.hpp"

#include <cstddef>
#include <string>
#include <vector>

using namespace monrep;
using Catch::Matchers::ContainsSubstring;

namespace {

PrimeField gf(std::uint64_t p) { return PrimeField(p); }

template <ExactField F>
std::size_t idx_of(const Algebra<F>& a, const std::string& label) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a.labels()[i] == label) return i;
  FAIL("label not found: " + label);
  return 0;
}

template <ExactField F>
Mat<F> bv(const Algebra<F>& a, const std::string& label) {
  return a.basis_vec(idx_of(a, label));
}

Quiver loop1() { return Quiver(1, {{1, 1}}); }
Quiver nakayama_quiver() { return Quiver(2, {{1, 2}, {2, 1}}); }

}  // namespace

TEST_CASE("path algebra of the two-vertex chain", "[algebra]") {
  auto f = gf(2);
  Quiver q(2, {{2, 1}});
  auto a = path_algebra(q, f);
  REQUIRE(a->dim() == 3);
  REQUIRE(a->labels() == std::vector<std::string>{"e1", "e2", "a1"});
  REQUIRE(a->num_idempotents() == 2);
  REQUIRE(a->radical_basis().size() == 1);

  auto e1 = bv(*a, "e1"), e2 = bv(*a, "e2"), x = bv(*a, "a1");
  // the arrow runs 2 -> 1, so e1 absorbs it on the left and e2 on the right
  REQUIRE(a->mul(e1, x) == x);
  REQUIRE(a->mul(x, e2) == x);
  REQUIRE(a->mul(x, e1).is_zero());
  REQUIRE(a->mul(e2, x).is_zero());
  REQUIRE(a->mul(x, x).is_zero());
  REQUIRE(a->mul(e1, e2).is_zero());
  REQUIRE(a->mul(e1, e1) == e1);
  REQUIRE(a->unit() == e1 + e2);

  auto cert = validate_algebra(*a);
  REQUIRE(cert.verified);
  REQUIRE(verify(cert));
}

TEST_CASE("path algebra of the commuting square", "[algebra]") {
  auto f = gf(3);
  // arrows: a1: 4->3, a2: 4->2, a3: 3->1, a4: 2->1
  Quiver q(4, {{4, 3}, {4, 2}, {3, 1}, {2, 1}});
  auto a = path_algebra(q, f);
  REQUIRE(a->dim() == 10);
  REQUIRE(a->num_idempotents() == 4);
  REQUIRE(a->radical_basis().size() == 6);

  // composites read right-to-left: a3a1 means "a1 first, then a3"
  REQUIRE(a->mul(bv(*a, "a3"), bv(*a, "a1")) == bv(*a, "a3a1"));
  REQUIRE(a->mul(bv(*a, "a4"), bv(*a, "a2")) == bv(*a, "a4a2"));
  REQUIRE(a->mul(bv(*a, "a1"), bv(*a, "a3")).is_zero());
  REQUIRE(a->mul(bv(*a, "a3"), bv(*a, "a2")).is_zero());
  // both length-two composites 4 -> 1 are distinct basis elements
  REQUIRE(idx_of(*a, "a3a1") != idx_of(*a, "a4a2"));

  REQUIRE_NOTHROW(validate_algebra(*a));
}

TEST_CASE("single vertex path algebra is the ground field", "[algebra]") {
  auto f = gf(5);
  auto a = path_algebra(Quiver(1, {}), f);
  REQUIRE(a->dim() == 1);
  REQUIRE(a->unit() == a->basis_vec(0));
  REQUIRE_NOTHROW(validate_algebra(*a));
}

TEST_CASE("path algebra refuses cyclic quivers", "[algebra]") {
  auto f = gf(2);
  REQUIRE_THROWS_AS(path_algebra(loop1(), f), NotFiniteDimensional);
  REQUIRE_THROWS_AS(path_algebra(Quiver(2, {{1, 2}, {2, 1}}), f), NotFiniteDimensional);
}

TEST_CASE("truncated polynomial rings as monomial quotients", "[algebra]") {
  SECTION("k[x]/(x^2) over GF(2)") {
    auto f = gf(2);
    auto a = monomial_quotient(loop1(), {{0, 0}}, f);
    REQUIRE(a->dim() == 2);
    REQUIRE(a->num_idempotents() == 1);
    REQUIRE(a->radical_basis().size() == 1);
    auto x = bv(*a, "a1");
    REQUIRE(a->mul(x, x).is_zero());
    REQUIRE(a->mul(a->unit(), x) == x);
    REQUIRE_NOTHROW(validate_algebra(*a));
  }
  SECTION("k[x]/(x^3) over GF(3)") {
    auto f = gf(3);
    auto a = monomial_quotient(loop1(), {{0, 0, 0}}, f);
    REQUIRE(a->dim() == 3);
    REQUIRE(a->radical_basis().size() == 2);
    auto x = bv(*a, "a1");
    auto x2 = a->mul(x, x);
    REQUIRE(x2 == bv(*a, "a1a1"));
    REQUIRE(a->mul(x2, x).is_zero());
    REQUIRE_NOTHROW(validate_algebra(*a));
  }
}

TEST_CASE("two-vertex cyclic Nakayama algebra", "[algebra]") {
  auto f = gf(2);
  // arrows: a1: 1->2, a2: 2->1; all length-two composites vanish
  auto a = monomial_quotient(nakayama_quiver(), {{0, 1}, {1, 0}}, f, "Nak2");
  REQUIRE(a->dim() == 4);
  REQUIRE(a->num_idempotents() == 2);
  REQUIRE(a->radical_basis().size() == 2);
  auto e1 = bv(*a, "e1"), e2 = bv(*a, "e2");
  auto u = bv(*a, "a1"), v = bv(*a, "a2");
  REQUIRE(a->mul(u, v).is_zero());
  REQUIRE(a->mul(v, u).is_zero());
  REQUIRE(a->mul(u, u).is_zero());
  // a1 runs 1 -> 2: e2 absorbs on the left, e1 on the right
  REQUIRE(a->mul(e2, u) == u);
  REQUIRE(a->mul(u, e1) == u);
  REQUIRE(a->mul(e1, u).is_zero());
  REQUIRE_NOTHROW(validate_algebra(*a));
}

TEST_CASE("monomial quotient detects infinite dimension", "[algebra]") {
  auto f = gf(2);
  // two loops on one vertex; only the square of the first is forbidden,
  // so alternating words grow forever
  Quiver q(1, {{1, 1}, {1, 1}});
  REQUIRE_THROWS_AS(monomial_quotient(q, {{0, 0}}, f), NotFiniteDimensional);
  // forbidding every length-two word cuts it down to dimension 3
  auto a = monomial_quotient(q, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, f);
  REQUIRE(a->dim() == 3);
  REQUIRE_NOTHROW(validate_algebra(*a));
}

TEST_CASE("monomial quotient rejects malformed forbidden paths", "[algebra]") {
  auto f = gf(2);
  REQUIRE_THROWS_AS(monomial_quotient(loop1(), {{0}}, f), AlgebraError);
  Quiver q(2, {{1, 2}, {2, 1}});
  // arrow 0 ends at 2 but arrow 0 starts at 1: not composable with itself
  REQUIRE_THROWS_AS(monomial_quotient(q, {{0, 0}}, f), AlgebraError);
}

TEST_CASE("opposite algebra reverses products and is involutive", "[algebra]") {
  auto f = gf(3);
  auto a = monomial_quotient(nakayama_quiver(), {{0, 1}, {1, 0}}, f);
  auto op = opposite(*a);
  REQUIRE(op->dim() == a->dim());
  REQUIRE_NOTHROW(validate_algebra(*op));
  testsupport::TestRng rng(11);
  for (int t = 0; t < 20; ++t) {
    auto x = testsupport::random_mat(f, a->dim(), 1, rng);
    auto y = testsupport::random_mat(f, a->dim(), 1, rng);
    REQUIRE(op->mul(x, y) == a->mul(y, x));
  }
  auto opop = opposite(*op);
  for (std::size_t i = 0; i < a->dim(); ++i)
    for (std::size_t j = 0; j < a->dim(); ++j)
      REQUIRE(opop->table(i, j) == a->table(i, j));
}

TEST_CASE("tensor of a path algebra with a self-injective fibre", "[algebra]") {
  auto f = gf(2);
  Quiver q(2, {{2, 1}});
  auto a = monomial_quotient(loop1(), {{0, 0}}, f, "k[x]/x2");
  auto t = tensor_with_path_algebra(q, *a);
  REQUIRE(t->dim() == 6);
  REQUIRE(t->num_idempotents() == 2);
  REQUIRE(t->radical_basis().size() == 4);
  REQUIRE_NOTHROW(validate_algebra(*t));

  // (arrow (x) 1) * (e2 (x) x) = arrow (x) x = (e1 (x) x) * (arrow (x) 1)
  auto ax = t->mul(bv(*t, "a1#e1"), bv(*t, "e2#a1"));
  REQUIRE(ax == bv(*t, "a1#a1"));
  REQUIRE(t->mul(bv(*t, "e1#a1"), bv(*t, "a1#e1")) == ax);
  // triple radical products vanish (Loewy length is 3)
  const auto& rad = t->radical_basis();
  for (const auto& r1 : rad)
    for (const auto& r2 : rad)
      for (const auto& r3 : rad)
        REQUIRE(t->mul(t->mul(r1, r2), r3).is_zero());
  bool some_double_nonzero = false;
  for (const auto& r1 : rad)
    for (const auto& r2 : rad)
      if (!t->mul(r1, r2).is_zero()) some_double_nonzero = true;
  REQUIRE(some_double_nonzero);
}

TEST_CASE("random multiplication is associative and unital", "[algebra]") {
  auto f = gf(5);
  Quiver q(3, {{3, 1}, {3, 2}});
  auto fib = monomial_quotient(loop1(), {{0, 0, 0}}, gf(5), "k[x]/x3");
  auto t = tensor_with_path_algebra(q, *fib);
  testsupport::TestRng rng(7);
  for (int it = 0; it < 15; ++it) {
    auto x = testsupport::random_mat(f, t->dim(), 1, rng);
    auto y = testsupport::random_mat(f, t->dim(), 1, rng);
    auto z = testsupport::random_mat(f, t->dim(), 1, rng);
    REQUIRE(t->mul(t->mul(x, y), z) == t->mul(x, t->mul(y, z)));
    REQUIRE(t->mul(t->unit(), x) == x);
    REQUIRE(t->mul(x, t->unit()) == x);
    // regular representation matrices agree with elementwise products
    REQUIRE(t->left_mult(x) * y == t->mul(x, y));
    REQUIRE(t->right_mult(y) * x == t->mul(x, y));
  }
}

TEST_CASE("validation pinpoints broken laws", "[algebra]") {
  auto f = gf(2);

  SECTION("wrong unit") {
    // dim 2, b0 acts as a one-sided unit only
    std::vector<std::vector<Mat<PrimeField>>> table(
        2, std::vector<Mat<PrimeField>>(2, Mat<PrimeField>(f, 2, 1)));
    auto col = [&](int t) {
      Mat<PrimeField> v(f, 2, 1);
      if (t >= 0) v.at(static_cast<std::size_t>(t), 0) = f.one();
      return v;
    };
    table[0][0] = col(0);
    table[0][1] = col(1);   // b0 * b1 = b1
    table[1][0] = col(-1);  // b1 * b0 = 0: right unit law broken
    table[1][1] = col(-1);
    auto a = make_algebra(f, 2, {"u", "x"}, table, col(0), {col(0)}, {col(1)});
    REQUIRE_THROWS_MATCHES(validate_algebra(*a), AlgebraValidationError,
                           Catch::Matchers::MessageMatches(ContainsSubstring("unit")));
  }

  SECTION("non-associative table") {
    // unit laws hold but x*x = y, x*y = 0, y*x = x breaks associativity
    std::vector<std::vector<Mat<PrimeField>>> table(
        3, std::vector<Mat<PrimeField>>(3, Mat<PrimeField>(f, 3, 1)));
    auto col = [&](int t) {
      Mat<PrimeField> v(f, 3, 1);
      if (t >= 0) v.at(static_cast<std::size_t>(t), 0) = f.one();
      return v;
    };
    for (int i = 0; i < 3; ++i) {
      table[0][i] = col(i);
      table[i][0] = col(i);
    }
    table[1][1] = col(2);
    table[1][2] = col(-1);
    table[2][1] = col(1);
    table[2][2] = col(-1);
    auto a = make_algebra(f, 3, {"u", "x", "y"}, table, col(0), {col(0)}, {col(1), col(2)});
    REQUIRE_THROWS_MATCHES(validate_algebra(*a), AlgebraValidationError,
                           Catch::Matchers::MessageMatches(ContainsSubstring("associativity")));
  }

  SECTION("radical claim that is not nilpotent") {
    // the ground field with the unit declared radical
    std::vector<std::vector<Mat<PrimeField>>> table(
        1, std::vector<Mat<PrimeField>>(1, Mat<PrimeField>(f, 1, 1)));
    table[0][0].at(0, 0) = f.one();
    Mat<PrimeField> u(f, 1, 1);
    u.at(0, 0) = f.one();
    auto a = make_algebra(f, 1, {"u"}, table, u, {u}, {u});
    REQUIRE_THROWS_MATCHES(validate_algebra(*a), AlgebraValidationError,
                           Catch::Matchers::MessageMatches(ContainsSubstring("nilpotent")));
  }
}

TEST_CASE("declared generators really generate", "[algebra]") {
  auto f = gf(2);
  Quiver q(4, {{4, 3}, {4, 2}, {3, 1}, {2, 1}});
  auto a = path_algebra(q, f);
  // trivial paths plus arrows: 4 + 4 = 8 generators for a dim-10 algebra
  REQUIRE(a->gens().size() == 8);
  auto cert = validate_algebra(*a);
  bool saw = false;
  for (const auto& c : cert.checks)
    if (c.name == "generators generate") saw = true;
  REQUIRE(saw);
}
