#include "monrep/quiver.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace monrep;

namespace {
Quiver a2() { return Quiver(2, {{2, 1}}); }              // single arrow 2 -> 1
Quiver fork_q() { return Quiver(3, {{3, 1}, {3, 2}}); }    // 1 <- 3 -> 2
Quiver cofork() { return Quiver(3, {{2, 1}, {3, 1}}); }  // 2 -> 1 <- 3
}  // namespace

TEST_CASE("descending convention and sources", "[quiver]") {
  CHECK(a2().is_descending());
  CHECK(fork_q().is_descending());
  CHECK(cofork().is_descending());
  CHECK(!Quiver(2, {{1, 2}}).is_descending());
  CHECK(a2().sources() == std::vector<std::size_t>{2});
  CHECK(fork_q().sources() == std::vector<std::size_t>{3});
  CHECK(cofork().sources() == std::vector<std::size_t>{2, 3});
  // vertex n is always a source of a nonempty descending quiver
  CHECK(cofork().arrows_into(3).empty());
}

TEST_CASE("path enumeration: hand-listed bases", "[quiver]") {
  // A2: e_1, e_2, then the arrow.
  auto paths = a2().all_paths();
  REQUIRE(paths.size() == 3);
  CHECK(paths[0] == Path{1, 1, {}});
  CHECK(paths[1] == Path{2, 2, {}});
  CHECK(paths[2] == Path{2, 1, {0}});
  CHECK(a2().path_count(2, 1) == 1);
  CHECK(a2().path_count(1, 2) == 0);
  CHECK(a2().path_count(1, 1) == 1);

  // commuting square 4 -> {3,2} -> 1 (descending labels), two paths 4 -> 1
  Quiver sq(4, {{4, 3}, {4, 2}, {3, 1}, {2, 1}});
  CHECK(sq.all_paths().size() == 4 + 4 + 2);
  CHECK(sq.path_count(4, 1) == 2);
  auto p41 = sq.paths_from_to(4, 1);
  REQUIRE(p41.size() == 2);
  // canonical order: vertex sequence (4,2,1) before (4,3,1)
  CHECK(sq.all_paths()[p41[0]].arrows == std::vector<std::size_t>{1, 3});
  CHECK(sq.all_paths()[p41[1]].arrows == std::vector<std::size_t>{0, 2});

  // longest path lengths
  CHECK(a2().longest_path_length() == 1);
  CHECK(sq.longest_path_length() == 2);
  CHECK(Quiver(3, {}).longest_path_length() == 0);
}

TEST_CASE("parallel arrows are distinct paths", "[quiver]") {
  Quiver par(2, {{2, 1}, {2, 1}});
  CHECK(par.path_count(2, 1) == 2);
  auto idx = par.paths_from_to(2, 1);
  CHECK(par.all_paths()[idx[0]].arrows == std::vector<std::size_t>{0});
  CHECK(par.all_paths()[idx[1]].arrows == std::vector<std::size_t>{1});
}

TEST_CASE("compose and path_index round trip", "[quiver]") {
  Quiver sq(4, {{4, 3}, {4, 2}, {3, 1}, {2, 1}});
  Path p = sq.arrow_path(0);           // 4 -> 3
  Path q = sq.arrow_path(2);           // 3 -> 1
  Path qp = sq.compose(q, p);          // 4 -> 1 via 3
  CHECK(qp.start == 4);
  CHECK(qp.end == 1);
  CHECK(qp.arrows == std::vector<std::size_t>{0, 2});
  CHECK(sq.all_paths()[sq.path_index(qp)] == qp);
  CHECK_THROWS_AS(sq.compose(p, q), QuiverError);
}

TEST_CASE("relabel_topological produces descending labels", "[quiver]") {
  // 1 -> 2 -> 3 must flip to 3 -> 2 -> 1
  auto r = relabel_topological(3, {{1, 2}, {2, 3}});
  CHECK(r.quiver.is_descending());
  CHECK(r.new_label == std::vector<std::size_t>{0, 3, 2, 1});
  CHECK(r.quiver.arrows() == std::vector<Arrow>{{3, 2}, {2, 1}});

  auto ok = relabel_topological(3, {{3, 1}, {3, 2}});
  CHECK(ok.quiver.is_descending());

  CHECK_THROWS_AS(relabel_topological(2, {{1, 2}, {2, 1}}), QuiverError);
  CHECK_THROWS_AS(relabel_topological(1, {{1, 1}}), QuiverError);
}

TEST_CASE("cyclic quivers: acyclicity check, path enumeration refused", "[quiver]") {
  Quiver cyc(2, {{1, 2}, {2, 1}});
  CHECK(!cyc.is_acyclic());
  CHECK_THROWS_AS(cyc.all_paths(), QuiverError);
  CHECK(a2().is_acyclic());
}

TEST_CASE("delete_sources keeps order and arrows", "[quiver]") {
  // chain 3 -> 2 -> 1: deleting sources removes vertex 3 and its arrow
  Quiver chain(3, {{3, 2}, {2, 1}});
  auto d = delete_sources(chain);
  CHECK(d.kept_vertex == std::vector<std::size_t>{1, 2});
  CHECK(d.kept_arrow == std::vector<std::size_t>{1});
  CHECK(d.sub.num_vertices() == 2);
  CHECK(d.sub.arrows() == std::vector<Arrow>{{2, 1}});
  CHECK(d.sub.is_descending());

  // a second round empties it
  auto d2 = delete_sources(d.sub);
  CHECK(d2.sub.num_vertices() == 1);
  auto d3 = delete_sources(d2.sub);
  CHECK(d3.sub.num_vertices() == 0);
}
