#include "doctest.h"
#include "qmatch/phase2.hpp"
#include "qmatch/reference.hpp"

using namespace qmatch;

namespace {

Graph path4() {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  return g;
}

}  // namespace

TEST_CASE("dangling pruning") {
  SUBCASE("chain with one free endpoint is fully deleted") {
    // f(0) - a(1) - b(2), only 0 free
    std::vector<int> mate = {-1, 2, 1};
    HGraph h(3, mate);
    for (int v = 0; v < 3; ++v) h.add_vertex(v);
    h.add_edge(0, 1);
    h.add_edge(1, 2);
    remove_dangling(h);
    CHECK(h.edge_count() == 0);
  }
  SUBCASE("single free-free edge survives") {
    std::vector<int> mate = {-1, -1};
    HGraph h(2, mate);
    h.add_vertex(0);
    h.add_vertex(1);
    h.add_edge(0, 1);
    remove_dangling(h);
    CHECK(h.has_edge(0, 1));
  }
  SUBCASE("triangle of non-free vertices is untouched") {
    std::vector<int> mate = {1, 0, 3, 2, -1, -1};
    HGraph h(6, mate);
    for (int v = 0; v < 4; ++v) h.add_vertex(v);
    h.add_edge(0, 1);
    h.add_edge(1, 2);
    h.add_edge(0, 2);
    remove_dangling(h);
    CHECK(h.edge_count() == 3);
  }
}

TEST_CASE("candidate subgraph construction") {
  SUBCASE("single-edge instance") {
    Graph g(2);
    g.add_edge(0, 1);
    Oracle o = build_oracle(g, QueryModel::Matrix, 1);
    Phase1Result p1 = run_phase1(o, Matching{});
    REQUIRE(p1.outcome == Phase1Result::Outcome::SapFound);
    HGraph h = build_H(p1, Matching{}, o);
    CHECK(h.has_edge(0, 1));
    CHECK(h.edge_count() == 1);
  }
  SUBCASE("path with matched middle keeps the whole path") {
    Graph g = path4();
    Matching m;
    m.add_edge(1, 2);
    Oracle o = build_oracle(g, QueryModel::Matrix, 1);
    Phase1Result p1 = run_phase1(o, m);
    REQUIRE(p1.outcome == Phase1Result::Outcome::SapFound);
    HGraph h = build_H(p1, m, o);
    CHECK(h.has_edge(0, 1));
    CHECK(h.has_edge(1, 2));
    CHECK(h.has_edge(2, 3));
  }
  SUBCASE("rejects a no-augmenting-path input") {
    Graph g(2);  // edgeless
    Oracle o = build_oracle(g, QueryModel::Matrix, 1);
    Phase1Result p1 = run_phase1(o, Matching{});
    REQUIRE(p1.outcome == Phase1Result::Outcome::NoAugmentingPath);
    CHECK_THROWS(build_H(p1, Matching{}, o));
    Matching empty;
    CHECK_THROWS(run_phase2(p1, empty, o));
  }
}

TEST_CASE("sap extraction on elementary instances") {
  for (QueryModel model : {QueryModel::Matrix, QueryModel::List}) {
    CAPTURE(to_string(model));
    SUBCASE("single edge gives one sap") {
      Graph g(2);
      g.add_edge(0, 1);
      Oracle o = build_oracle(g, model, 1);
      Phase1Result p1 = run_phase1(o, Matching{});
      Matching m;
      Phase2Result p2 = run_phase2(p1, m, o);
      REQUIRE(p2.saps.size() == 1);
      CHECK(p2.saps.paths[0].vertices == std::vector<int>{0, 1});
    }
    SUBCASE("two disjoint edges give two saps") {
      Graph g(4);
      g.add_edge(0, 1);
      g.add_edge(2, 3);
      Oracle o = build_oracle(g, model, 1);
      Phase1Result p1 = run_phase1(o, Matching{});
      Matching m;
      Phase2Result p2 = run_phase2(p1, m, o);
      CHECK(p2.saps.size() == 2);
      CHECK(p2.saps.vertex_disjoint());
    }
    SUBCASE("length-3 path through a matched edge") {
      Graph g = path4();
      Matching m;
      m.add_edge(1, 2);
      Oracle o = build_oracle(g, model, 1);
      Phase1Result p1 = run_phase1(o, m);
      Phase2Result p2 = run_phase2(p1, m, o);
      REQUIRE(p2.saps.size() == 1);
      CHECK(p2.saps.paths[0].vertices == std::vector<int>{0, 1, 2, 3});
      CHECK(is_augmenting_path(g, m, p2.saps.paths[0]));
      CHECK(augment(m, p2.saps).size() == 2);
    }
  }
}

TEST_CASE("sap threading a blossom on C5 with a pendant") {
  // cycle 0-1-2-3-4 with matched {12, 34} and a pendant free vertex 5 on 1;
  // the search from 0 closes the odd cycle and must leave it through 1.
  Graph g(6);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  g.add_edge(0, 4);
  g.add_edge(1, 5);
  Matching m;
  m.add_edge(1, 2);
  m.add_edge(3, 4);
  for (QueryModel model : {QueryModel::Matrix, QueryModel::List}) {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
      CAPTURE(to_string(model));
      CAPTURE(seed);
      Oracle o = build_oracle(g, model, seed);
      Phase1Result p1 = run_phase1(o, m);
      REQUIRE(p1.outcome == Phase1Result::Outcome::SapFound);
      Phase2Result p2 = run_phase2(p1, m, o);
      REQUIRE(p2.saps.size() == 1);
      const AlternatingPath& sap = p2.saps.paths[0];
      CHECK(is_augmenting_path(g, m, sap));
      CHECK(sap.length() == 5);  // forced: the only augmenting path uses the whole cycle
      Matching bigger = augment(m, p2.saps);
      CHECK(bigger.size() == brute_force_max_matching(g).optimum_size);
    }
  }
}

TEST_CASE("extracted saps use only edges confirmed present") {
  Graph g(8);
  // two touching 4-paths plus chords
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(4, 5);
  g.add_edge(5, 6);
  g.add_edge(6, 7);
  g.add_edge(1, 6);
  Matching m;
  m.add_edge(1, 2);
  m.add_edge(5, 6);
  for (QueryModel model : {QueryModel::Matrix, QueryModel::List}) {
    Oracle o = build_oracle(g, model, 9);
    Phase1Result p1 = run_phase1(o, m);
    REQUIRE(p1.outcome == Phase1Result::Outcome::SapFound);
    Phase2Result p2 = run_phase2(p1, m, o);
    CHECK(p2.saps.vertex_disjoint());
    for (const AlternatingPath& p : p2.saps.paths) {
      CHECK(is_augmenting_path(g, m, p));
      const auto& vs = p.vertices;
      for (size_t k = 0; k + 1 < vs.size(); ++k)
        if (!m.contains(vs[k], vs[k + 1])) CHECK(o.known_present(vs[k], vs[k + 1]));
    }
  }
}
