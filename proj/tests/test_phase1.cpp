#include <random>

#include "doctest.h"
#include "qmatch/phase1.hpp"

using namespace qmatch;

namespace {

int count_events(const std::vector<SearchEvent>& events, SearchEvent::Type t) {
  int k = 0;
  for (const SearchEvent& e : events)
    if (e.type == t) ++k;
  return k;
}

}  // namespace

TEST_CASE("tight pair predicate") {
  std::vector<int> mate = {1, 0, -1};
  DualVector y = {0, 0, 0};
  CHECK(tight_pair(0, 2, y, mate));       // w=0, y sums to 0
  CHECK_FALSE(tight_pair(0, 1, y, mate)); // matched, w=2
  y = {1, 1, 0};
  CHECK(tight_pair(0, 1, y, mate));
  y = {1, 0, 0};
  CHECK_FALSE(tight_pair(0, 2, y, mate));
}

TEST_CASE("dual adjustment rule") {
  std::vector<VertexRole> role = {VertexRole::Free, VertexRole::Inner,
                                  VertexRole::Outer, VertexRole::Unreached};
  DualVector y = {0, 0, 0, 0};
  apply_dual_adjustment(role, y);
  CHECK(y == DualVector{-1, 1, -1, 0});
}

TEST_CASE("single free edge: sap found with one incorrect guess") {
  Graph g(2);
  g.add_edge(0, 1);
  for (QueryModel model : {QueryModel::Matrix, QueryModel::List}) {
    CAPTURE(to_string(model));
    Oracle o = build_oracle(g, model, 1);
    RunInstrumentation instr(model);
    o.set_hook(&instr);
    Phase1Result r = run_phase1(o, Matching{}, &instr, 1);
    CHECK(r.outcome == Phase1Result::Outcome::SapFound);
    CHECK(instr.incorrect_total() == 1);
    CHECK(count_events(r.events, SearchEvent::Type::Sap) == 1);
  }
}

TEST_CASE("edgeless graph: exhausted with zero incorrect guesses") {
  int n = 5;
  Graph g(n);
  Oracle o = build_oracle(g, QueryModel::Matrix, 1);
  RunInstrumentation instr(QueryModel::Matrix);
  o.set_hook(&instr);
  Phase1Result r = run_phase1(o, Matching{}, &instr, 1);
  CHECK(r.outcome == Phase1Result::Outcome::NoAugmentingPath);
  CHECK(instr.incorrect_total() == 0);
  CHECK(o.distinct_queries() == n * (n - 1) / 2);
}

TEST_CASE("triangle with one matched edge: grow then blossom, two incorrect guesses") {
  Graph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  Matching m;
  m.add_edge(1, 2);
  Oracle o = build_oracle(g, QueryModel::Matrix, 1);
  RunInstrumentation instr(QueryModel::Matrix);
  o.set_hook(&instr);
  Phase1Result r = run_phase1(o, m, &instr, 1);
  CHECK(r.outcome == Phase1Result::Outcome::NoAugmentingPath);
  CHECK(instr.incorrect_total() == 2);
  REQUIRE(count_events(r.events, SearchEvent::Type::Grow) == 1);
  REQUIRE(count_events(r.events, SearchEvent::Type::Blossom) == 1);
  for (const SearchEvent& e : r.events) {
    if (e.type == SearchEvent::Type::Grow) {
      CHECK(e.v == 1);
      CHECK(e.partner == 2);
    }
    if (e.type == SearchEvent::Type::Blossom) {
      CHECK(e.cycle.size() == 3);
      CHECK(e.cycle_edges == 3);
      CHECK(e.cycle_matched == 1);
    }
  }
  // all three vertices end in one blossom class
  CHECK(r.blossom_rep[0] == r.blossom_rep[1]);
  CHECK(r.blossom_rep[1] == r.blossom_rep[2]);
}

TEST_CASE("perfect matching: exhausted with no queries") {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  Matching m;
  m.add_edge(0, 1);
  m.add_edge(2, 3);
  Oracle o = build_oracle(g, QueryModel::Matrix, 1);
  Phase1Result r = run_phase1(o, m);
  CHECK(r.outcome == Phase1Result::Outcome::NoAugmentingPath);
  CHECK(o.distinct_queries() == 0);
}

TEST_CASE("every queried guard site belongs to the first phase") {
  Graph g(6);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  g.add_edge(4, 5);
  g.add_edge(5, 0);
  Matching m;
  m.add_edge(1, 2);
  m.add_edge(3, 4);
  for (QueryModel model : {QueryModel::Matrix, QueryModel::List}) {
    Oracle o = build_oracle(g, model, 2);
    RunInstrumentation instr(model);
    o.set_hook(&instr);
    instr.begin_call(Phase::One, 1);
    run_phase1(o, m, &instr, 1);
    for (const GuessEvent& e : instr.events()) {
      CHECK(e.phase == Phase::One);
      bool p1_site = e.site == GuardSite::P1MatrixGrow ||
                     e.site == GuardSite::P1MatrixOuter ||
                     e.site == GuardSite::P1ListScan;
      CHECK(p1_site);
    }
  }
}

TEST_CASE("no blossom events on random bipartite instances") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    int half = 2 + static_cast<int>(rng() % 4);
    int n = 2 * half;
    Graph g(n);
    for (int u = 0; u < half; ++u)
      for (int v = half; v < n; ++v)
        if (rng() % 2) g.add_edge(u, v);
    for (QueryModel model : {QueryModel::Matrix, QueryModel::List}) {
      Oracle o = build_oracle(g, model, rng());
      Matching m;  // start empty; blossoms cannot appear at any later phase either
      Phase1Result r = run_phase1(o, m);
      CHECK(count_events(r.events, SearchEvent::Type::Blossom) == 0);
    }
  }
}

TEST_CASE("recorded blossoms have 2k+1 edges with k matched") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 80; ++trial) {
    int n = 4 + static_cast<int>(rng() % 9);
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 3 == 0) g.add_edge(u, v);
    // grab a greedy matching so searches start mid-run
    Matching m;
    for (const Edge& e : g.edges())
      if (!m.covers(e.u) && !m.covers(e.v) && rng() % 2) m.add_edge(e.u, e.v);
    for (QueryModel model : {QueryModel::Matrix, QueryModel::List}) {
      Oracle o = build_oracle(g, model, rng());
      Phase1Result r = run_phase1(o, m);
      for (const SearchEvent& e : r.events) {
        if (e.type != SearchEvent::Type::Blossom) continue;
        CHECK(e.cycle_edges % 2 == 1);
        CHECK(e.cycle_matched == (e.cycle_edges - 1) / 2);
        CHECK(e.cycle_edges >= 3);
      }
    }
  }
}

TEST_CASE("list scans advance by one position after a correct guess") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 4 + static_cast<int>(rng() % 8);
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 2) g.add_edge(u, v);
    Oracle o = build_oracle(g, QueryModel::List, rng());
    RunInstrumentation instr(QueryModel::List);
    o.set_hook(&instr);
    instr.begin_call(Phase::One, 1);
    run_phase1(o, Matching{}, &instr, 1);
    const auto& events = instr.events();
    for (size_t k = 0; k + 1 < events.size(); ++k) {
      const GuessEvent& e = events[k];
      const GuessEvent& next = events[k + 1];
      if (e.cls != GuessClass::Correct || e.outcome_hit == false) continue;
      // a correct guess leaves the scan on u; the next fresh query from u
      // sits at the next uncached position
      if (next.u == e.u) CHECK(next.list_index == e.list_index + 1);
    }
  }
}
