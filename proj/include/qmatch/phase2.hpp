#pragma once

#include <vector>

#include "qmatch/graph.hpp"
#include "qmatch/guessing.hpp"
#include "qmatch/oracle.hpp"
#include "qmatch/phase1.hpp"

namespace qmatch {

/// Mutable candidate subgraph over V(S): an edge for every tight pair not
/// already known absent, plus the matched edges inside S. Kept free of
/// dangling edges after every mutation.
class HGraph {
 public:
  HGraph() = default;
  HGraph(int n, const std::vector<int>& mate);

  int vertex_count() const { return n_; }
  bool has_vertex(int v) const { return in_h_[v] != 0; }
  bool has_edge(int u, int v) const { return adj_[u][v] != 0; }
  int degree(int v) const { return deg_[v]; }
  bool is_free(int v) const { return free_[v] != 0; }
  int edge_count() const;

  void add_vertex(int v) { in_h_[v] = 1; }
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  void remove_vertex(int v);

  /// Recursively deletes every edge incident to a non-free degree-1
  /// vertex, plus that vertex. Free-vertex pendant edges survive.
  void remove_dangling();

 private:
  int n_ = 0;
  std::vector<std::vector<std::uint8_t>> adj_;
  std::vector<int> deg_;
  std::vector<std::uint8_t> in_h_;
  std::vector<std::uint8_t> free_;
};

/// Free-function form of the pruning rule.
void remove_dangling(HGraph& h);

/// Builds H from a sap-found phase-1 result. Throws on a
/// no-augmenting-path result.
HGraph build_H(const Phase1Result& phase1, const Matching& m, const Oracle& oracle);

struct Phase2Result {
  SapSet saps;
  std::vector<SearchEvent> events;
};

/// Path-preserving depth-first search: extracts a maximal set of
/// vertex-disjoint saps from the tight structure. Throws if phase 1
/// certified a sap but none could be extracted.
Phase2Result run_phase2(const Phase1Result& phase1, const Matching& m, Oracle& oracle,
                        RunInstrumentation* instr = nullptr, int phase_index = 1);

}  // namespace qmatch
