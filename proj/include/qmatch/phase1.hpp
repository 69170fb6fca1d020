#pragma once

#include <string>
#include <vector>

#include "qmatch/disjoint_sets.hpp"
#include "qmatch/graph.hpp"
#include "qmatch/guessing.hpp"
#include "qmatch/oracle.hpp"

namespace qmatch {

/// Dual variables, one per vertex, all zero at phase start.
using DualVector = std::vector<int>;

/// w(u,v) = 2 on matched edges, 0 otherwise.
inline int pair_weight(const std::vector<int>& mate, int u, int v) {
  return mate[u] == v ? 2 : 0;
}

/// y(u) + y(v) == w(u,v).
inline bool tight_pair(int u, int v, const DualVector& y, const std::vector<int>& mate) {
  return y[u] + y[v] == pair_weight(mate, u, v);
}

/// One adjustment round: -1 on every outer (incl. free) vertex of S,
/// +1 on every inner vertex of S.
void apply_dual_adjustment(const std::vector<VertexRole>& role, DualVector& y);

struct SearchEvent {
  enum class Type { Grow, Blossom, Sap, DualAdjust };
  Type type;
  int u = -1;
  int v = -1;
  int partner = -1;             // grow: v' with vv' matched
  std::vector<int> cycle;       // blossom: base vertices of the merged classes
  int cycle_edges = 0;          // blossom: edges on the contracted cycle
  int cycle_matched = 0;        // blossom: matched edges among them
  int round = 0;                // dual-adjust rounds so far
};

std::string search_events_to_json(const std::vector<SearchEvent>& events);

struct Phase1Result {
  enum class Outcome { SapFound, NoAugmentingPath };

  Outcome outcome = Outcome::NoAugmentingPath;
  int n = 0;
  std::vector<VertexRole> role;
  std::vector<int> parent;       // search-forest parent, -1 at roots
  std::vector<int> root;         // search-tree root per vertex in S
  std::vector<int> entry_round;  // adjustment round at which a vertex joined S
  DualVector y;
  std::vector<int> blossom_rep;  // finalized B_v
  std::vector<int> s_vertices;   // discovery order
  int rounds = 0;                // dual adjustments performed
  int sap_u = -1;
  int sap_v = -1;
  std::vector<SearchEvent> events;

  bool in_s(int v) const { return role[v] != VertexRole::Unreached; }
  bool outer(int v) const {
    return role[v] == VertexRole::Free || role[v] == VertexRole::Outer;
  }
};

/// Simplified search based on Edmonds' algorithm: drives the oracle under
/// the guessing scheme until a sap is detected or the structure is
/// exhausted. Queries happen only at the guard points.
Phase1Result run_phase1(Oracle& oracle, const Matching& m,
                        RunInstrumentation* instr = nullptr, int phase_index = 1);

}  // namespace qmatch
