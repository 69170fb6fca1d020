#include "qmatch/reference.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

namespace qmatch {

namespace {

// dp over vertex subsets; dp[mask] = optimum on the induced subgraph.
ReferenceAnswer dp_max_matching(const Graph& g) {
  int n = g.vertex_count();
  auto adj = g.adjacency();
  std::vector<std::int8_t> dp(std::size_t(1) << n, 0);
  for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask) {
    int v = std::countr_zero(mask);
    std::int8_t bestv = dp[mask & (mask - 1)];
    for (int w : adj[v])
      if (mask >> w & 1)
        bestv = std::max<std::int8_t>(bestv, std::int8_t(1 + dp[mask & ~(1u << v) & ~(1u << w)]));
    dp[mask] = bestv;
  }
  ReferenceAnswer ans;
  std::uint32_t mask = (std::uint32_t(1) << n) - 1;
  ans.optimum_size = dp[mask];
  while (mask) {
    int v = std::countr_zero(mask);
    if (dp[mask] == dp[mask & (mask - 1)]) {
      mask &= mask - 1;
      continue;
    }
    for (int w : adj[v]) {
      if ((mask >> w & 1) && dp[mask] == 1 + dp[mask & ~(1u << v) & ~(1u << w)]) {
        ans.witness.add_edge(v, w);
        mask &= ~(1u << v) & ~(1u << w);
        break;
      }
    }
  }
  return ans;
}

void branch_edges(const std::vector<Edge>& edges, size_t idx, std::uint64_t used,
                  int cur, int& best, EdgeSet& cur_set, EdgeSet& best_set) {
  if (cur + static_cast<int>(edges.size() - idx) <= best) return;  // bound
  if (idx == edges.size()) {
    if (cur > best) {
      best = cur;
      best_set = cur_set;
    }
    return;
  }
  const Edge& e = edges[idx];
  if (!(used >> e.u & 1) && !(used >> e.v & 1)) {
    cur_set.insert(e);
    branch_edges(edges, idx + 1, used | (1ULL << e.u) | (1ULL << e.v), cur + 1,
                 best, cur_set, best_set);
    cur_set.erase(e);
  }
  branch_edges(edges, idx + 1, used, cur, best, cur_set, best_set);
}

}  // namespace

ReferenceAnswer brute_force_max_matching(const Graph& g) {
  if (g.vertex_count() <= 20) return dp_max_matching(g);
  if (g.edge_count() <= 32) {
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    int best = -1;
    EdgeSet cur_set, best_set;
    branch_edges(edges, 0, 0, 0, best, cur_set, best_set);
    ReferenceAnswer ans;
    ans.optimum_size = best;
    ans.witness = Matching::from_edges(best_set);
    return ans;
  }
  throw std::invalid_argument("brute_force_max_matching: instance above size guard");
}

namespace {

// Exhaustive enumeration of simple alternating paths between free nodes,
// branch-and-bound on the best length found so far.
struct SapEnumerator {
  const std::vector<std::vector<int>>& adj;
  const std::vector<int>& mate;
  std::uint32_t forbidden = 0;
  int best = 1 << 20;

  void dfs(int v, std::uint32_t mask, int len) {
    if (len + 1 >= best) return;
    bool want_matched = len % 2 == 1;
    for (int w : adj[v]) {
      bool is_matched = mate[v] == w;
      if (is_matched != want_matched) continue;
      if (mask >> w & 1) continue;
      if (forbidden >> w & 1) continue;
      if (!want_matched && mate[w] < 0) {
        best = std::min(best, len + 1);
        continue;
      }
      dfs(w, mask | (1u << w), len + 1);
    }
  }

  std::optional<int> shortest(int n) {
    for (int f = 0; f < n; ++f) {
      if (mate[f] >= 0 || (forbidden >> f & 1)) continue;
      dfs(f, 1u << f, 0);
    }
    if (best >= (1 << 20)) return std::nullopt;
    return best;
  }
};

}  // namespace

std::optional<int> shortest_aug_path_length(const Graph& g, const Matching& m) {
  if (g.vertex_count() > 16)
    throw std::invalid_argument("shortest_aug_path_length: instance above size guard");
  auto adj = g.adjacency();
  auto mate = m.mate_array(g.vertex_count());
  SapEnumerator e{adj, mate};
  return e.shortest(g.vertex_count());
}

bool check_sap_set(const Graph& g, const Matching& m, const SapSet& p) {
  if (g.vertex_count() > 16)
    throw std::invalid_argument("check_sap_set: instance above size guard");
  std::optional<int> shortest = shortest_aug_path_length(g, m);
  if (!shortest) return p.paths.empty();
  if (p.paths.empty()) return false;
  if (!p.vertex_disjoint()) return false;
  std::uint32_t covered = 0;
  for (const AlternatingPath& path : p.paths) {
    if (!is_augmenting_path(g, m, path)) return false;
    if (path.length() != *shortest) return false;
    for (int v : path.vertices) covered |= 1u << v;
  }
  auto adj = g.adjacency();
  auto mate = m.mate_array(g.vertex_count());
  SapEnumerator e{adj, mate, covered};
  std::optional<int> remaining = e.shortest(g.vertex_count());
  return !(remaining && *remaining == *shortest);
}

}  // namespace qmatch
