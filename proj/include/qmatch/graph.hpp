#pragma once

#include <compare>
#include <iosfwd>
#include <set>
#include <vector>

namespace qmatch {

/// Undirected edge, stored normalized so that u < v.
struct Edge {
  int u;
  int v;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}
  auto operator<=>(const Edge&) const = default;
};

using EdgeSet = std::set<Edge>;

/// Edges appearing in exactly one of the two sets.
EdgeSet symmetric_difference(const EdgeSet& a, const EdgeSet& b);

/// Simple undirected graph over dense vertex labels 0..n-1.
/// No self-loops, no duplicate edges.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int vertex_count);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  /// Returns false if the edge was already present. Throws on self-loops
  /// or out-of-range endpoints.
  bool add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  const EdgeSet& edges() const { return edges_; }

  /// Sorted neighbor lists.
  std::vector<std::vector<int>> adjacency() const;

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  EdgeSet edges_;
};

/// A set of pairwise non-adjacent edges.
class Matching {
 public:
  Matching() = default;

  /// Throws if the edge shares a vertex with an existing matched edge.
  void add_edge(int u, int v);
  bool contains(int u, int v) const;
  bool covers(int v) const;
  int size() const { return static_cast<int>(edges_.size()); }
  const EdgeSet& edges() const { return edges_; }

  /// mate[v] = matched partner of v, or -1 if v is free.
  std::vector<int> mate_array(int n) const;

  static Matching from_edges(const EdgeSet& edges);

 private:
  EdgeSet edges_;
};

enum class VertexRole { Unreached, Free, Inner, Outer };

/// Stored as a vertex sequence; edge parity is recomputed against a
/// Matching at validation time.
struct AlternatingPath {
  std::vector<int> vertices;

  int length() const { return static_cast<int>(vertices.size()) - 1; }
  std::vector<Edge> edges() const;
};

/// Vertex-disjoint augmenting paths produced by the second phase.
struct SapSet {
  std::vector<AlternatingPath> paths;

  int size() const { return static_cast<int>(paths.size()); }
  bool vertex_disjoint() const;
};

/// True iff every matched edge is in g and no two share a vertex.
bool validate_matching(const Graph& g, const Matching& m);

/// True iff p's endpoints are free w.r.t. m, its edges all lie in g, and
/// they alternate starting and ending unmatched (odd length).
bool is_augmenting_path(const Graph& g, const Matching& m, const AlternatingPath& p);

/// M <- M xor (union of sap edges). Throws if the paths are not
/// vertex-disjoint or fail the alternation/free-endpoint checks.
Matching augment(const Matching& m, const SapSet& saps);

/// Edge-list text format: first line "n m", then m lines "u v".
Graph read_edge_list(std::istream& in);
void write_edge_list(const Graph& g, std::ostream& out);

}  // namespace qmatch
