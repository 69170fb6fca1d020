#include "qmatch/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qmatch {

EdgeSet symmetric_difference(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::inserter(out, out.end()));
  return out;
}

Graph::Graph(int vertex_count) : n_(vertex_count) {
  if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("vertex label " + std::to_string(v));
}

bool Graph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("self-loop");
  return edges_.emplace(u, v).second;
}

bool Graph::has_edge(int u, int v) const {
  if (u == v) return false;
  if (u < 0 || u >= n_ || v < 0 || v >= n_) return false;
  return edges_.count(Edge(u, v)) > 0;
}

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(n_);
  for (const Edge& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

void Matching::add_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("self-loop in matching");
  if (covers(u) || covers(v)) throw std::invalid_argument("matching edges share a vertex");
  edges_.emplace(u, v);
}

bool Matching::contains(int u, int v) const {
  if (u == v) return false;
  return edges_.count(Edge(u, v)) > 0;
}

bool Matching::covers(int v) const {
  for (const Edge& e : edges_)
    if (e.u == v || e.v == v) return true;
  return false;
}

std::vector<int> Matching::mate_array(int n) const {
  std::vector<int> mate(n, -1);
  for (const Edge& e : edges_) {
    if (e.u >= n || e.v >= n) throw std::out_of_range("matched edge outside vertex range");
    mate[e.u] = e.v;
    mate[e.v] = e.u;
  }
  return mate;
}

Matching Matching::from_edges(const EdgeSet& edges) {
  Matching m;
  for (const Edge& e : edges) m.add_edge(e.u, e.v);
  return m;
}

std::vector<Edge> AlternatingPath::edges() const {
  std::vector<Edge> out;
  for (size_t i = 0; i + 1 < vertices.size(); ++i) {
    if (vertices[i] == vertices[i + 1])
      throw std::invalid_argument("consecutive path vertices equal");
    out.emplace_back(vertices[i], vertices[i + 1]);
  }
  return out;
}

bool SapSet::vertex_disjoint() const {
  std::set<int> seen;
  for (const AlternatingPath& p : paths)
    for (int v : p.vertices)
      if (!seen.insert(v).second) return false;
  return true;
}

bool validate_matching(const Graph& g, const Matching& m) {
  std::set<int> seen;
  for (const Edge& e : m.edges()) {
    if (!g.has_edge(e.u, e.v)) return false;
    if (!seen.insert(e.u).second) return false;
    if (!seen.insert(e.v).second) return false;
  }
  return true;
}

bool is_augmenting_path(const Graph& g, const Matching& m, const AlternatingPath& p) {
  if (p.vertices.size() < 2 || p.length() % 2 == 0) return false;
  std::set<int> seen(p.vertices.begin(), p.vertices.end());
  if (seen.size() != p.vertices.size()) return false;
  if (m.covers(p.vertices.front()) || m.covers(p.vertices.back())) return false;
  bool expect_matched = false;  // starts unmatched
  for (size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    int u = p.vertices[i], v = p.vertices[i + 1];
    if (!g.has_edge(u, v)) return false;
    if (m.contains(u, v) != expect_matched) return false;
    expect_matched = !expect_matched;
  }
  // odd length plus alternation from an unmatched edge already force the
  // last edge unmatched
  return true;
}

Matching augment(const Matching& m, const SapSet& saps) {
  if (!saps.vertex_disjoint())
    throw std::invalid_argument("augment: paths are not vertex-disjoint");
  EdgeSet path_edges;
  for (const AlternatingPath& p : saps.paths) {
    if (p.vertices.size() < 2 || p.length() % 2 == 0)
      throw std::invalid_argument("augment: path has even length");
    if (m.covers(p.vertices.front()) || m.covers(p.vertices.back()))
      throw std::invalid_argument("augment: path endpoint is not free");
    bool expect_matched = false;
    for (size_t i = 0; i + 1 < p.vertices.size(); ++i) {
      int u = p.vertices[i], v = p.vertices[i + 1];
      if (m.contains(u, v) != expect_matched)
        throw std::invalid_argument("augment: path does not alternate");
      expect_matched = !expect_matched;
      path_edges.emplace(u, v);
    }
  }
  return Matching::from_edges(symmetric_difference(m.edges(), path_edges));
}

Graph read_edge_list(std::istream& in) {
  int n = 0, m = 0;
  if (!(in >> n >> m)) throw std::runtime_error("edge list: bad header");
  Graph g(n);
  for (int i = 0; i < m; ++i) {
    int u = 0, v = 0;
    if (!(in >> u >> v)) throw std::runtime_error("edge list: truncated");
    g.add_edge(u, v);
  }
  return g;
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << g.vertex_count() << " " << g.edge_count() << "\n";
  for (const Edge& e : g.edges()) out << e.u << " " << e.v << "\n";
}

}  // namespace qmatch
