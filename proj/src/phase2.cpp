#include "qmatch/phase2.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <stdexcept>

#include "qmatch/disjoint_sets.hpp"

namespace qmatch {

HGraph::HGraph(int n, const std::vector<int>& mate)
    : n_(n), adj_(n, std::vector<std::uint8_t>(n, 0)), deg_(n, 0),
      in_h_(n, 0), free_(n, 0) {
  for (int v = 0; v < n; ++v) free_[v] = mate[v] < 0 ? 1 : 0;
}

int HGraph::edge_count() const {
  int total = 0;
  for (int v = 0; v < n_; ++v) total += deg_[v];
  return total / 2;
}

void HGraph::add_edge(int u, int v) {
  if (adj_[u][v]) return;
  adj_[u][v] = adj_[v][u] = 1;
  ++deg_[u];
  ++deg_[v];
}

void HGraph::remove_edge(int u, int v) {
  if (!adj_[u][v]) return;
  adj_[u][v] = adj_[v][u] = 0;
  --deg_[u];
  --deg_[v];
}

void HGraph::remove_vertex(int v) {
  if (!in_h_[v]) return;
  for (int w = 0; w < n_; ++w)
    if (adj_[v][w]) remove_edge(v, w);
  in_h_[v] = 0;
}

void HGraph::remove_dangling() {
  std::deque<int> pending;
  for (int v = 0; v < n_; ++v)
    if (in_h_[v] && !free_[v] && deg_[v] == 1) pending.push_back(v);
  while (!pending.empty()) {
    int v = pending.front();
    pending.pop_front();
    if (!in_h_[v] || free_[v] || deg_[v] != 1) continue;
    int w = -1;
    for (int x = 0; x < n_; ++x)
      if (adj_[v][x]) { w = x; break; }
    remove_edge(v, w);
    in_h_[v] = 0;
    if (in_h_[w] && !free_[w] && deg_[w] == 1) pending.push_back(w);
  }
}

void remove_dangling(HGraph& h) { h.remove_dangling(); }

HGraph build_H(const Phase1Result& phase1, const Matching& m, const Oracle& oracle) {
  if (phase1.outcome != Phase1Result::Outcome::SapFound)
    throw std::invalid_argument("build_H: phase 1 found no augmenting path");
  int n = phase1.n;
  std::vector<int> mate = m.mate_array(n);
  HGraph h(n, mate);
  for (int v = 0; v < n; ++v)
    if (phase1.in_s(v)) h.add_vertex(v);
  for (int u = 0; u < n; ++u) {
    if (!phase1.in_s(u)) continue;
    for (int v = u + 1; v < n; ++v) {
      if (!phase1.in_s(v)) continue;
      if (mate[u] == v) {
        h.add_edge(u, v);  // matched edges are part of the structure
      } else if (tight_pair(u, v, phase1.y, mate) && !oracle.known_absent(u, v)) {
        h.add_edge(u, v);
      }
    }
  }
  h.remove_dangling();
  return h;
}

namespace {

class Phase2Engine : public ContextViews {
  enum : std::uint8_t { kNone = 0, kOuter = 1, kInner = 2 };
  enum : std::uint8_t { kRoot = 0, kGrown = 1, kFlipped = 2 };

 public:
  Phase2Engine(const Phase1Result& phase1, const Matching& m, Oracle& oracle,
               RunInstrumentation* instr)
      : oracle_(oracle), instr_(instr), n_(phase1.n),
        mate_(m.mate_array(n_)), h_(build_H(phase1, m, oracle)),
        role_(n_, kNone), entry_(n_, kRoot), parent_(n_, -1),
        bridge_(n_, {-1, -1}), cls_(n_), on_sap_(n_, 0) {}

  // ContextViews. In this phase the operative tightness of a pair is its
  // membership in the current H.
  bool tight(int u, int v) const override { return h_.has_edge(u, v); }
  bool matched(int u, int v) const override { return mate_[u] == v; }
  bool found_in_sprime(int v) const override { return role_[v] != kNone; }
  bool free_node(int v) const override { return mate_[v] < 0; }
  bool forms_blossom(int u, int v) const override {
    return role_[v] == kOuter && !cls_.same(u, v);
  }

  Phase2Result run() {
    for (int f = 0; f < n_; ++f) {
      if (mate_[f] >= 0 || on_sap_[f]) continue;
      if (!h_.has_vertex(f)) continue;
      reset_root(f);
      find_ap(f);
    }
    Phase2Result r;
    r.saps = std::move(saps_);
    r.events = std::move(events_);
    return r;
  }

 private:
  bool matrix() const { return oracle_.model() == QueryModel::Matrix; }

  void reset_root(int f) {
    std::fill(role_.begin(), role_.end(), kNone);
    std::fill(entry_.begin(), entry_.end(), kRoot);
    std::fill(parent_.begin(), parent_.end(), -1);
    std::fill(bridge_.begin(), bridge_.end(), std::pair<int, int>{-1, -1});
    cls_ = DisjointSets(n_);
    base_.clear();
    root_ = f;
    role_[f] = kOuter;
  }

  GuessContext context(GuardSite site, int u, int v, int i) const {
    GuessContext ctx;
    ctx.model = oracle_.model();
    ctx.phase = Phase::Two;
    ctx.site = site;
    ctx.u = u;
    ctx.fixed_v = v;
    ctx.index = i;
    ctx.views = this;
    return ctx;
  }

  bool find_ap(int u) {
    return matrix() ? find_ap_matrix(u) : find_ap_list(u);
  }

  bool find_ap_matrix(int u) {
    for (int v = 0; v < n_; ++v) {
      if (!h_.has_vertex(u)) break;  // u pruned mid-iteration
      if (!h_.has_edge(u, v) || mate_[u] == v) continue;
      if (role_[v] == kNone) {
        GuessContext ctx = context(GuardSite::P2MatrixUnvisited, u, v, 0);
        QueryOutcome out = oracle_.query_matrix(u, v, &ctx);
        if (!out.present) {
          h_.remove_edge(u, v);
          h_.remove_dangling();
          continue;
        }
        if (handle_present_unvisited(u, v)) return true;
      } else if (forms_blossom(u, v)) {
        GuessContext ctx = context(GuardSite::P2MatrixBlossom, u, v, 0);
        QueryOutcome out = oracle_.query_matrix(u, v, &ctx);
        if (!out.present) {
          h_.remove_edge(u, v);
          h_.remove_dangling();
          continue;
        }
        if (blossom_procedure(u, v)) return true;
      }
    }
    return false;
  }

  bool find_ap_list(int u) {
    for (int i = 1;; ++i) {
      if (!h_.has_vertex(u)) return false;
      GuessContext ctx = context(GuardSite::P2ListScan, u, -1, i);
      QueryOutcome out = oracle_.query_list(u, i, &ctx);
      if (out.is_null()) return false;  // back to the origin of this call
      int v = *out.neighbor;
      if (!h_.has_edge(u, v) || mate_[u] == v) continue;
      if (role_[v] == kNone) {
        if (handle_present_unvisited(u, v)) return true;
      } else if (forms_blossom(u, v)) {
        if (blossom_procedure(u, v)) return true;
      }
    }
  }

  // Confirmed edge uv with v outside S': sap completion or grow step.
  bool handle_present_unvisited(int u, int v) {
    if (mate_[v] < 0) {
      commit_sap(u, v);
      return true;
    }
    int vp = mate_[v];
    role_[v] = kInner;
    role_[vp] = kOuter;
    entry_[v] = entry_[vp] = kGrown;
    parent_[v] = u;
    parent_[vp] = v;
    SearchEvent ev;
    ev.type = SearchEvent::Type::Grow;
    ev.u = u;
    ev.v = v;
    ev.partner = vp;
    events_.push_back(ev);
    if (find_ap(vp)) return true;
    // v and v' stay in H: this root's search is done with them (the visited
    // marks block re-entry), but another root may still need them. H here is
    // not a leveled structure, so a cross-root deletion would be unsound;
    // repeat examinations are served from the query record either way.
    return false;
  }

  // Climb the contracted forest from outer vertex x, collecting the outer
  // vertices whose classes lie on the path to the root.
  std::vector<int> climb(int x) const {
    std::vector<int> path;
    int c = cls_.find(x);
    while (true) {
      path.push_back(c);
      int b = base_.count(c) ? base_.at(c) : c;
      if (b == root_) break;
      int y = mate_[b];          // inner partner of the class base
      c = cls_.find(parent_[y]);
    }
    return path;
  }

  // Confirmed edge uv with both endpoints outer in different classes:
  // merge every class on the fundamental cycle and restart the search
  // from each vertex that just switched from inner to outer.
  bool blossom_procedure(int u, int v) {
    std::vector<int> pu = climb(u);
    std::vector<int> pv = climb(v);
    std::vector<std::uint8_t> on_pu(n_, 0);
    for (int c : pu) on_pu[c] = 1;
    int lca = -1;
    for (int c : pv) {
      if (on_pu[c]) { lca = c; break; }
    }
    int lca_base = base_.count(lca) ? base_.at(lca) : lca;

    // inner vertices passed while climbing to the lca flip to outer
    std::vector<int> flipped;
    auto absorb = [&](int start, int mate_side, int other_side) {
      int c = cls_.find(start);
      while (c != lca) {
        int b = base_.count(c) ? base_.at(c) : c;
        int y = mate_[b];  // inner below this class
        int up = cls_.find(parent_[y]);
        cls_.unite(lca, c);
        cls_.unite(lca, y);
        if (role_[y] == kInner) {
          role_[y] = kOuter;
          entry_[y] = kFlipped;
          bridge_[y] = {mate_side, other_side};
          flipped.push_back(y);
        }
        c = up;
      }
    };
    absorb(u, u, v);
    absorb(v, v, u);
    cls_.unite(lca, u);
    cls_.unite(lca, v);
    int rep = cls_.find(u);
    base_[rep] = lca_base;

    SearchEvent ev;
    ev.type = SearchEvent::Type::Blossom;
    ev.u = u;
    ev.v = v;
    ev.cycle = flipped;
    ev.cycle_edges = 2 * static_cast<int>(flipped.size()) + 1;
    ev.cycle_matched = static_cast<int>(flipped.size());
    events_.push_back(ev);

    std::sort(flipped.begin(), flipped.end());
    for (int x : flipped) {
      if (!h_.has_vertex(x)) continue;
      if (find_ap(x)) return true;
    }
    return false;
  }

  // Even-length alternating path from the root to outer x, using only
  // structure edges whose presence was confirmed when they were taken.
  std::vector<int> even_path(int x) const {
    if (x == root_) return {x};
    if (entry_[x] == kGrown) {
      int y = mate_[x];
      std::vector<int> p = even_path(parent_[y]);
      p.push_back(y);
      p.push_back(x);
      return p;
    }
    // flipped inner: route over the bridge and walk back down to x
    auto [p_side, q_side] = bridge_[x];
    std::vector<int> path = even_path(q_side);
    std::vector<int> down = even_path(p_side);  // passes through x
    size_t at = 0;
    while (at < down.size() && down[at] != x) ++at;
    for (size_t k = down.size(); k-- > at;) path.push_back(down[k]);
    return path;
  }

  void commit_sap(int u, int v) {
    AlternatingPath p;
    p.vertices = even_path(u);
    p.vertices.push_back(v);
    validate_sap(p);
    SearchEvent ev;
    ev.type = SearchEvent::Type::Sap;
    ev.u = u;
    ev.v = v;
    events_.push_back(ev);
    for (int x : p.vertices) on_sap_[x] = 1;
    if (instr_) instr_->resolve_sap_vertices(p.vertices);
    for (int x : p.vertices) h_.remove_vertex(x);
    h_.remove_dangling();
    saps_.paths.push_back(std::move(p));
  }

  // Alternation, free endpoints, and confirmed presence of every
  // unmatched edge. A failure here is a search bug, not an input error.
  void validate_sap(const AlternatingPath& p) const {
    const auto& vs = p.vertices;
    if (vs.size() < 2 || p.length() % 2 == 0)
      throw std::logic_error("phase2: extracted path has even length");
    if (mate_[vs.front()] >= 0 || mate_[vs.back()] >= 0)
      throw std::logic_error("phase2: extracted path endpoint is matched");
    std::vector<std::uint8_t> seen(n_, 0);
    for (int x : vs) {
      if (seen[x]) throw std::logic_error("phase2: extracted path revisits a vertex");
      seen[x] = 1;
    }
    bool expect_matched = false;
    for (size_t k = 0; k + 1 < vs.size(); ++k) {
      bool is_matched = mate_[vs[k]] == vs[k + 1];
      if (is_matched != expect_matched)
        throw std::logic_error("phase2: extracted path does not alternate");
      if (!is_matched && !oracle_.known_present(vs[k], vs[k + 1]))
        throw std::logic_error("phase2: sap edge not confirmed present");
      expect_matched = !expect_matched;
    }
  }

  Oracle& oracle_;
  RunInstrumentation* instr_;
  int n_;
  std::vector<int> mate_;
  HGraph h_;
  int root_ = -1;
  std::vector<std::uint8_t> role_;
  std::vector<std::uint8_t> entry_;
  std::vector<int> parent_;  // inner v: outer endpoint of the grow edge;
                             // grown outer v': its inner partner
  std::vector<std::pair<int, int>> bridge_;
  DisjointSets cls_;
  std::unordered_map<int, int> base_;  // class rep -> base vertex
  std::vector<std::uint8_t> on_sap_;
  SapSet saps_;
  std::vector<SearchEvent> events_;
};

}  // namespace

Phase2Result run_phase2(const Phase1Result& phase1, const Matching& m, Oracle& oracle,
                        RunInstrumentation* instr, int phase_index) {
  if (phase1.outcome != Phase1Result::Outcome::SapFound)
    throw std::invalid_argument("run_phase2: phase 1 found no augmenting path");
  if (instr) instr->begin_call(Phase::Two, phase_index);
  Phase2Engine engine(phase1, m, oracle, instr);
  Phase2Result r = engine.run();
  if (r.saps.paths.empty())
    throw std::logic_error("phase2: phase 1 certified a sap but none was extracted");
  return r;
}

}  // namespace qmatch
