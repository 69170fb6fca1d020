#include "qmatch/phase1.hpp"

#include <deque>
#include <stdexcept>

#include "json.hpp"

namespace qmatch {

void apply_dual_adjustment(const std::vector<VertexRole>& role, DualVector& y) {
  for (size_t v = 0; v < role.size(); ++v) {
    if (role[v] == VertexRole::Free || role[v] == VertexRole::Outer) --y[v];
    else if (role[v] == VertexRole::Inner) ++y[v];
  }
}

std::string search_events_to_json(const std::vector<SearchEvent>& events) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SearchEvent& ev : events) {
    nlohmann::json e;
    switch (ev.type) {
      case SearchEvent::Type::Grow: e["type"] = "grow"; break;
      case SearchEvent::Type::Blossom: e["type"] = "blossom"; break;
      case SearchEvent::Type::Sap: e["type"] = "sap"; break;
      case SearchEvent::Type::DualAdjust: e["type"] = "dual-adjust"; break;
    }
    if (ev.u >= 0) e["u"] = ev.u;
    if (ev.v >= 0) e["v"] = ev.v;
    if (ev.partner >= 0) e["partner"] = ev.partner;
    if (!ev.cycle.empty()) {
      e["cycle"] = ev.cycle;
      e["cycle_edges"] = ev.cycle_edges;
      e["cycle_matched"] = ev.cycle_matched;
    }
    if (ev.type == SearchEvent::Type::DualAdjust) e["round"] = ev.round;
    arr.push_back(std::move(e));
  }
  return arr.dump();
}

namespace {

class Phase1Engine : public ContextViews {
 public:
  Phase1Engine(Oracle& oracle, const Matching& m, RunInstrumentation* instr,
               int phase_index)
      : oracle_(oracle), instr_(instr), phase_index_(phase_index),
        n_(oracle.vertex_count()), mate_(m.mate_array(n_)),
        role_(n_, VertexRole::Unreached), parent_(n_, -1), root_(n_, -1),
        entry_round_(n_, -1), y_(n_, 0), blossom_(n_) {}

  // ContextViews
  bool tight(int u, int v) const override { return tight_pair(u, v, y_, mate_); }
  bool same_blossom(int u, int v) const override { return blossom_.same(u, v); }
  bool found_in_s(int v) const override { return role_[v] != VertexRole::Unreached; }
  bool outer(int v) const override {
    return role_[v] == VertexRole::Free || role_[v] == VertexRole::Outer;
  }
  bool matched(int u, int v) const override { return mate_[u] == v; }
  bool same_tree(int u, int v) const override {
    return root_[u] >= 0 && root_[u] == root_[v];
  }
  bool free_node(int v) const override { return mate_[v] < 0; }

  Phase1Result run() {
    for (int v = 0; v < n_; ++v) {
      if (mate_[v] < 0) {
        role_[v] = VertexRole::Free;
        root_[v] = v;
        entry_round_[v] = 0;
        s_order_.push_back(v);
        queue_.push_back(v);
      }
    }
    bool model_matrix = oracle_.model() == QueryModel::Matrix;
    while (true) {
      while (!queue_.empty() && !sap_found_) {
        int u = queue_.front();
        queue_.pop_front();
        if (model_matrix) scan_matrix(u); else scan_list(u);
      }
      if (sap_found_) break;
      // No eligible tight pair remains: dual adjustment.
      apply_dual_adjustment(role_, y_);
      ++rounds_;
      SearchEvent ev;
      ev.type = SearchEvent::Type::DualAdjust;
      ev.round = rounds_;
      events_.push_back(ev);
      if (!eligible_pair_exists()) break;  // exhausted: no augmenting path
      for (int v : s_order_)
        if (outer(v)) queue_.push_back(v);
    }
    return make_result();
  }

 private:
  bool in_s(int v) const { return role_[v] != VertexRole::Unreached; }

  void scan_matrix(int u) {
    for (int v = 0; v < n_ && !sap_found_; ++v) {
      if (v == u) continue;
      if (blossom_.same(u, v)) continue;
      if (!tight_pair(u, v, y_, mate_)) continue;
      if (!in_s(v)) {
        GuessContext ctx = context(GuardSite::P1MatrixGrow, u, v, 0);
        QueryOutcome out = oracle_.query_matrix(u, v, &ctx);
        if (out.present) grow(u, v);
      } else if (outer(v)) {
        GuessContext ctx = context(GuardSite::P1MatrixOuter, u, v, 0);
        QueryOutcome out = oracle_.query_matrix(u, v, &ctx);
        if (out.present) {
          if (root_[u] == root_[v]) merge_blossoms(u, v);
          else record_sap(u, v);
        }
      }
    }
  }

  void scan_list(int u) {
    for (int i = 1; !sap_found_; ++i) {
      GuessContext ctx = context(GuardSite::P1ListScan, u, -1, i);
      QueryOutcome out = oracle_.query_list(u, i, &ctx);
      if (out.is_null()) break;
      int v = *out.neighbor;
      if (blossom_.same(u, v)) continue;
      if (!tight_pair(u, v, y_, mate_)) continue;
      if (!in_s(v)) {
        grow(u, v);
      } else if (outer(v)) {
        if (root_[u] == root_[v]) merge_blossoms(u, v);
        else record_sap(u, v);
      }
    }
  }

  GuessContext context(GuardSite site, int u, int v, int i) const {
    GuessContext ctx;
    ctx.model = oracle_.model();
    ctx.phase = Phase::One;
    ctx.site = site;
    ctx.u = u;
    ctx.fixed_v = v;
    ctx.index = i;
    ctx.views = this;
    return ctx;
  }

  void grow(int u, int v) {
    int vp = mate_[v];
    if (vp < 0 || in_s(vp))
      throw std::logic_error("phase1: grow target has inconsistent matched partner");
    role_[v] = VertexRole::Inner;
    parent_[v] = u;
    root_[v] = root_[u];
    entry_round_[v] = rounds_;
    s_order_.push_back(v);
    role_[vp] = VertexRole::Outer;
    parent_[vp] = v;
    root_[vp] = root_[u];
    entry_round_[vp] = rounds_;
    s_order_.push_back(vp);
    queue_.push_back(vp);
    SearchEvent ev;
    ev.type = SearchEvent::Type::Grow;
    ev.u = u;
    ev.v = v;
    ev.partner = vp;
    events_.push_back(ev);
  }

  // Base vertex (nearest the root) of v's blossom class.
  int base_of(int v) const {
    auto it = base_.find(blossom_.find(v));
    return it == base_.end() ? blossom_.find(v) : it->second;
  }

  // Contracted path of class bases from v up to its tree root.
  std::vector<int> class_path(int v) const {
    std::vector<int> path;
    int x = v;
    while (true) {
      int b = base_of(x);
      path.push_back(b);
      if (parent_[b] < 0) break;
      x = parent_[b];
    }
    return path;
  }

  void merge_blossoms(int u, int v) {
    std::vector<int> pu = class_path(u);
    std::vector<int> pv = class_path(v);
    std::vector<char> on_pu(n_, 0);
    for (int b : pu) on_pu[blossom_.find(b)] = 1;
    size_t stop = 0;
    while (stop < pv.size() && !on_pu[blossom_.find(pv[stop])]) ++stop;
    if (stop == pv.size())
      throw std::logic_error("phase1: no common ancestor in one tree");
    int lca_class = blossom_.find(pv[stop]);
    // Cycle in the contracted forest: u..lca then back down to v.
    std::vector<int> cycle;
    for (int b : pu) {
      cycle.push_back(b);
      if (blossom_.find(b) == lca_class) break;
    }
    for (size_t k = stop; k-- > 0;) cycle.push_back(pv[k]);
    int lca_base = cycle.empty() ? base_of(u) : base_of(cycle[0]);
    for (size_t k = 0; k < cycle.size(); ++k)
      if (blossom_.find(cycle[k]) == lca_class) lca_base = cycle[k];
    int edges = static_cast<int>(cycle.size());
    int matched_edges = 0;
    for (size_t k = 0; k + 1 < cycle.size(); ++k) {
      // Tree edge linking consecutive classes: child base to its parent.
      int child = tree_child_between(cycle[k], cycle[k + 1]);
      int par = parent_[child];
      if (mate_[child] == par) ++matched_edges;
    }
    if (mate_[u] == v) ++matched_edges;  // closing edge (never matched in practice)
    int keep = blossom_.find(lca_base);
    for (int b : cycle) blossom_.unite(keep, b);
    base_[blossom_.find(keep)] = lca_base;
    int cls = blossom_.find(keep);
    for (int x : s_order_) {
      if (blossom_.find(x) == cls && role_[x] == VertexRole::Inner) {
        role_[x] = VertexRole::Outer;
        queue_.push_back(x);
      }
    }
    SearchEvent ev;
    ev.type = SearchEvent::Type::Blossom;
    ev.u = u;
    ev.v = v;
    ev.cycle = cycle;
    ev.cycle_edges = edges;
    ev.cycle_matched = matched_edges;
    events_.push_back(ev);
  }

  // Of the two adjacent cycle classes, one base's parent lies in the other.
  int tree_child_between(int a, int b) const {
    if (parent_[a] >= 0 && blossom_.same(parent_[a], b)) return a;
    return b;
  }

  void record_sap(int u, int v) {
    sap_found_ = true;
    sap_u_ = u;
    sap_v_ = v;
    SearchEvent ev;
    ev.type = SearchEvent::Type::Sap;
    ev.u = u;
    ev.v = v;
    events_.push_back(ev);
  }

  // After an adjustment: does any actionable tight pair remain?
  bool eligible_pair_exists() const {
    for (int u : s_order_) {
      if (!outer(u)) continue;
      for (int v = 0; v < n_; ++v) {
        if (v == u || blossom_.same(u, v)) continue;
        if (!tight_pair(u, v, y_, mate_)) continue;
        if (in_s(v) && !outer(v)) continue;
        if (oracle_.model() == QueryModel::Matrix) {
          if (!oracle_.known_absent(u, v)) return true;
        } else {
          if (oracle_.known_present(u, v)) return true;
        }
      }
    }
    return false;
  }

  Phase1Result make_result() {
    Phase1Result r;
    r.outcome = sap_found_ ? Phase1Result::Outcome::SapFound
                           : Phase1Result::Outcome::NoAugmentingPath;
    r.n = n_;
    r.role = role_;
    r.parent = parent_;
    r.root = root_;
    r.entry_round = entry_round_;
    r.y = y_;
    r.blossom_rep.resize(n_);
    for (int v = 0; v < n_; ++v) r.blossom_rep[v] = blossom_.find(v);
    r.s_vertices = s_order_;
    r.rounds = rounds_;
    r.sap_u = sap_u_;
    r.sap_v = sap_v_;
    r.events = std::move(events_);
    return r;
  }

  Oracle& oracle_;
  RunInstrumentation* instr_;
  int phase_index_;
  int n_;
  std::vector<int> mate_;
  std::vector<VertexRole> role_;
  std::vector<int> parent_, root_, entry_round_;
  DualVector y_;
  DisjointSets blossom_;
  std::unordered_map<int, int> base_;  // class rep -> base vertex
  std::vector<int> s_order_;
  std::deque<int> queue_;
  std::vector<SearchEvent> events_;
  int rounds_ = 0;
  bool sap_found_ = false;
  int sap_u_ = -1, sap_v_ = -1;
};

}  // namespace

Phase1Result run_phase1(Oracle& oracle, const Matching& m,
                        RunInstrumentation* instr, int phase_index) {
  if (instr) instr->begin_call(Phase::One, phase_index);
  Phase1Engine engine(oracle, m, instr, phase_index);
  return engine.run();
}

}  // namespace qmatch
