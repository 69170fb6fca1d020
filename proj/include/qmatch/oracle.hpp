#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qmatch/graph.hpp"

namespace qmatch {

enum class QueryModel { Matrix, List };

std::string to_string(QueryModel model);
QueryModel parse_query_model(const std::string& s);

enum class Phase { One, Two };

enum class GuardSite {
  P1MatrixGrow,       // breadth-phase grow guard (v not yet in S)
  P1MatrixOuter,      // breadth-phase outer-outer guard (blossom/sap)
  P1ListScan,         // breadth-phase list position
  P2MatrixUnvisited,  // depth-phase guard (v not in S')
  P2MatrixBlossom,    // depth-phase blossom guard
  P2ListScan,         // depth-phase list position
};

std::string to_string(GuardSite site);

/// Read-only views into the search state at the instant a query is issued.
/// Implemented by the phase-1 and phase-2 searches.
class ContextViews {
 public:
  virtual ~ContextViews() = default;
  virtual bool tight(int u, int v) const { return false; }
  virtual bool same_blossom(int u, int v) const { return false; }
  virtual bool found_in_s(int v) const { return false; }
  virtual bool outer(int v) const { return false; }
  virtual bool matched(int u, int v) const { return false; }
  virtual bool found_in_sprime(int v) const { return false; }
  virtual bool forms_blossom(int u, int v) const { return false; }
  virtual bool free_node(int v) const { return false; }
  virtual bool same_tree(int u, int v) const { return false; }
};

/// Context attached to each guarded oracle invocation.
struct GuessContext {
  QueryModel model = QueryModel::Matrix;
  Phase phase = Phase::One;
  GuardSite site = GuardSite::P1MatrixGrow;
  int u = -1;
  int fixed_v = -1;  // matrix model: the queried v
  int index = 0;     // list model: 1-based position
  const ContextViews* views = nullptr;
};

/// Outcome of a single oracle invocation. Matrix model fills `present`;
/// list model fills `neighbor` (empty = null past the end of the list).
struct QueryOutcome {
  bool cached = false;
  bool present = false;
  std::optional<int> neighbor;

  bool is_null() const { return !neighbor.has_value(); }
};

/// Hook invoked once per non-cached oracle invocation.
class QueryHook {
 public:
  virtual ~QueryHook() = default;
  virtual void on_fresh_query(const GuessContext& ctx, const QueryOutcome& out) = 0;
};

/// Ground-truth graph known only to the oracle, plus the fixed neighbor
/// ordering used by the list model.
class HiddenGraph {
 public:
  HiddenGraph(Graph g, std::uint64_t ordering_seed);

  const Graph& graph() const { return graph_; }
  int vertex_count() const { return graph_.vertex_count(); }
  int degree(int u) const { return static_cast<int>(order_[u].size()); }
  /// 1-based; returns nullopt when deg(u) < i.
  std::optional<int> neighbor_at(int u, int i) const;

 private:
  Graph graph_;
  std::vector<std::vector<int>> order_;
};

/// Memoized record of every issued query; the source of T.
class QueryLedger {
 public:
  QueryLedger(int n, QueryModel model);

  QueryModel model() const { return model_; }
  long long distinct_queries() const { return count_; }

  // Matrix keys.
  bool matrix_known(int u, int v) const;
  bool matrix_value(int u, int v) const;
  void matrix_record(int u, int v, bool present);

  // List keys.
  bool list_known(int u, int i) const;
  /// Upper bound on deg(u) learned from a null, or -1 before any null.
  int list_degree_bound(int u) const { return list_deg_[u]; }
  std::optional<int> list_value(int u, int i) const;
  void list_record(int u, int i, std::optional<int> v);

  /// Edge knowledge derived from the record (in the list model an edge is
  /// known absent only once u's whole list has been scanned).
  bool known_present(int u, int v) const;
  bool known_absent(int u, int v) const;

  /// Keys in order of first issue with their outcomes, for regression dumps.
  std::string to_json() const;

 private:
  int idx(int u, int v) const;

  int n_;
  QueryModel model_;
  long long count_ = 0;
  std::vector<std::int8_t> edge_know_;  // 0 unknown, 1 present, 2 absent
  std::unordered_map<std::int64_t, int> list_record_;  // (u,i) -> v or -1
  std::vector<int> list_seen_;   // recorded non-null positions per vertex
  std::vector<int> list_deg_;    // degree learned from a null, else -1
  struct IssueRecord { int a; int b; int outcome; };  // outcome: v, 1/0, or -1
  std::vector<IssueRecord> issue_order_;
  void refresh_list_absence(int u);
};

/// The only gateway to the hidden graph. One oracle per run.
class Oracle {
 public:
  Oracle(HiddenGraph hidden, QueryModel model);

  QueryModel model() const { return model_; }
  int vertex_count() const { return hidden_.vertex_count(); }

  /// Matrix query; distinct-counter moves only on first issue of the
  /// unordered pair. Cached repeats skip the hook.
  QueryOutcome query_matrix(int u, int v, const GuessContext* ctx = nullptr);

  /// List query, 1-based index per the list-access definition.
  QueryOutcome query_list(int u, int i, const GuessContext* ctx = nullptr);

  long long distinct_queries() const { return ledger_.distinct_queries(); }
  const QueryLedger& ledger() const { return ledger_; }

  bool known_present(int u, int v) const { return ledger_.known_present(u, v); }
  bool known_absent(int u, int v) const { return ledger_.known_absent(u, v); }

  void set_hook(QueryHook* hook) { hook_ = hook; }

  /// Test-side access for validation against the ground truth.
  const Graph& hidden_graph_for_testing() const { return hidden_.graph(); }

 private:
  HiddenGraph hidden_;
  QueryModel model_;
  QueryLedger ledger_;
  QueryHook* hook_ = nullptr;
};

Oracle build_oracle(const Graph& g, QueryModel model, std::uint64_t ordering_seed);

}  // namespace qmatch
