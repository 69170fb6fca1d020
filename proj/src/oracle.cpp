#include "qmatch/oracle.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qmatch {

std::string to_string(QueryModel model) {
  return model == QueryModel::Matrix ? "matrix" : "list";
}

QueryModel parse_query_model(const std::string& s) {
  if (s == "matrix") return QueryModel::Matrix;
  if (s == "list") return QueryModel::List;
  throw std::invalid_argument("unknown query model: " + s);
}

std::string to_string(GuardSite site) {
  switch (site) {
    case GuardSite::P1MatrixGrow: return "p1-matrix-grow";
    case GuardSite::P1MatrixOuter: return "p1-matrix-outer";
    case GuardSite::P1ListScan: return "p1-list-scan";
    case GuardSite::P2MatrixUnvisited: return "p2-matrix-unvisited";
    case GuardSite::P2MatrixBlossom: return "p2-matrix-blossom";
    case GuardSite::P2ListScan: return "p2-list-scan";
  }
  return "?";
}

HiddenGraph::HiddenGraph(Graph g, std::uint64_t ordering_seed) : graph_(std::move(g)) {
  order_ = graph_.adjacency();
  for (int u = 0; u < graph_.vertex_count(); ++u) {
    std::mt19937_64 rng(ordering_seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(u) + 1);
    std::shuffle(order_[u].begin(), order_[u].end(), rng);
  }
}

std::optional<int> HiddenGraph::neighbor_at(int u, int i) const {
  if (i < 1 || i > static_cast<int>(order_[u].size())) return std::nullopt;
  return order_[u][i - 1];
}

QueryLedger::QueryLedger(int n, QueryModel model)
    : n_(n), model_(model), edge_know_(static_cast<size_t>(n) * n, 0),
      list_seen_(n, 0), list_deg_(n, -1) {}

int QueryLedger::idx(int u, int v) const { return u * n_ + v; }

bool QueryLedger::matrix_known(int u, int v) const { return edge_know_[idx(u, v)] != 0; }

bool QueryLedger::matrix_value(int u, int v) const { return edge_know_[idx(u, v)] == 1; }

void QueryLedger::matrix_record(int u, int v, bool present) {
  edge_know_[idx(u, v)] = edge_know_[idx(v, u)] = present ? 1 : 2;
  issue_order_.push_back({std::min(u, v), std::max(u, v), present ? 1 : 0});
  ++count_;
}

bool QueryLedger::list_known(int u, int i) const {
  return list_record_.count(static_cast<std::int64_t>(u) * (n_ + 2) + i) > 0;
}

std::optional<int> QueryLedger::list_value(int u, int i) const {
  auto it = list_record_.find(static_cast<std::int64_t>(u) * (n_ + 2) + i);
  if (it == list_record_.end() || it->second < 0) return std::nullopt;
  return it->second;
}

void QueryLedger::list_record(int u, int i, std::optional<int> v) {
  list_record_[static_cast<std::int64_t>(u) * (n_ + 2) + i] = v.value_or(-1);
  issue_order_.push_back({u, i, v.value_or(-1)});
  ++count_;
  if (v) {
    edge_know_[idx(u, *v)] = edge_know_[idx(*v, u)] = 1;
    ++list_seen_[u];
  } else if (list_deg_[u] < 0 || i - 1 < list_deg_[u]) {
    list_deg_[u] = i - 1;
  }
  refresh_list_absence(u);
}

void QueryLedger::refresh_list_absence(int u) {
  // Once all of u's neighbors are recorded and a null fixed deg(u), every
  // other pair at u is known absent.
  if (list_deg_[u] < 0 || list_seen_[u] < list_deg_[u]) return;
  for (int v = 0; v < n_; ++v)
    if (v != u && edge_know_[idx(u, v)] == 0)
      edge_know_[idx(u, v)] = edge_know_[idx(v, u)] = 2;
}

bool QueryLedger::known_present(int u, int v) const { return edge_know_[idx(u, v)] == 1; }

bool QueryLedger::known_absent(int u, int v) const { return edge_know_[idx(u, v)] == 2; }

std::string QueryLedger::to_json() const {
  nlohmann::json j;
  j["model"] = model_ == QueryModel::Matrix ? "matrix" : "list";
  j["distinct_queries"] = count_;
  nlohmann::json keys = nlohmann::json::array();
  for (const IssueRecord& r : issue_order_) {
    nlohmann::json k;
    if (model_ == QueryModel::Matrix) {
      k["u"] = r.a;
      k["v"] = r.b;
      k["present"] = r.outcome == 1;
    } else {
      k["u"] = r.a;
      k["i"] = r.b;
      if (r.outcome >= 0) k["neighbor"] = r.outcome; else k["neighbor"] = nullptr;
    }
    keys.push_back(std::move(k));
  }
  j["queries"] = std::move(keys);
  return j.dump();
}

Oracle::Oracle(HiddenGraph hidden, QueryModel model)
    : hidden_(std::move(hidden)), model_(model),
      ledger_(hidden_.vertex_count(), model) {}

QueryOutcome Oracle::query_matrix(int u, int v, const GuessContext* ctx) {
  if (model_ != QueryModel::Matrix) throw std::logic_error("matrix query on list oracle");
  int n = hidden_.vertex_count();
  if (u < 0 || u >= n || v < 0 || v >= n) throw std::out_of_range("query vertex out of range");
  if (u == v) throw std::invalid_argument("self-loop query");
  QueryOutcome out;
  if (ledger_.matrix_known(u, v)) {
    out.cached = true;
    out.present = ledger_.matrix_value(u, v);
    return out;
  }
  out.present = hidden_.graph().has_edge(u, v);
  ledger_.matrix_record(u, v, out.present);
  if (hook_ && ctx) hook_->on_fresh_query(*ctx, out);
  return out;
}

QueryOutcome Oracle::query_list(int u, int i, const GuessContext* ctx) {
  if (model_ != QueryModel::List) throw std::logic_error("list query on matrix oracle");
  int n = hidden_.vertex_count();
  if (u < 0 || u >= n) throw std::out_of_range("query vertex out of range");
  if (i < 1) throw std::invalid_argument("list index must be >= 1");
  QueryOutcome out;
  if (ledger_.list_known(u, i)) {
    out.cached = true;
    out.neighbor = ledger_.list_value(u, i);
    return out;
  }
  // A recorded null already proves deg(u) < i for every larger i.
  if (ledger_.list_degree_bound(u) >= 0 && i > ledger_.list_degree_bound(u)) {
    out.cached = true;
    return out;
  }
  out.neighbor = hidden_.neighbor_at(u, i);
  ledger_.list_record(u, i, out.neighbor);
  if (hook_ && ctx) hook_->on_fresh_query(*ctx, out);
  return out;
}

Oracle build_oracle(const Graph& g, QueryModel model, std::uint64_t ordering_seed) {
  return Oracle(HiddenGraph(g, ordering_seed), model);
}

}  // namespace qmatch
