#include "qmatch/guessing.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace qmatch {

std::string to_string(GuessCase c) {
  switch (c) {
    case GuessCase::None: return "none";
    case GuessCase::Grow: return "grow";
    case GuessCase::Blossom: return "blossom";
    case GuessCase::Sap: return "sap";
    case GuessCase::Null: return "null";
    case GuessCase::DfsSapComplete: return "dfs-sap-complete";
    case GuessCase::DfsGrowOnSap: return "dfs-grow-on-sap";
    case GuessCase::DfsGrowOffSap: return "dfs-grow-off-sap";
    case GuessCase::DfsBlossom: return "dfs-blossom";
    case GuessCase::DfsNull: return "dfs-null";
  }
  return "?";
}

GuessClass classify_matrix_guess(const QueryOutcome& out) {
  return out.present ? GuessClass::Incorrect : GuessClass::Correct;
}

GuessClass classify_list_guess(const GuessContext& ctx, const QueryOutcome& out) {
  if (out.is_null()) return GuessClass::Incorrect;
  int u = ctx.u, v = *out.neighbor;
  const ContextViews& s = *ctx.views;
  if (ctx.phase == Phase::One) {
    bool hit = s.tight(u, v) && !s.same_blossom(u, v) &&
               (!s.found_in_s(v) || s.outer(v));
    return hit ? GuessClass::Incorrect : GuessClass::Correct;
  }
  bool hit = s.tight(u, v) && !s.matched(u, v) &&
             (!s.found_in_sprime(v) || s.forms_blossom(u, v));
  return hit ? GuessClass::Incorrect : GuessClass::Correct;
}

GuessCase guess_case(const GuessContext& ctx, const QueryOutcome& out) {
  const ContextViews& s = *ctx.views;
  if (ctx.phase == Phase::One) {
    if (ctx.model == QueryModel::List && out.is_null()) return GuessCase::Null;
    int v = ctx.model == QueryModel::Matrix ? ctx.fixed_v : *out.neighbor;
    if (!s.found_in_s(v)) return GuessCase::Grow;
    return s.same_tree(ctx.u, v) ? GuessCase::Blossom : GuessCase::Sap;
  }
  if (ctx.model == QueryModel::List && out.is_null()) return GuessCase::DfsNull;
  int v = ctx.model == QueryModel::Matrix ? ctx.fixed_v : *out.neighbor;
  if (s.forms_blossom(ctx.u, v)) return GuessCase::DfsBlossom;
  if (s.free_node(v)) return GuessCase::DfsSapComplete;
  return GuessCase::DfsGrowOffSap;  // resolved to on-sap if a sap uses v
}

double quantum_bound(long long t, long long i) {
  if (i > t) throw std::invalid_argument("quantum_bound: i > t");
  if (t < 0 || i < 0) throw std::invalid_argument("quantum_bound: negative input");
  return std::sqrt(static_cast<double>(t) * static_cast<double>(i));
}

void RunInstrumentation::begin_call(Phase phase, int phase_index) {
  PhaseCallStats s;
  s.phase = phase;
  s.phase_index = phase_index;
  calls_.push_back(s);
}

void RunInstrumentation::on_fresh_query(const GuessContext& ctx, const QueryOutcome& out) {
  if (calls_.empty()) begin_call(ctx.phase, 0);
  GuessEvent ev;
  ev.site = ctx.site;
  ev.phase = ctx.phase;
  ev.phase_index = calls_.back().phase_index;
  ev.u = ctx.u;
  ev.list_index = ctx.index;
  if (ctx.model == QueryModel::Matrix) {
    ev.v = ctx.fixed_v;
    ev.outcome_hit = out.present;
    ev.cls = classify_matrix_guess(out);
  } else {
    ev.v = out.neighbor.value_or(-1);
    ev.outcome_hit = !out.is_null();
    ev.cls = classify_list_guess(ctx, out);
  }
  if (ev.cls == GuessClass::Incorrect) {
    ev.gcase = guess_case(ctx, out);
    ++incorrect_;
    ++calls_.back().incorrect;
    ++calls_.back().by_case[ev.gcase];
    if (ev.gcase == GuessCase::DfsGrowOffSap && ev.v >= 0)
      pending_grow_[ev.v] = events_.size();
  }
  events_.push_back(ev);
}

void RunInstrumentation::resolve_sap_vertices(const std::vector<int>& sap_vertices) {
  for (int v : sap_vertices) {
    auto it = pending_grow_.find(v);
    if (it == pending_grow_.end()) continue;
    GuessEvent& ev = events_[it->second];
    if (ev.gcase == GuessCase::DfsGrowOffSap) {
      ev.gcase = GuessCase::DfsGrowOnSap;
      for (PhaseCallStats& c : calls_) {
        if (c.phase_index == ev.phase_index && c.phase == ev.phase) {
          --c.by_case[GuessCase::DfsGrowOffSap];
          ++c.by_case[GuessCase::DfsGrowOnSap];
        }
      }
    }
    pending_grow_.erase(it);
  }
}

InstrumentationReport RunInstrumentation::report(long long queries, int phase_count) const {
  InstrumentationReport r;
  r.model = model_;
  r.queries = queries;
  r.incorrect = incorrect_;
  r.phase_count = phase_count;
  r.bound = quantum_bound(queries, incorrect_);
  for (const GuessEvent& ev : events_)
    if (ev.cls == GuessClass::Incorrect) ++r.by_case[ev.gcase];
  r.calls = calls_;
  return r;
}

std::string InstrumentationReport::to_json() const {
  nlohmann::json j;
  j["model"] = qmatch::to_string(model);
  j["T"] = queries;
  j["I"] = incorrect;
  j["phase_count"] = phase_count;
  j["bound"] = bound;
  nlohmann::json cases;
  for (const auto& [c, k] : by_case) cases[qmatch::to_string(c)] = k;
  j["incorrect_by_case"] = std::move(cases);
  nlohmann::json calls_j = nlohmann::json::array();
  for (const PhaseCallStats& c : calls) {
    nlohmann::json cj;
    cj["phase"] = c.phase == Phase::One ? 1 : 2;
    cj["phase_index"] = c.phase_index;
    cj["incorrect"] = c.incorrect;
    nlohmann::json bc;
    for (const auto& [gc, k] : c.by_case) bc[qmatch::to_string(gc)] = k;
    cj["by_case"] = std::move(bc);
    calls_j.push_back(std::move(cj));
  }
  j["calls"] = std::move(calls_j);
  return j.dump();
}

std::string RunInstrumentation::events_to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const GuessEvent& ev : events_) {
    nlohmann::json e;
    e["site"] = qmatch::to_string(ev.site);
    e["phase"] = ev.phase == Phase::One ? 1 : 2;
    e["phase_index"] = ev.phase_index;
    e["u"] = ev.u;
    e["v"] = ev.v;
    if (ev.list_index > 0) e["i"] = ev.list_index;
    e["hit"] = ev.outcome_hit;
    e["guess"] = ev.cls == GuessClass::Correct ? "correct" : "incorrect";
    e["case"] = qmatch::to_string(ev.gcase);
    arr.push_back(std::move(e));
  }
  return arr.dump();
}

}  // namespace qmatch
