#pragma once

#include <map>
#include <string>
#include <vector>

#include "qmatch/oracle.hpp"

namespace qmatch {

enum class GuessClass { Correct, Incorrect };

enum class GuessCase {
  None,          // correct guess
  Grow,          // phase 1
  Blossom,       // phase 1
  Sap,           // phase 1
  Null,          // phase 1, list model
  DfsSapComplete,   // phase 2
  DfsGrowOnSap,     // phase 2
  DfsGrowOffSap,    // phase 2
  DfsBlossom,       // phase 2
  DfsNull,          // phase 2, list model
};

std::string to_string(GuessCase c);

/// Matrix scheme: always guess the edge is not present.
GuessClass classify_matrix_guess(const QueryOutcome& out);

/// List scheme per phase; null is always an incorrect guess.
GuessClass classify_list_guess(const GuessContext& ctx, const QueryOutcome& out);

/// Incorrect-guess case for an invocation, used for the per-case breakdown.
/// Phase-2 grows are provisionally off-sap and resolved when a sap commits.
GuessCase guess_case(const GuessContext& ctx, const QueryOutcome& out);

/// sqrt(t * i) with constant 1; the report labels it an O-estimate.
double quantum_bound(long long t, long long i);

/// One scored (non-cached) oracle invocation.
struct GuessEvent {
  GuardSite site;
  Phase phase;
  int phase_index = 0;  // 1-based driver iteration
  int u = -1;
  int v = -1;           // queried / returned vertex, -1 for list null
  int list_index = 0;
  bool outcome_hit = false;  // matrix: present; list: non-null
  GuessClass cls = GuessClass::Correct;
  GuessCase gcase = GuessCase::None;
};

/// Incorrect-guess counters for one phase-1 or phase-2 call.
struct PhaseCallStats {
  Phase phase = Phase::One;
  int phase_index = 0;
  long long incorrect = 0;
  std::map<GuessCase, long long> by_case;
};

/// Per-run T, I, per-phase/per-case breakdown, phase count and sqrt(T*I).
struct InstrumentationReport {
  QueryModel model = QueryModel::Matrix;
  long long queries = 0;    // T
  long long incorrect = 0;  // I
  int phase_count = 0;
  double bound = 0.0;       // sqrt(T*I)
  std::map<GuessCase, long long> by_case;
  std::vector<PhaseCallStats> calls;

  std::string to_json() const;
};

/// Owns the per-run guess counters and event log. Installed as the oracle
/// hook so every non-cached invocation is scored exactly once.
class RunInstrumentation : public QueryHook {
 public:
  explicit RunInstrumentation(QueryModel model) : model_(model) {}

  void begin_call(Phase phase, int phase_index);
  void on_fresh_query(const GuessContext& ctx, const QueryOutcome& out) override;

  /// Flip pending phase-2 grow guesses whose grown vertex landed on a sap.
  void resolve_sap_vertices(const std::vector<int>& sap_vertices);

  long long incorrect_total() const { return incorrect_; }
  const std::vector<GuessEvent>& events() const { return events_; }
  const std::vector<PhaseCallStats>& calls() const { return calls_; }

  InstrumentationReport report(long long queries, int phase_count) const;

  std::string events_to_json() const;

 private:
  QueryModel model_;
  long long incorrect_ = 0;
  std::vector<GuessEvent> events_;
  std::vector<PhaseCallStats> calls_;
  std::map<int, size_t> pending_grow_;  // grown vertex -> event index
};

}  // namespace qmatch
