#pragma once

#include <string>
#include <vector>

#include "qmatch/graph.hpp"
#include "qmatch/guessing.hpp"
#include "qmatch/oracle.hpp"
#include "qmatch/phase1.hpp"
#include "qmatch/phase2.hpp"

namespace qmatch {

struct MatchResult {
  Matching matching;
  int phase_count = 0;
  InstrumentationReport report;
  /// Matching at the start of each phase (index 0 = empty matching).
  std::vector<Matching> phase_matchings;
  std::vector<std::vector<SearchEvent>> phase1_events;
  std::vector<std::vector<SearchEvent>> phase2_events;
  std::vector<GuessEvent> guess_events;

  std::string to_json() const;
};

/// The two-phase driver: alternates phase-1 search and phase-2 sap
/// extraction, augmenting until no augmenting path remains. The ledger
/// persists across phases, so re-examined edges are served from cache.
MatchResult maximum_matching(Oracle& oracle);

}  // namespace qmatch
