#include "qmatch/matcher.hpp"

#include <stdexcept>

#include "json.hpp"

namespace qmatch {

MatchResult maximum_matching(Oracle& oracle) {
  int n = oracle.vertex_count();
  RunInstrumentation instr(oracle.model());
  oracle.set_hook(&instr);
  MatchResult result;
  Matching m;
  int phase = 0;
  while (true) {
    ++phase;
    if (phase > n / 2 + 1) {
      oracle.set_hook(nullptr);
      throw std::logic_error("matcher: phase count exceeded n/2+1; a phase failed to augment");
    }
    result.phase_matchings.push_back(m);
    // w is implied by M at phase start: 2 on matched edges, 0 elsewhere.
    Phase1Result p1 = run_phase1(oracle, m, &instr, phase);
    result.phase1_events.push_back(p1.events);
    if (p1.outcome == Phase1Result::Outcome::NoAugmentingPath) break;
    Phase2Result p2 = run_phase2(p1, m, oracle, &instr, phase);
    result.phase2_events.push_back(p2.events);
    m = augment(m, p2.saps);
  }
  oracle.set_hook(nullptr);
  result.matching = std::move(m);
  result.phase_count = phase;
  result.report = instr.report(oracle.distinct_queries(), phase);
  result.guess_events = instr.events();
  return result;
}

std::string MatchResult::to_json() const {
  nlohmann::json j;
  j["match_size"] = matching.size();
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : matching.edges()) edges.push_back({e.u, e.v});
  j["matching"] = std::move(edges);
  j["phase_count"] = phase_count;
  j["report"] = nlohmann::json::parse(report.to_json());
  nlohmann::json sizes = nlohmann::json::array();
  for (const Matching& pm : phase_matchings) sizes.push_back(pm.size());
  j["phase_matching_sizes"] = std::move(sizes);
  nlohmann::json p1 = nlohmann::json::array();
  for (const auto& evs : phase1_events) p1.push_back(nlohmann::json::parse(search_events_to_json(evs)));
  j["phase1_events"] = std::move(p1);
  nlohmann::json p2 = nlohmann::json::array();
  for (const auto& evs : phase2_events) p2.push_back(nlohmann::json::parse(search_events_to_json(evs)));
  j["phase2_events"] = std::move(p2);
  return j.dump();
}

}  // namespace qmatch
