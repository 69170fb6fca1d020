#pragma once

#include <optional>

#include "qmatch/graph.hpp"

namespace qmatch {

/// Ground-truth answers computed without any oracle machinery.
struct ReferenceAnswer {
  int optimum_size = 0;
  Matching witness;
};

/// Exact maximum matching by exhaustive recursion (bitmask DP over
/// vertices for n <= 20, branch-on-edge recursion for m <= 32).
ReferenceAnswer brute_force_max_matching(const Graph& g);

/// Minimum length of an augmenting path w.r.t. m, or nullopt when m is
/// maximum. Exhaustive enumeration of simple alternating paths; n <= 16.
std::optional<int> shortest_aug_path_length(const Graph& g, const Matching& m);

/// (a) each path is augmenting and of the current shortest length,
/// (b) pairwise vertex-disjoint, (c) maximal: no further sap of that
/// length is vertex-disjoint from P.
bool check_sap_set(const Graph& g, const Matching& m, const SapSet& p);

}  // namespace qmatch
