#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmatch/matcher.hpp"

namespace qmatch {

/// Seeded graph generator. Families: gnp(n, p), gnm(n, m), bipartite(n, p),
/// path(n), cycle(n), complete(n); `param` is ignored by the parameter-free
/// families. Deterministic for fixed (family, n, param, seed).
Graph generate_graph(const std::string& family, int n, double param, std::uint64_t seed);

/// One (family, n, param) point in a sweep.
struct SweepPoint {
  std::string family;
  int n = 0;
  double param = 0.0;
};

struct ExperimentConfig {
  std::vector<QueryModel> models;
  std::vector<SweepPoint> points;
  int seeds_per_point = 1;
  std::uint64_t seed_base = 0;
  /// Populate brute_size when the instance fits the reference size guard.
  bool brute_check = true;

  static ExperimentConfig from_json(const std::string& text);
};

/// One completed run; serializes to one CSV row.
struct RunRow {
  std::string model;
  std::string family;
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  int match_size = 0;
  std::optional<int> brute_size;
  int phases = 0;
  long long queries = 0;    // T
  long long incorrect = 0;  // I
  double bound = 0.0;       // sqrt(T*I)
  long long i_grow = 0;
  long long i_blossom = 0;
  long long i_sap = 0;
  long long i_null = 0;
  long long i_dfs_sap_complete = 0;
  long long i_dfs_grow_on_sap = 0;
  long long i_dfs_grow_off_sap = 0;
  long long i_dfs_blossom = 0;
  long long i_dfs_null = 0;
};

std::string csv_header();
std::string to_csv_row(const RunRow& row);

/// Run one instance end to end and summarize it.
RunRow run_single(QueryModel model, const SweepPoint& point, std::uint64_t seed,
                  bool brute_check);

/// All (model, point, seed) runs of the config, in deterministic order:
/// model, then point, then seed. Runs may execute in parallel.
std::vector<RunRow> run_experiment(const ExperimentConfig& cfg);

/// Power-law fit metric(n) ~ c * n^e through per-n medians on log-log axes.
struct ScalingFit {
  bool defined = false;
  double exponent = 0.0;
  double constant = 0.0;  // c
  double residual = 0.0;  // rms residual of log(metric) about the fit
};

/// metric is one of {"I", "bound", "T", "phases", "m"}. Undefined when
/// fewer than 4 distinct n values remain or any per-n median is <= 0.
ScalingFit fit_scaling(const std::vector<RunRow>& rows, const std::string& metric);

}  // namespace qmatch
