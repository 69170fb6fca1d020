#include "qmatch/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "qmatch/reference.hpp"

namespace qmatch {

Graph generate_graph(const std::string& family, int n, double param, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("generate_graph: negative n");
  std::mt19937_64 rng(seed);
  Graph g(n);
  if (family == "gnp") {
    if (param < 0.0 || param > 1.0) throw std::invalid_argument("generate_graph: gnp needs p in [0,1]");
    std::bernoulli_distribution coin(param);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(rng)) g.add_edge(u, v);
  } else if (family == "gnm") {
    long long want = std::llround(param);
    long long all = static_cast<long long>(n) * (n - 1) / 2;
    if (want < 0 || want > all) throw std::invalid_argument("generate_graph: gnm needs 0 <= m <= n(n-1)/2");
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(all);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    for (long long k = 0; k < want; ++k) g.add_edge(pairs[k].first, pairs[k].second);
  } else if (family == "bipartite") {
    if (param < 0.0 || param > 1.0) throw std::invalid_argument("generate_graph: bipartite needs p in [0,1]");
    std::bernoulli_distribution coin(param);
    int half = n / 2;
    for (int u = 0; u < half; ++u)
      for (int v = half; v < n; ++v)
        if (coin(rng)) g.add_edge(u, v);
  } else if (family == "path") {
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  } else if (family == "cycle") {
    if (n < 3) throw std::invalid_argument("generate_graph: cycle needs n >= 3");
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    g.add_edge(n - 1, 0);
  } else if (family == "complete") {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  } else {
    throw std::invalid_argument("generate_graph: unknown family '" + family + "'");
  }
  return g;
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ExperimentConfig cfg;
  for (const auto& s : j.at("models")) cfg.models.push_back(parse_query_model(s.get<std::string>()));
  for (const auto& p : j.at("points")) {
    SweepPoint pt;
    pt.family = p.at("family").get<std::string>();
    pt.n = p.at("n").get<int>();
    pt.param = p.value("param", 0.0);
    cfg.points.push_back(std::move(pt));
  }
  cfg.seeds_per_point = j.value("seeds_per_point", 1);
  cfg.seed_base = j.value("seed_base", std::uint64_t{0});
  cfg.brute_check = j.value("brute_check", true);
  if (cfg.models.empty() || cfg.points.empty() || cfg.seeds_per_point < 1)
    throw std::invalid_argument("experiment config: need models, points, seeds_per_point >= 1");
  return cfg;
}

std::string csv_header() {
  return "model,family,n,m,seed,match_size,brute_size,phases,T,I,bound,"
         "i_grow,i_blossom,i_sap,i_null,i_dfs_sap_complete,i_dfs_grow_on_sap,"
         "i_dfs_grow_off_sap,i_dfs_blossom,i_dfs_null";
}

std::string to_csv_row(const RunRow& r) {
  char bound[32];
  std::snprintf(bound, sizeof(bound), "%.6f", r.bound);
  std::string row = r.model + "," + r.family + "," + std::to_string(r.n) + "," +
                    std::to_string(r.m) + "," + std::to_string(r.seed) + "," +
                    std::to_string(r.match_size) + "," +
                    (r.brute_size ? std::to_string(*r.brute_size) : std::string()) + "," +
                    std::to_string(r.phases) + "," + std::to_string(r.queries) + "," +
                    std::to_string(r.incorrect) + "," + bound;
  for (long long c : {r.i_grow, r.i_blossom, r.i_sap, r.i_null, r.i_dfs_sap_complete,
                      r.i_dfs_grow_on_sap, r.i_dfs_grow_off_sap, r.i_dfs_blossom,
                      r.i_dfs_null})
    row += "," + std::to_string(c);
  return row;
}

namespace {

long long case_count(const InstrumentationReport& rep, GuessCase c) {
  auto it = rep.by_case.find(c);
  return it == rep.by_case.end() ? 0 : it->second;
}

}  // namespace

RunRow run_single(QueryModel model, const SweepPoint& point, std::uint64_t seed,
                  bool brute_check) {
  Graph g = generate_graph(point.family, point.n, point.param, seed);
  // Distinct stream for the hidden list ordering so it is uncorrelated
  // with the edge coin flips.
  Oracle oracle = build_oracle(g, model, seed ^ 0x6a09e667f3bcc909ULL);
  MatchResult res = maximum_matching(oracle);

  RunRow row;
  row.model = to_string(model);
  row.family = point.family;
  row.n = point.n;
  row.m = g.edge_count();
  row.seed = seed;
  row.match_size = res.matching.size();
  if (brute_check && (point.n <= 20 || g.edge_count() <= 32))
    row.brute_size = brute_force_max_matching(g).optimum_size;
  row.phases = res.phase_count;
  row.queries = res.report.queries;
  row.incorrect = res.report.incorrect;
  row.bound = res.report.bound;
  row.i_grow = case_count(res.report, GuessCase::Grow);
  row.i_blossom = case_count(res.report, GuessCase::Blossom);
  row.i_sap = case_count(res.report, GuessCase::Sap);
  row.i_null = case_count(res.report, GuessCase::Null);
  row.i_dfs_sap_complete = case_count(res.report, GuessCase::DfsSapComplete);
  row.i_dfs_grow_on_sap = case_count(res.report, GuessCase::DfsGrowOnSap);
  row.i_dfs_grow_off_sap = case_count(res.report, GuessCase::DfsGrowOffSap);
  row.i_dfs_blossom = case_count(res.report, GuessCase::DfsBlossom);
  row.i_dfs_null = case_count(res.report, GuessCase::DfsNull);
  return row;
}

std::vector<RunRow> run_experiment(const ExperimentConfig& cfg) {
  struct Job {
    QueryModel model;
    const SweepPoint* point;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (QueryModel model : cfg.models)
    for (const SweepPoint& point : cfg.points)
      for (int s = 0; s < cfg.seeds_per_point; ++s)
        jobs.push_back({model, &point, cfg.seed_base + static_cast<std::uint64_t>(s)});

  std::vector<RunRow> rows(jobs.size());
  // Each run owns its oracle and RNG; rows land at fixed indices, so the
  // output order is independent of the schedule.
#pragma omp parallel for schedule(dynamic)
  for (long long k = 0; k < static_cast<long long>(jobs.size()); ++k)
    rows[k] = run_single(jobs[k].model, *jobs[k].point, jobs[k].seed, cfg.brute_check);
  return rows;
}

ScalingFit fit_scaling(const std::vector<RunRow>& rows, const std::string& metric) {
  auto pick = [&metric](const RunRow& r) -> double {
    if (metric == "I") return static_cast<double>(r.incorrect);
    if (metric == "bound") return r.bound;
    if (metric == "T") return static_cast<double>(r.queries);
    if (metric == "phases") return static_cast<double>(r.phases);
    if (metric == "m") return static_cast<double>(r.m);
    throw std::invalid_argument("fit_scaling: unknown metric '" + metric + "'");
  };
  std::map<int, std::vector<double>> by_n;
  for (const RunRow& r : rows) by_n[r.n].push_back(pick(r));

  ScalingFit fit;
  if (by_n.size() < 4) return fit;
  std::vector<double> xs, ys;
  for (auto& [n, vals] : by_n) {
    std::sort(vals.begin(), vals.end());
    size_t k = vals.size();
    double med = k % 2 ? vals[k / 2] : 0.5 * (vals[k / 2 - 1] + vals[k / 2]);
    if (med <= 0.0 || n <= 0) return fit;  // log undefined -> degenerate
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(med));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  size_t k = xs.size();
  for (size_t i = 0; i < k; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double denom = k * sxx - sx * sx;
  if (denom == 0.0) return fit;
  fit.exponent = (k * sxy - sx * sy) / denom;
  double intercept = (sy - fit.exponent * sx) / k;
  fit.constant = std::exp(intercept);
  double ss = 0;
  for (size_t i = 0; i < k; ++i) {
    double e = ys[i] - (intercept + fit.exponent * xs[i]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / k);
  fit.defined = std::isfinite(fit.exponent);
  return fit;
}

}  // namespace qmatch
