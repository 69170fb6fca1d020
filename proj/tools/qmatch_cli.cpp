// Command-line harness: single-instance solves, batch sweeps with CSV
// output and scaling fits, and a randomized self-check against the
// exhaustive reference.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmatch/experiment.hpp"
#include "qmatch/reference.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_solve(const std::string& graph_path, const std::string& model_name,
              std::uint64_t seed, const std::string& json_path) {
  std::ifstream in(graph_path);
  if (!in) {
    std::cerr << "error: cannot open " << graph_path << "\n";
    return 1;
  }
  qmatch::Graph g = qmatch::read_edge_list(in);
  qmatch::QueryModel model = qmatch::parse_query_model(model_name);
  qmatch::Oracle oracle = qmatch::build_oracle(g, model, seed);
  qmatch::MatchResult res = qmatch::maximum_matching(oracle);

  std::cout << "n=" << g.vertex_count() << " m=" << g.edge_count()
            << " model=" << to_string(model) << " match_size=" << res.matching.size()
            << " phases=" << res.phase_count << " T=" << res.report.queries
            << " I=" << res.report.incorrect << " bound=" << res.report.bound << "\n";
  if (!json_path.empty()) {
    nlohmann::json j = nlohmann::json::parse(res.to_json());
    j["ledger"] = nlohmann::json::parse(oracle.ledger().to_json());
    std::ofstream out(json_path);
    if (!out) {
      std::cerr << "error: cannot write " << json_path << "\n";
      return 1;
    }
    out << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& csv_path,
              const std::vector<std::string>& fit_metrics) {
  qmatch::ExperimentConfig cfg = qmatch::ExperimentConfig::from_json(read_file(config_path));
  std::vector<qmatch::RunRow> rows = qmatch::run_experiment(cfg);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!csv_path.empty()) {
    file.open(csv_path);
    if (!file) {
      std::cerr << "error: cannot write " << csv_path << "\n";
      return 1;
    }
    out = &file;
  }
  *out << qmatch::csv_header() << "\n";
  for (const qmatch::RunRow& row : rows) *out << qmatch::to_csv_row(row) << "\n";

  for (const std::string& metric : fit_metrics) {
    qmatch::ScalingFit fit = qmatch::fit_scaling(rows, metric);
    if (fit.defined)
      std::cerr << "fit " << metric << ": exponent=" << fit.exponent
                << " constant=" << fit.constant << " residual=" << fit.residual << "\n";
    else
      std::cerr << "fit " << metric << ": undefined\n";
  }
  for (const qmatch::RunRow& row : rows) {
    if (row.brute_size && *row.brute_size != row.match_size) {
      std::cerr << "MISMATCH: " << qmatch::to_csv_row(row) << "\n";
      return 1;
    }
  }
  return 0;
}

int cmd_verify(int n_max, int trials, std::uint64_t seed_base) {
  const char* families[] = {"gnp", "bipartite", "path", "cycle"};
  const double params[] = {0.1, 0.3, 0.5, 0.8};
  long long failures = 0, runs = 0;
  for (int t = 0; t < trials; ++t) {
    std::uint64_t seed = seed_base + static_cast<std::uint64_t>(t);
    qmatch::SweepPoint pt;
    pt.family = families[t % 4];
    pt.n = 2 + static_cast<int>(seed % static_cast<std::uint64_t>(n_max - 1));
    if (pt.family == "cycle" && pt.n < 3) pt.n = 3;
    pt.param = params[(t / 4) % 4];
    for (qmatch::QueryModel model : {qmatch::QueryModel::Matrix, qmatch::QueryModel::List}) {
      ++runs;
      try {
        qmatch::RunRow row = qmatch::run_single(model, pt, seed, true);
        bool ok = row.brute_size && *row.brute_size == row.match_size &&
                  row.incorrect <= row.queries;
        if (!ok) {
          ++failures;
          std::cerr << "FAIL: " << qmatch::to_csv_row(row) << "\n";
        }
      } catch (const std::exception& e) {
        ++failures;
        std::cerr << "FAIL: " << pt.family << " n=" << pt.n << " p=" << pt.param
                  << " seed=" << seed << " model=" << to_string(model)
                  << ": " << e.what() << "\n";
      }
    }
  }
  std::cout << "verify: " << (runs - failures) << "/" << runs << " runs passed\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-phase maximum matching under query counting"};
  app.require_subcommand(1);

  std::string graph_path, model_name = "matrix", json_path;
  std::uint64_t seed = 1;
  CLI::App* solve = app.add_subcommand("solve", "solve one graph file and report query statistics");
  solve->add_option("graphfile", graph_path, "edge-list file: 'n m' then 'u v' lines")->required();
  solve->add_option("--model", model_name, "matrix or list")->check(CLI::IsMember({"matrix", "list"}));
  solve->add_option("--seed", seed, "hidden adjacency-list ordering seed");
  solve->add_option("--json", json_path, "write the full JSON report here");

  std::string config_path, csv_path;
  std::vector<std::string> fit_metrics;
  CLI::App* sweep = app.add_subcommand("sweep", "run a batch experiment from a JSON config");
  sweep->add_option("--config", config_path, "experiment config JSON")->required();
  sweep->add_option("--csv", csv_path, "CSV output path (default: stdout)");
  sweep->add_option("--fit", fit_metrics, "report a power-law fit for these metrics (I, bound, T, phases)");

  int n_max = 16, trials = 250;
  std::uint64_t verify_seed = 1;
  CLI::App* verify = app.add_subcommand("verify", "randomized check against the exhaustive reference");
  verify->add_option("--n-max", n_max, "largest instance size")->check(CLI::Range(2, 16));
  verify->add_option("--trials", trials, "instances per model");
  verify->add_option("--seed-base", verify_seed, "first seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(graph_path, model_name, seed, json_path);
    if (sweep->parsed()) return cmd_sweep(config_path, csv_path, fit_metrics);
    return cmd_verify(n_max, trials, verify_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
