// prlab: run PageRank convergence experiments and single-graph oracles.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prlab/prlab.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitCheck = 3;

struct RunOptions {
  std::string config;
  std::string out_dir;
  std::size_t threads = 1;
  std::string scenario;
  bool check = false;
  bool timings = false;
};

int run(const RunOptions& opt) {
  std::vector<prlab::Scenario> scenarios;
  try {
    scenarios = prlab::load_config(opt.config);
  } catch (const prlab::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (!opt.scenario.empty()) {
    std::erase_if(scenarios, [&](const auto& s) { return s.name != opt.scenario; });
    if (scenarios.empty()) {
      std::cerr << "config error: no scenario named '" << opt.scenario << "'\n";
      return kExitConfig;
    }
  }

  std::vector<prlab::ExperimentRecord> records;
  std::vector<prlab::TrendCheck> checks;
  try {
    std::filesystem::create_directories(opt.out_dir);
    for (const auto& s : scenarios) {
      std::cerr << "running " << s.name << " (" << s.n_grid.size() << " sizes x "
                << s.replicates << " replicates)\n";
      auto rows = prlab::run_scenario(s, opt.threads);
      if (opt.check) {
        auto c = prlab::check_scenario(s, rows);
        checks.insert(checks.end(), c.begin(), c.end());
      }
      records.insert(records.end(), rows.begin(), rows.end());
    }
    const std::filesystem::path dir(opt.out_dir);
    prlab::emit_csv(records, (dir / "results.csv").string(), opt.timings);
    prlab::emit_loglog(records, (dir / "loglog.txt").string());
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }

  bool all_passed = true;
  for (const auto& c : checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  [" << c.detail << "]\n";
    all_passed = all_passed && c.passed;
  }
  return all_passed ? 0 : kExitCheck;
}

int oracle(const std::string& graph_path, const std::string& vector_path, double alpha) {
  try {
    const auto g = prlab::read_edge_list(graph_path);
    const auto v = prlab::read_probability_vector(vector_path);
    const auto pi = prlab::pagerank_dense_oracle(g, v, alpha);
    prlab::write_values(std::cout, pi.values());
  } catch (const prlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}

int spectral(const std::string& graph_path, double tol, std::size_t max_iter) {
  try {
    const auto g = prlab::read_edge_list(graph_path);
    const auto r = prlab::second_eigenvalue_magnitude(g, tol, max_iter, prlab::Seed{1, 0});
    std::cout << "lambda2_abs " << prlab::format_double(r.lambda2_abs) << '\n'
              << "gap " << prlab::format_double(r.gap) << '\n'
              << "iterations " << r.iterations << '\n'
              << "residual " << prlab::format_double(r.residual) << '\n'
              << "converged " << (r.converged ? "yes" : "no") << '\n'
              << "degree_ratio " << prlab::format_double(r.degree_ratio) << '\n';
  } catch (const prlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PageRank asymptotics experiments"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run_cmd = app.add_subcommand("run", "Sweep scenarios and write results.csv / loglog.txt");
  run_cmd->add_option("--config", run_opt.config, "Scenario JSON")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out-dir", run_opt.out_dir, "Output directory")->required();
  run_cmd->add_option("--threads", run_opt.threads, "Worker threads")->check(CLI::PositiveNumber);
  run_cmd->add_option("--scenario", run_opt.scenario, "Only run the named scenario");
  run_cmd->add_flag("--check", run_opt.check, "Evaluate trend expectations; exit 3 on failure");
  run_cmd->add_flag("--timings", run_opt.timings, "Fill the wall_millis column");

  std::string graph_path, vector_path;
  double alpha = 0.85;
  auto* oracle_cmd = app.add_subcommand("oracle", "Dense PageRank solve of one graph");
  oracle_cmd->add_option("--graph", graph_path, "Edge list")->required()->check(CLI::ExistingFile);
  oracle_cmd->add_option("--v", vector_path, "Preference vector, one value per line")
      ->required()
      ->check(CLI::ExistingFile);
  oracle_cmd->add_option("--alpha", alpha, "Damping factor")->check(CLI::Range(0.0, 1.0));

  std::string spectral_graph;
  double tol = 1e-10;
  std::size_t max_iter = 100000;
  auto* spectral_cmd = app.add_subcommand("spectral", "Estimate max(|lambda_2|, |lambda_n|) of Q");
  spectral_cmd->add_option("--graph", spectral_graph, "Edge list")->required()->check(CLI::ExistingFile);
  spectral_cmd->add_option("--tol", tol, "Relative tolerance");
  spectral_cmd->add_option("--max-iter", max_iter, "Iteration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*run_cmd) return run(run_opt);
  if (*oracle_cmd) return oracle(graph_path, vector_path, alpha);
  return spectral(spectral_graph, tol, max_iter);
}
