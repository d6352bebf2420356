// fairspread: fairness-constrained influence maximization experiments.
//
//   fairspread run --config experiment.json [--out results.csv]
//                  [--solutions-dir DIR]
//   fairspread fixture <star|two_node|bipartite_blowup|pof> [--check]
//                  [--size N] [--eps E]
//   fairspread eval --graph EDGES --communities COMM --solution SOL.json
//                  [--directed] [--samples 100] [--seed S] [--model IC]
//                  [--w-max W]
//
// FAIRSPREAD_WORKERS controls how many repetitions run in parallel.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "fairspread/fixtures.hpp"
#include "fairspread/harness.hpp"
#include "json.hpp"

using namespace fairspread;

namespace {

int run_command(const std::string& config_path, const std::string& out_path,
                const std::string& solutions_dir) {
  const ExperimentConfig config = ExperimentConfig::load(config_path);
  const EvaluationReport report = run_experiment(config);

  if (!solutions_dir.empty()) {
    std::filesystem::create_directories(solutions_dir);
    for (const auto& cell : report.cells) {
      if (!cell.ok() || !cell.solution) continue;
      std::string eta = cell.eta_label;
      for (char& c : eta)
        if (c == '/') c = '-';
      const std::string name = cell.algorithm + (eta.empty() ? "" : "_" + eta) +
                               "_rep" + std::to_string(cell.rep) + ".json";
      std::ofstream file(std::filesystem::path(solutions_dir) / name);
      file << solution_to_json(*cell.solution);
    }
  }

  int failed_cells = 0;
  for (const auto& cell : report.cells)
    if (!cell.ok()) {
      ++failed_cells;
      std::cerr << "cell failed: " << cell.algorithm
                << (cell.eta_label.empty() ? "" : " eta=" + cell.eta_label)
                << " rep " << cell.rep << ": " << cell.error << "\n";
    }

  if (out_path.empty() || out_path == "-") {
    emit_csv(report, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 1;
    }
    emit_csv(report, out);
  }
  return failed_cells == 0 ? 0 : 1;
}

int fixture_command(const std::string& name, bool check, int size, double eps) {
  const TheoryInstance instance = fixture_by_name(name, size, eps);
  std::cout << "fixture " << instance.name << ": n=" << instance.graph.node_count()
            << " edges=" << instance.graph.edge_count()
            << " communities=" << instance.communities.size() << " k=" << instance.k
            << "\n";
  for (const auto& fact : instance.facts)
    std::cout << "  fact " << fact.label << " = " << fact.value << "\n";
  if (!check) return 0;

  int failures = 0;
  for (const FactCheck& result : verify_instance(instance)) {
    if (result.skipped) {
      std::cout << "  [SKIP] " << result.label << " (analytic or over the cap)\n";
      continue;
    }
    const bool ok = result.passed;
    failures += ok ? 0 : 1;
    std::cout << "  [" << (ok ? "PASS" : "FAIL") << "] " << result.label
              << " expected " << result.expected << " got " << result.actual << "\n";
  }
  std::cout << (failures == 0 ? "fixture check passed" : "fixture check FAILED")
            << "\n";
  return failures == 0 ? 0 : 1;
}

int eval_command(const std::string& graph_path, bool directed,
                 const std::string& communities_path, const std::string& solution_path,
                 int samples, std::uint64_t seed, const std::string& model_name,
                 double w_max) {
  Graph graph = load_edge_list_file(graph_path, directed);
  if (graph.has_unset_weights())
    graph = assign_uniform_weights(graph, w_max,
                                   derive_seed(seed, SeedStream::kWeights));
  const CommunityStructure communities =
      load_communities_file(graph, communities_path);

  std::ifstream solution_file(solution_path);
  if (!solution_file) {
    std::cerr << "cannot open solution file: " << solution_path << "\n";
    return 1;
  }
  std::ostringstream buffer;
  buffer << solution_file.rdbuf();
  const SolutionVariant solution = solution_from_json(buffer.str());

  const auto sample = LiveEdgeSample::draw(
      graph, diffusion_model_from_string(model_name), samples,
      derive_seed(seed, SeedStream::kEvaluationSample), "eval");

  CoverageVector coverage;
  if (const auto* seeds = std::get_if<SeedSet>(&solution))
    coverage = coverage_vector(sample, seeds->nodes);
  else if (const auto* independent = std::get_if<IndependentSolution>(&solution))
    coverage = independent_coverage_sampled(
        sample, independent->x, default_independent_draws(),
        derive_seed(seed, SeedStream::kIndependentDraws));
  else
    coverage = distribution_coverage(sample, std::get<SetDistribution>(solution));

  const Eigen::VectorXd groups = group_coverage(coverage, communities);
  nlohmann::json out;
  out["coverage_ratio"] = coverage.sum() / graph.node_count();
  out["violation_additive"] = dp_violation_additive(groups);
  out["violation_multiplicative"] = dp_violation_multiplicative(groups);
  out["expected_size"] = expected_size(solution);
  out["eval_samples"] = samples;
  out["seed"] = seed;
  auto& per_community = out["community_coverages"] = nlohmann::json::array();
  for (int c = 0; c < communities.size(); ++c)
    per_community.push_back({{"community", communities.labels[c]},
                             {"coverage", groups[c]}});
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fairness-constrained influence maximization"};
  app.require_subcommand(1);

  std::string config_path, out_path, solutions_dir;
  auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
  run->add_option("--config", config_path, "experiment config (JSON)")->required();
  run->add_option("--out", out_path, "CSV output path (default: stdout)");
  run->add_option("--solutions-dir", solutions_dir,
                  "write each cell's solution as JSON into this directory");

  std::string fixture_name;
  bool check = false;
  int size = 0;
  double eps = 0.1;
  auto* fixture = app.add_subcommand("fixture", "build (and verify) a theory instance");
  fixture->add_option("name", fixture_name, "star|two_node|bipartite_blowup|pof")
      ->required();
  fixture->add_flag("--check", check, "re-derive the analytic facts exactly");
  fixture->add_option("--size", size, "N (star, bipartite_blowup) or n (pof)");
  fixture->add_option("--eps", eps, "star epsilon (default 0.1)");

  std::string graph_path, communities_path, solution_path, model_name = "IC";
  bool directed = false;
  int samples = 100;
  std::uint64_t seed = 1;
  double w_max = 0.2;
  auto* eval = app.add_subcommand("eval", "evaluate a stored solution on a graph");
  eval->add_option("--graph", graph_path, "edge list file")->required();
  eval->add_flag("--directed", directed, "treat the edge list as directed");
  eval->add_option("--communities", communities_path, "community file")->required();
  eval->add_option("--solution", solution_path, "solution JSON")->required();
  eval->add_option("--samples", samples, "evaluation live-edge graphs (default 100)");
  eval->add_option("--seed", seed, "base seed");
  eval->add_option("--model", model_name, "IC or LT");
  eval->add_option("--w-max", w_max,
                   "weight range for graphs without weights (default 0.2)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(config_path, out_path, solutions_dir);
    if (fixture->parsed()) {
      if (size == 0)
        size = fixture_name == "pof" ? 20 : (fixture_name == "bipartite_blowup" ? 6 : 10);
      return fixture_command(fixture_name, check, size, eps);
    }
    return eval_command(graph_path, directed, communities_path, solution_path, samples,
                        seed, model_name, w_max);
  } catch (const std::exception& failure) {
    std::cerr << "error: " << failure.what() << "\n";
    return 2;
  }
}
