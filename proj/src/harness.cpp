#include "fairspread/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fairspread/fixtures.hpp"
#include "json.hpp"

namespace fairspread {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

EtaSpec EtaSpec::parse(const std::string& text) {
  EtaSpec spec;
  spec.label = text;
  if (text.rfind("x/", 0) == 0) {
    spec.kind = Kind::kFractionOfGreedyViolation;
    const double denom = std::stod(text.substr(2));
    if (!(denom > 0)) throw std::invalid_argument("eta: bad fraction `" + text + "`");
    spec.value = 1.0 / denom;
    return spec;
  }
  spec.kind = Kind::kAbsolute;
  spec.value = std::stod(text);
  if (spec.value < 0.0 || spec.value >= 1.0)
    throw std::invalid_argument("eta: absolute value outside [0,1): " + text);
  return spec;
}

double EtaSpec::resolve(double greedy_violation) const {
  if (kind == Kind::kAbsolute) return value;
  return value * greedy_violation;
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  ExperimentConfig config;

  const auto& inst = j.at("instance");
  const std::string type = inst.at("type").get<std::string>();
  if (type == "ba" || type == "barabasi_albert") {
    config.instance.kind = InstanceSpec::Kind::kBarabasiAlbert;
    config.instance.n = inst.at("n").get<int>();
    config.instance.m_attach = inst.value("m_attach", 2);
    config.instance.graphs = inst.value("graphs", 1);
  } else if (type == "fixture") {
    config.instance.kind = InstanceSpec::Kind::kFixture;
    config.instance.fixture = inst.at("name").get<std::string>();
    config.instance.fixture_size = inst.value("size", 10);
    config.instance.fixture_eps = inst.value("eps", 0.1);
    config.instance.graphs = 1;
  } else if (type == "file") {
    config.instance.kind = InstanceSpec::Kind::kFile;
    config.instance.graph_path = inst.at("graph").get<std::string>();
    config.instance.communities_path = inst.value("communities", std::string());
    config.instance.directed = inst.value("directed", false);
    config.instance.graphs = 1;
  } else {
    throw std::invalid_argument("config: unknown instance type `" + type + "`");
  }

  config.model = diffusion_model_from_string(j.value("model", std::string("IC")));
  config.w_max = j.value("w_max", 0.4);
  if (j.contains("communities")) {
    const auto& comm = j.at("communities");
    config.communities.scheme =
        community_scheme_from_string(comm.value("scheme", std::string("singleton")));
    config.communities.m = comm.value("m", 1);
  }
  config.k = j.value("k", 25);
  config.algo_samples = j.value("algo_samples", 1000);
  config.eval_samples = j.value("eval_samples", 100);
  config.repetitions = j.value("repetitions", 10);
  config.num_draws = j.value("num_draws", default_independent_draws());
  config.exact = j.value("exact", false);
  config.seed = j.value("seed", std::uint64_t(1));
  if (j.contains("mult_weight")) {
    config.mult_weight.iterations = j.at("mult_weight").value("iterations", 0);
    config.mult_weight.step = j.at("mult_weight").value("step", 0.1);
  }

  for (const auto& entry : j.at("algorithms")) {
    AlgorithmSpec spec;
    spec.id = entry.at("id").get<std::string>();
    if (entry.contains("eta"))
      spec.eta = EtaSpec::parse(entry.at("eta").is_string()
                                    ? entry.at("eta").get<std::string>()
                                    : entry.at("eta").dump());
    config.algorithms.push_back(std::move(spec));
  }
  config.validate();
  return config;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

void ExperimentConfig::validate() const {
  if (algorithms.empty() && repetitions < 1)
    throw std::invalid_argument("config: nothing to run");
  bool has_grdy_im = false, has_relative_eta = false;
  for (const auto& spec : algorithms) {
    const auto& ids = algorithm_ids();
    if (std::find(ids.begin(), ids.end(), spec.id) == ids.end())
      throw std::invalid_argument("config: unknown algorithm `" + spec.id + "`");
    if (algorithm_uses_eta(spec.id) && !spec.eta)
      throw std::invalid_argument("config: algorithm `" + spec.id + "` needs an eta");
    if (spec.id == "grdy_im") has_grdy_im = true;
    if (spec.eta && spec.eta->kind == EtaSpec::Kind::kFractionOfGreedyViolation)
      has_relative_eta = true;
  }
  if (has_relative_eta && !has_grdy_im)
    throw std::invalid_argument(
        "config: relative eta presets (x/16, x/8, x/4) require grdy_im in the "
        "algorithm list");
  if (repetitions < 1 || instance.graphs < 1)
    throw std::invalid_argument("config: repetitions and graphs must be >= 1");
  if (algo_samples < 1 || eval_samples < 1 || num_draws < 1)
    throw std::invalid_argument("config: sample sizes must be >= 1");
}

std::pair<double, double> confidence_interval(std::span<const double> values) {
  if (values.empty()) return {kNaN, kNaN};
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  if (values.size() < 2) return {mean, kNaN};
  double variance = 0.0;
  for (double v : values) variance += (v - mean) * (v - mean);
  variance /= static_cast<double>(values.size());
  const double half_width = 1.96 * std::sqrt(variance) /
                            std::sqrt(static_cast<double>(values.size()));
  return {mean, half_width};
}

namespace {

struct Instance {
  Graph graph;
  CommunityStructure communities;
  int k = 1;
};

Instance build_instance(const ExperimentConfig& config, int graph_index) {
  Instance instance;
  switch (config.instance.kind) {
    case InstanceSpec::Kind::kBarabasiAlbert: {
      Graph graph = generate_barabasi_albert(
          config.instance.n, config.instance.m_attach,
          derive_seed(config.seed, SeedStream::kInstance,
                      static_cast<std::uint64_t>(graph_index)));
      instance.graph = assign_uniform_weights(
          graph, config.w_max,
          derive_seed(config.seed, SeedStream::kWeights,
                      static_cast<std::uint64_t>(graph_index)));
      instance.k = config.k;
      break;
    }
    case InstanceSpec::Kind::kFixture: {
      TheoryInstance fixture =
          fixture_by_name(config.instance.fixture, config.instance.fixture_size,
                          config.instance.fixture_eps);
      instance.graph = std::move(fixture.graph);
      instance.communities = std::move(fixture.communities);
      instance.k = fixture.k;
      return instance;  // fixtures carry their own communities and k
    }
    case InstanceSpec::Kind::kFile: {
      Graph graph = load_edge_list_file(config.instance.graph_path,
                                        config.instance.directed);
      if (graph.has_unset_weights())
        graph = assign_uniform_weights(
            graph, config.w_max,
            derive_seed(config.seed, SeedStream::kWeights,
                        static_cast<std::uint64_t>(graph_index)));
      instance.graph = std::move(graph);
      instance.k = config.k;
      if (!config.instance.communities_path.empty()) {
        instance.communities =
            load_communities_file(instance.graph, config.instance.communities_path);
        return instance;
      }
      break;
    }
  }
  instance.communities = build_communities(
      instance.graph, config.communities.scheme, config.communities.m,
      derive_seed(config.seed, SeedStream::kCommunities,
                  static_cast<std::uint64_t>(graph_index)));
  return instance;
}

// Evaluation of one solution on the evaluation-side sample.
CoverageVector evaluate_solution(const SolutionVariant& solution,
                                 const LiveEdgeSample& eval_sample, int num_draws,
                                 std::uint64_t draw_seed) {
  if (const auto* seed_set = std::get_if<SeedSet>(&solution))
    return coverage_vector(eval_sample, seed_set->nodes);
  if (const auto* independent = std::get_if<IndependentSolution>(&solution)) {
    if (eval_sample.exact())
      return independent_coverage_exact(eval_sample, independent->x);
    return independent_coverage_sampled(eval_sample, independent->x, num_draws,
                                        draw_seed);
  }
  return distribution_coverage(eval_sample, std::get<SetDistribution>(solution));
}

// Fairness value per community on the algorithm-side sample: sigma~_C for
// set distributions, the LP surrogate lambda_C for independent solutions.
Eigen::VectorXd algo_side_fairness(const SolutionVariant& solution,
                                   const LiveEdgeSample& algo_sample,
                                   const CommunityStructure& communities) {
  if (const auto* independent = std::get_if<IndependentSolution>(&solution)) {
    const int n = algo_sample.node_count();
    Eigen::VectorXd surrogate = Eigen::VectorXd::Zero(n);
    ReachCache cache(algo_sample);
    Eigen::VectorXd loads(n);
    for (int i = 0; i < algo_sample.size(); ++i) {
      loads.setZero();
      for (int source = 0; source < n; ++source) {
        const double x = independent->x[source];
        if (x <= 0.0) continue;
        for (int v : cache.reach(i, source)) loads[v] += x;
      }
      surrogate += algo_sample.weight(i) * loads.cwiseMin(1.0);
    }
    return group_coverage(surrogate, communities);
  }
  const auto& distribution = std::get<SetDistribution>(solution);
  return group_coverage(distribution_coverage(algo_sample, distribution), communities);
}

struct RepetitionTask {
  int graph_index = 0;
  int repetition = 0;
  int rep_id = 0;  // graph_index * repetitions + repetition
};

std::vector<CellResult> run_repetition(const ExperimentConfig& config,
                                       const Instance& instance,
                                       const RepetitionTask& task) {
  const std::uint64_t key = (static_cast<std::uint64_t>(task.graph_index) << 32) |
                            static_cast<std::uint64_t>(task.repetition);
  const std::uint64_t algo_seed =
      derive_seed(config.seed, SeedStream::kAlgorithmSample, key);
  const std::uint64_t eval_seed =
      derive_seed(config.seed, SeedStream::kEvaluationSample, key);

  const LiveEdgeSample algo_sample =
      config.exact
          ? LiveEdgeSample::enumerate_exact(instance.graph)
          : LiveEdgeSample::draw(instance.graph, config.model, config.algo_samples,
                                 algo_seed, "algo");
  const LiveEdgeSample eval_sample =
      config.exact
          ? LiveEdgeSample::enumerate_exact(instance.graph)
          : LiveEdgeSample::draw(instance.graph, config.model, config.eval_samples,
                                 eval_seed, "eval");
  if (!config.exact && (algo_sample.stream_tag() == eval_sample.stream_tag() ||
                        algo_sample.seed() == eval_sample.seed()))
    throw std::logic_error("harness: algorithm and evaluation streams overlap");

  ReachCache cache(algo_sample);
  const int n = instance.graph.node_count();

  // grdy_im's evaluated violation anchors the relative eta presets, so it
  // runs first when any are configured; its cell is reused in place.
  bool needs_greedy_anchor = false;
  for (const auto& spec : config.algorithms)
    if (spec.eta && spec.eta->kind == EtaSpec::Kind::kFractionOfGreedyViolation)
      needs_greedy_anchor = true;

  std::optional<CellResult> greedy_cell;
  double greedy_violation = 0.0;
  bool greedy_anchor_failed = false;

  auto run_cell = [&](const AlgorithmSpec& spec) {
    CellResult cell;
    cell.algorithm = spec.id;
    cell.rep = task.rep_id;
    cell.seed = config.exact ? config.seed : algo_seed;
    cell.eta_resolved = kNaN;
    cell.band_residual = kNaN;
    if (spec.eta) {
      cell.eta_label = spec.eta->label;
      cell.eta_resolved = spec.eta->resolve(greedy_violation);
      if (spec.eta->kind == EtaSpec::Kind::kFractionOfGreedyViolation &&
          greedy_anchor_failed) {
        cell.error = "grdy_im anchor failed; relative eta undefined";
        cell.coverage_ratio = kNaN;
        cell.violation_additive = kNaN;
        cell.violation_multiplicative = kNaN;
        cell.expected_size_value = kNaN;
        return cell;
      }
    }
    try {
      AlgorithmInputs inputs{cache,       instance.graph, instance.communities,
                             instance.k,  std::max(cell.eta_resolved, 0.0),
                             config.mult_weight};
      if (!spec.eta) inputs.eta = 0.0;
      const auto started = std::chrono::steady_clock::now();
      AlgorithmResult result = run_algorithm(spec.id, inputs);
      const auto finished = std::chrono::steady_clock::now();
      cell.runtime_s = std::chrono::duration<double>(finished - started).count();

      const CoverageVector coverage = evaluate_solution(
          result.solution, eval_sample, config.num_draws,
          derive_seed(config.seed, SeedStream::kIndependentDraws, key));
      cell.coverage_ratio = coverage.sum() / static_cast<double>(n);
      cell.community_coverages = group_coverage(coverage, instance.communities);
      cell.violation_additive = dp_violation_additive(cell.community_coverages);
      cell.violation_multiplicative =
          dp_violation_multiplicative(cell.community_coverages);
      cell.expected_size_value = expected_size(result.solution);
      if (result.gamma) {
        const Eigen::VectorXd fairness =
            algo_side_fairness(result.solution, algo_sample, instance.communities);
        cell.band_residual =
            (fairness.array() - *result.gamma).abs().maxCoeff() - inputs.eta;
      }
      cell.solution =
          std::make_shared<const SolutionVariant>(std::move(result.solution));
    } catch (const std::exception& failure) {
      cell.error = failure.what();
      cell.coverage_ratio = kNaN;
      cell.violation_additive = kNaN;
      cell.violation_multiplicative = kNaN;
      cell.expected_size_value = kNaN;
    }
    return cell;
  };

  if (needs_greedy_anchor) {
    for (const auto& spec : config.algorithms)
      if (spec.id == "grdy_im") {
        greedy_cell = run_cell(spec);
        if (greedy_cell->ok())
          greedy_violation = greedy_cell->violation_additive;
        else
          greedy_anchor_failed = true;
        break;
      }
  }

  std::vector<CellResult> cells;
  cells.reserve(config.algorithms.size());
  for (const auto& spec : config.algorithms) {
    if (greedy_cell && spec.id == "grdy_im") {
      cells.push_back(*greedy_cell);
      greedy_cell.reset();  // only the first listing reuses the anchor run
      continue;
    }
    cells.push_back(run_cell(spec));
  }
  return cells;
}

}  // namespace

int worker_count_from_env() {
  const char* raw = std::getenv("FAIRSPREAD_WORKERS");
  if (!raw) return 1;
  const int workers = std::atoi(raw);
  return workers >= 1 ? workers : 1;
}

EvaluationReport run_experiment(const ExperimentConfig& config) {
  config.validate();

  std::vector<Instance> instances;
  instances.reserve(static_cast<std::size_t>(config.instance.graphs));
  for (int g = 0; g < config.instance.graphs; ++g)
    instances.push_back(build_instance(config, g));

  std::vector<RepetitionTask> tasks;
  for (int g = 0; g < config.instance.graphs; ++g)
    for (int r = 0; r < config.repetitions; ++r)
      tasks.push_back({g, r, g * config.repetitions + r});

  std::vector<std::vector<CellResult>> per_task(tasks.size());
  const int workers =
      std::min<int>(worker_count_from_env(), static_cast<int>(tasks.size()));
  if (workers <= 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t)
      per_task[t] = run_repetition(config, instances[static_cast<std::size_t>(
                                               tasks[t].graph_index)],
                                   tasks[t]);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t t = next.fetch_add(1); t < tasks.size();
             t = next.fetch_add(1))
          per_task[t] = run_repetition(config, instances[static_cast<std::size_t>(
                                                   tasks[t].graph_index)],
                                       tasks[t]);
      });
    for (auto& worker : pool) worker.join();
  }

  EvaluationReport report;
  report.node_count =
      instances.empty() ? 0 : instances.front().graph.node_count();
  report.base_seed = config.seed;
  report.algo_samples = config.algo_samples;
  report.eval_samples = config.eval_samples;
  report.num_draws = config.num_draws;
  report.exact = config.exact;
  for (auto& cells : per_task)
    for (auto& cell : cells) report.cells.push_back(std::move(cell));

  // Aggregates keyed by (algorithm, eta) in first-appearance order.
  std::vector<std::pair<std::string, std::string>> keys;
  for (const auto& cell : report.cells) {
    const auto key = std::make_pair(cell.algorithm, cell.eta_label);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  const std::vector<std::pair<std::string, double CellResult::*>> metrics = {
      {"coverage_ratio", &CellResult::coverage_ratio},
      {"violation_additive", &CellResult::violation_additive},
      {"violation_multiplicative", &CellResult::violation_multiplicative},
      {"runtime_s", &CellResult::runtime_s},
  };
  for (const auto& [algorithm, eta_label] : keys) {
    for (const auto& [metric, member] : metrics) {
      std::vector<double> values;
      for (const auto& cell : report.cells)
        if (cell.algorithm == algorithm && cell.eta_label == eta_label && cell.ok())
          values.push_back(cell.*member);
      const auto [mean, half_width] = confidence_interval(values);
      report.aggregates.push_back({algorithm, eta_label, metric, mean, half_width,
                                   !std::isnan(half_width)});
    }
  }
  return report;
}

namespace {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

}  // namespace

void emit_csv(const EvaluationReport& report, std::ostream& out) {
  out << "algorithm,eta,rep,coverage_ratio,violation_additive,"
         "violation_multiplicative,runtime_s,seed\n";
  for (const auto& cell : report.cells) {
    out << cell.algorithm << ',' << cell.eta_label << ',' << cell.rep << ','
        << format_double(cell.coverage_ratio) << ','
        << format_double(cell.violation_additive) << ','
        << format_double(cell.violation_multiplicative) << ','
        << format_double(cell.runtime_s) << ',' << cell.seed << '\n';
  }
  // Aggregate block: per (algorithm, eta), a "mean" and a "ci95" row over
  // the same metric columns.
  std::vector<std::pair<std::string, std::string>> keys;
  for (const auto& aggregate : report.aggregates) {
    const auto key = std::make_pair(aggregate.algorithm, aggregate.eta_label);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  auto find = [&](const std::string& algorithm, const std::string& eta,
                  const std::string& metric, bool half) {
    for (const auto& aggregate : report.aggregates)
      if (aggregate.algorithm == algorithm && aggregate.eta_label == eta &&
          aggregate.metric == metric)
        return format_double(half ? (aggregate.has_half_width ? aggregate.half_width
                                                              : kNaN)
                                  : aggregate.mean);
    return std::string("nan");
  };
  for (const auto& [algorithm, eta] : keys) {
    for (const bool half : {false, true}) {
      out << algorithm << ',' << eta << ',' << (half ? "ci95" : "mean") << ','
          << find(algorithm, eta, "coverage_ratio", half) << ','
          << find(algorithm, eta, "violation_additive", half) << ','
          << find(algorithm, eta, "violation_multiplicative", half) << ','
          << find(algorithm, eta, "runtime_s", half) << ",\n";
    }
  }
}

std::string report_csv(const EvaluationReport& report) {
  std::ostringstream out;
  emit_csv(report, out);
  return out.str();
}

}  // namespace fairspread
