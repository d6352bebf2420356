#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairspread/algorithms.hpp"
#include "fairspread/diffusion.hpp"
#include "fairspread/graph.hpp"

namespace fairspread {

// Additive demographic-parity slack, either absolute ("0", "0.25") or a
// fraction of grdy_im's evaluated violation within the repetition ("x/4").
struct EtaSpec {
  enum class Kind { kAbsolute, kFractionOfGreedyViolation };
  Kind kind = Kind::kAbsolute;
  double value = 0.0;  // the absolute eta, or the fraction (1/4 for "x/4")
  std::string label = "0";

  static EtaSpec parse(const std::string& text);
  double resolve(double greedy_violation) const;
};

struct AlgorithmSpec {
  std::string id;
  std::optional<EtaSpec> eta;  // required for the LP-backed algorithms
};

struct InstanceSpec {
  enum class Kind { kBarabasiAlbert, kFixture, kFile };
  Kind kind = Kind::kBarabasiAlbert;
  // Barabasi-Albert
  int n = 200;
  int m_attach = 2;
  int graphs = 1;  // instance seeds averaged over
  // fixture
  std::string fixture = "star";
  int fixture_size = 10;
  double fixture_eps = 0.1;
  // file
  std::string graph_path;
  std::string communities_path;  // optional; otherwise the scheme applies
  bool directed = false;
};

struct CommunitySpec {
  CommunityScheme scheme = CommunityScheme::kSingleton;
  int m = 1;
};

struct ExperimentConfig {
  InstanceSpec instance;
  DiffusionModel model = DiffusionModel::kIndependentCascade;
  double w_max = 0.4;  // drawn for graphs whose weights are unset
  CommunitySpec communities;
  int k = 25;  // fixtures use their own k
  std::vector<AlgorithmSpec> algorithms;
  int algo_samples = 1000;
  int eval_samples = 100;
  int repetitions = 10;
  int num_draws = 150;  // independent-solution evaluation draws
  bool exact = false;   // exact enumeration instead of sampled live edges
  std::uint64_t seed = 1;
  MultWeightParams mult_weight;

  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig load(const std::string& path);
  void validate() const;
};

// One (algorithm, eta, repetition) evaluation.
struct CellResult {
  std::string algorithm;
  std::string eta_label;                 // empty when eta does not apply
  double eta_resolved = 0.0;             // NaN when eta does not apply
  int rep = 0;
  std::uint64_t seed = 0;                // algorithm-side sample seed
  double coverage_ratio = 0.0;
  double violation_additive = 0.0;
  double violation_multiplicative = 0.0;  // the beta factor, in [0,1]
  double runtime_s = 0.0;                 // algorithm call only
  Eigen::VectorXd community_coverages;
  double expected_size_value = 0.0;
  // max_C |fairness value - gamma| - eta on the algorithm-side sample; NaN
  // for algorithms without an LP band.
  double band_residual = 0.0;
  std::string error;  // empty on success
  std::shared_ptr<const SolutionVariant> solution;

  bool ok() const { return error.empty(); }
};

struct Aggregate {
  std::string algorithm;
  std::string eta_label;
  std::string metric;
  double mean = 0.0;
  double half_width = 0.0;
  bool has_half_width = false;
};

struct EvaluationReport {
  int node_count = 0;
  // Provenance: base seed and sample sizes the cells were produced with.
  std::uint64_t base_seed = 0;
  int algo_samples = 0;
  int eval_samples = 0;
  int num_draws = 0;
  bool exact = false;
  std::vector<CellResult> cells;       // (graph x repetition) x algorithm order
  std::vector<Aggregate> aggregates;   // per (algorithm, eta) x metric
};

// Reproduces the experiment protocol: per repetition build the instance,
// an algorithm-side sample and an independently seeded evaluation sample
// (shared across algorithms within the repetition), run and time each
// algorithm, evaluate, and derive relative eta presets from grdy_im's
// evaluated violation. Repetitions run on FAIRSPREAD_WORKERS threads; the
// report is identical for any worker count.
EvaluationReport run_experiment(const ExperimentConfig& config);

// Normal-approximation 95% interval: (mean, 1.96 * stddev / sqrt(r)) with
// the population stddev; half-width is NaN for fewer than two values.
std::pair<double, double> confidence_interval(std::span<const double> values);

// Columns: algorithm,eta,rep,coverage_ratio,violation_additive,
// violation_multiplicative,runtime_s,seed. Data rows in deterministic cell
// order, then one aggregate block (rep = "mean" / "ci95" rows). Values are
// printed with max_digits10 so parsing them back is exact.
void emit_csv(const EvaluationReport& report, std::ostream& out);
std::string report_csv(const EvaluationReport& report);

int worker_count_from_env();

}  // namespace fairspread
