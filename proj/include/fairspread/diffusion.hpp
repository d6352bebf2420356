#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairspread/graph.hpp"
#include "fairspread/rng.hpp"
#include "fairspread/solutions.hpp"

namespace fairspread {

enum class DiffusionModel { kIndependentCascade, kLinearThreshold };

DiffusionModel diffusion_model_from_string(const std::string& name);
std::string to_string(DiffusionModel model);

// Per-node reach probabilities sigma_v; sigma(S) is the sum.
using CoverageVector = Eigen::VectorXd;

// One sampled outcome of the triggering sets: the subgraph of live edges,
// stored as CSR out-adjacency. Under LT every node has at most one live
// in-edge.
struct LiveEdgeGraph {
  std::vector<int> offsets;  // size n+1
  std::vector<int> targets;

  int node_count() const { return static_cast<int>(offsets.size()) - 1; }
  std::span<const int> out(int v) const {
    return {targets.data() + offsets[static_cast<std::size_t>(v)],
            static_cast<std::size_t>(offsets[static_cast<std::size_t>(v) + 1] -
                                     offsets[static_cast<std::size_t>(v)])};
  }
  static LiveEdgeGraph from_edges(int node_count,
                                  std::span<const std::pair<int, int>> live_edges);
};

LiveEdgeGraph sample_live_edge_graph(const Graph& graph, DiffusionModel model,
                                     Rng& rng);

// Generic triggering hook: per node, returns the sampled triggering set among
// the node's in-neighbors. Exposed for custom models; untested surface.
using TriggeringSampler =
    std::function<std::vector<int>(int node, std::span<const int> in_neighbors, Rng& rng)>;
LiveEdgeGraph sample_live_edge_graph(const Graph& graph,
                                     const TriggeringSampler& sampler, Rng& rng);

constexpr int kDefaultEnumerationCap = 20;

// A weighted collection M of live-edge graphs from one graph and model.
// Sampled collections carry uniform weights 1/|M|; exact collections
// enumerate every outcome of the stochastic edges (weight strictly inside
// (0,1)) with its probability, so estimators on them are exact.
// Immutable after construction.
class LiveEdgeSample {
 public:
  static LiveEdgeSample draw(const Graph& graph, DiffusionModel model, int count,
                             std::uint64_t rng_seed, std::string stream_tag = "sample");
  // IC only; refuses when the stochastic edge count exceeds the cap.
  static LiveEdgeSample enumerate_exact(const Graph& graph, int max_stochastic_edges = 16);

  int size() const { return static_cast<int>(members_.size()); }
  int node_count() const { return graph_->node_count(); }
  const LiveEdgeGraph& member(int i) const { return members_[static_cast<std::size_t>(i)]; }
  double weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }
  const Graph& graph() const { return *graph_; }
  DiffusionModel model() const { return model_; }
  std::uint64_t seed() const { return seed_; }
  const std::string& stream_tag() const { return stream_tag_; }
  bool exact() const { return exact_; }

  // Per-source reachability bitmasks, precomputed when n <= 64.
  bool has_masks() const { return !masks_.empty(); }
  std::uint64_t reach_mask(int i, int source) const {
    return masks_[static_cast<std::size_t>(i) * static_cast<std::size_t>(node_count()) +
                  static_cast<std::size_t>(source)];
  }

 private:
  LiveEdgeSample() = default;
  void build_masks();

  std::shared_ptr<const Graph> graph_;
  std::vector<LiveEdgeGraph> members_;
  std::vector<double> weights_;
  std::vector<std::uint64_t> masks_;  // member-major, empty when n > 64
  DiffusionModel model_ = DiffusionModel::kIndependentCascade;
  std::uint64_t seed_ = 0;
  std::string stream_tag_;
  bool exact_ = false;
};

// Exact forward reachability from seeds (seeds included), sorted.
std::vector<int> reachable_set(const LiveEdgeGraph& live, std::span<const int> seeds);

// sigma~_v(S): weighted fraction of members in which v is reached from S.
CoverageVector coverage_vector(const LiveEdgeSample& sample, std::span<const int> seeds);

// sigma~_C per community: mean of sigma~_v over members of C.
Eigen::VectorXd group_coverage(const CoverageVector& coverage,
                               const CommunityStructure& communities);

struct ExactSpread {
  CoverageVector per_node;
  double total = 0.0;
};

// Exact sigma_v(S) under IC by enumerating every outcome of the stochastic
// edges; deterministic edges (weight 0 or 1) do not multiply outcomes.
ExactSpread exact_spread(const Graph& graph, std::span<const int> seeds,
                         int max_stochastic_edges = kDefaultEnumerationCap);

// Exact per-node coverage of independent marginals x on the given sample:
//   q_v(L, x) = 1 - prod_{i reaching v in L} (1 - x_i), averaged over members.
CoverageVector independent_coverage_exact(const LiveEdgeSample& sample,
                                          const Eigen::VectorXd& x);

// Sampling evaluation of independent marginals per the experiment protocol:
// num_draws seed sets S ~ x, coverage averaged across draws.
CoverageVector independent_coverage_sampled(const LiveEdgeSample& sample,
                                            const Eigen::VectorXd& x, int num_draws,
                                            std::uint64_t rng_seed);

// ceil(ln(2/delta) / (2 eps^2)); 150 for delta = eps = 0.1.
int default_independent_draws(double delta = 0.1, double eps = 0.1);

// Exact mixture over the support; no extra sampling.
CoverageVector distribution_coverage(const LiveEdgeSample& sample,
                                     const SetDistribution& distribution);

// Memoized per-source reachability over one sample. Built per algorithm run
// (not shared across threads); spans stay valid for the cache's lifetime
// while memoization is within budget, otherwise until the next call.
class ReachCache {
 public:
  explicit ReachCache(const LiveEdgeSample& sample,
                      std::size_t memo_budget_ints = std::size_t(1) << 27);

  const LiveEdgeSample& sample() const { return sample_; }
  // Sorted nodes reachable from source in member i (source included).
  std::span<const int> reach(int i, int source);
  // Sorted nodes that reach target in member i (target included).
  std::vector<int> in_reach(int i, int target);

 private:
  const LiveEdgeSample& sample_;
  std::vector<std::vector<int>> memo_;        // (member, source) -> reach
  std::vector<bool> memo_ready_;
  std::vector<std::optional<LiveEdgeGraph>> reversed_;
  std::vector<int> scratch_reach_;
  std::vector<int> bfs_queue_;
  std::vector<bool> visited_;
  std::size_t memo_budget_;
  std::size_t memo_used_ = 0;
};

}  // namespace fairspread
