#include "fairspread/diffusion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace fairspread {

DiffusionModel diffusion_model_from_string(const std::string& name) {
  if (name == "IC" || name == "ic") return DiffusionModel::kIndependentCascade;
  if (name == "LT" || name == "lt") return DiffusionModel::kLinearThreshold;
  throw std::invalid_argument("unknown diffusion model: " + name);
}

std::string to_string(DiffusionModel model) {
  return model == DiffusionModel::kIndependentCascade ? "IC" : "LT";
}

LiveEdgeGraph LiveEdgeGraph::from_edges(int node_count,
                                        std::span<const std::pair<int, int>> live_edges) {
  LiveEdgeGraph live;
  live.offsets.assign(static_cast<std::size_t>(node_count) + 1, 0);
  for (const auto& [src, dst] : live_edges)
    ++live.offsets[static_cast<std::size_t>(src) + 1];
  for (std::size_t v = 1; v < live.offsets.size(); ++v)
    live.offsets[v] += live.offsets[v - 1];
  live.targets.resize(live_edges.size());
  std::vector<int> fill(live.offsets.begin(), live.offsets.end() - 1);
  for (const auto& [src, dst] : live_edges)
    live.targets[static_cast<std::size_t>(fill[static_cast<std::size_t>(src)]++)] = dst;
  return live;
}

namespace {

void require_weights(const Graph& graph) {
  if (graph.has_unset_weights())
    throw std::invalid_argument("diffusion: graph has unset edge weights");
}

void require_lt_feasible(const Graph& graph) {
  for (int v = 0; v < graph.node_count(); ++v) {
    double total = 0.0;
    for (int e : graph.in_edges(v)) total += graph.edge(e).weight;
    if (total > 1.0 + 1e-9)
      throw std::invalid_argument("LT model: in-weights of node " + std::to_string(v) +
                                  " sum to " + std::to_string(total) + " > 1");
  }
}

LiveEdgeGraph sample_ic(const Graph& graph, Rng& rng) {
  std::vector<std::pair<int, int>> live;
  for (const Edge& e : graph.edges())
    if (rng.uniform() < e.weight) live.emplace_back(e.src, e.dst);
  return LiveEdgeGraph::from_edges(graph.node_count(), live);
}

LiveEdgeGraph sample_lt(const Graph& graph, Rng& rng) {
  std::vector<std::pair<int, int>> live;
  for (int v = 0; v < graph.node_count(); ++v) {
    const double r = rng.uniform();
    double acc = 0.0;
    for (int e : graph.in_edges(v)) {
      acc += graph.edge(e).weight;
      if (r < acc) {
        live.emplace_back(graph.edge(e).src, v);
        break;
      }
    }
  }
  return LiveEdgeGraph::from_edges(graph.node_count(), live);
}

}  // namespace

LiveEdgeGraph sample_live_edge_graph(const Graph& graph, DiffusionModel model, Rng& rng) {
  require_weights(graph);
  if (model == DiffusionModel::kLinearThreshold) {
    require_lt_feasible(graph);
    return sample_lt(graph, rng);
  }
  return sample_ic(graph, rng);
}

LiveEdgeGraph sample_live_edge_graph(const Graph& graph, const TriggeringSampler& sampler,
                                     Rng& rng) {
  std::vector<std::pair<int, int>> live;
  std::vector<int> in_neighbors;
  for (int v = 0; v < graph.node_count(); ++v) {
    in_neighbors.clear();
    for (int e : graph.in_edges(v)) in_neighbors.push_back(graph.edge(e).src);
    for (int u : sampler(v, in_neighbors, rng)) live.emplace_back(u, v);
  }
  return LiveEdgeGraph::from_edges(graph.node_count(), live);
}

LiveEdgeSample LiveEdgeSample::draw(const Graph& graph, DiffusionModel model, int count,
                                    std::uint64_t rng_seed, std::string stream_tag) {
  if (count < 1) throw std::invalid_argument("live-edge sample: count must be >= 1");
  require_weights(graph);
  if (model == DiffusionModel::kLinearThreshold) require_lt_feasible(graph);

  LiveEdgeSample sample;
  sample.graph_ = std::make_shared<const Graph>(graph);
  sample.model_ = model;
  sample.seed_ = rng_seed;
  sample.stream_tag_ = std::move(stream_tag);
  sample.exact_ = false;
  sample.members_.reserve(static_cast<std::size_t>(count));
  Rng rng(rng_seed);
  for (int i = 0; i < count; ++i)
    sample.members_.push_back(model == DiffusionModel::kLinearThreshold
                                  ? sample_lt(graph, rng)
                                  : sample_ic(graph, rng));
  sample.weights_.assign(static_cast<std::size_t>(count), 1.0 / count);
  sample.build_masks();
  return sample;
}

LiveEdgeSample LiveEdgeSample::enumerate_exact(const Graph& graph,
                                               int max_stochastic_edges) {
  require_weights(graph);
  std::vector<int> stochastic;
  std::vector<std::pair<int, int>> deterministic;
  for (int e = 0; e < graph.edge_count(); ++e) {
    const Edge& edge = graph.edge(e);
    if (edge.weight > 0.0 && edge.weight < 1.0)
      stochastic.push_back(e);
    else if (edge.weight == 1.0)
      deterministic.emplace_back(edge.src, edge.dst);
  }
  const int s = static_cast<int>(stochastic.size());
  if (s > max_stochastic_edges)
    throw std::invalid_argument("exact enumeration: " + std::to_string(s) +
                                " stochastic edges exceed cap " +
                                std::to_string(max_stochastic_edges));

  LiveEdgeSample sample;
  sample.graph_ = std::make_shared<const Graph>(graph);
  sample.model_ = DiffusionModel::kIndependentCascade;
  sample.seed_ = 0;
  sample.stream_tag_ = "exact";
  sample.exact_ = true;

  const std::size_t outcomes = std::size_t(1) << s;
  sample.members_.reserve(outcomes);
  sample.weights_.reserve(outcomes);
  std::vector<std::pair<int, int>> live;
  for (std::size_t bits = 0; bits < outcomes; ++bits) {
    live = deterministic;
    double probability = 1.0;
    for (int j = 0; j < s; ++j) {
      const Edge& edge = graph.edge(stochastic[static_cast<std::size_t>(j)]);
      if (bits >> j & 1) {
        probability *= edge.weight;
        live.emplace_back(edge.src, edge.dst);
      } else {
        probability *= 1.0 - edge.weight;
      }
    }
    sample.members_.push_back(LiveEdgeGraph::from_edges(graph.node_count(), live));
    sample.weights_.push_back(probability);
  }
  sample.build_masks();
  return sample;
}

void LiveEdgeSample::build_masks() {
  const int n = node_count();
  if (n > 64) return;
  masks_.assign(members_.size() * static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const LiveEdgeGraph& live = members_[i];
    std::uint64_t* mask = masks_.data() + i * static_cast<std::size_t>(n);
    for (int v = 0; v < n; ++v) mask[v] = std::uint64_t(1) << v;
    // Propagate reach masks to a fixpoint; live-edge graphs may have cycles.
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < n; ++v) {
        std::uint64_t acc = mask[v];
        for (int w : live.out(v)) acc |= mask[w];
        if (acc != mask[v]) {
          mask[v] = acc;
          changed = true;
        }
      }
    }
  }
}

std::vector<int> reachable_set(const LiveEdgeGraph& live, std::span<const int> seeds) {
  const int n = live.node_count();
  std::vector<bool> visited(static_cast<std::size_t>(n), false);
  std::vector<int> queue;
  for (int s : seeds) {
    if (s < 0 || s >= n)
      throw std::invalid_argument("reachable_set: seed id out of range");
    if (!visited[static_cast<std::size_t>(s)]) {
      visited[static_cast<std::size_t>(s)] = true;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (int w : live.out(queue[head]))
      if (!visited[static_cast<std::size_t>(w)]) {
        visited[static_cast<std::size_t>(w)] = true;
        queue.push_back(w);
      }
  std::sort(queue.begin(), queue.end());
  return queue;
}

CoverageVector coverage_vector(const LiveEdgeSample& sample, std::span<const int> seeds) {
  const int n = sample.node_count();
  for (int s : seeds)
    if (s < 0 || s >= n)
      throw std::invalid_argument("coverage_vector: seed id out of range");

  CoverageVector coverage = CoverageVector::Zero(n);
  if (sample.has_masks()) {
    for (int i = 0; i < sample.size(); ++i) {
      std::uint64_t mask = 0;
      for (int s : seeds) mask |= sample.reach_mask(i, s);
      const double w = sample.weight(i);
      while (mask) {
        const int v = std::countr_zero(mask);
        coverage[v] += w;
        mask &= mask - 1;
      }
    }
    return coverage;
  }

  std::vector<bool> visited(static_cast<std::size_t>(n), false);
  std::vector<int> queue;
  for (int i = 0; i < sample.size(); ++i) {
    const LiveEdgeGraph& live = sample.member(i);
    queue.clear();
    std::fill(visited.begin(), visited.end(), false);
    for (int s : seeds)
      if (!visited[static_cast<std::size_t>(s)]) {
        visited[static_cast<std::size_t>(s)] = true;
        queue.push_back(s);
      }
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (int w : live.out(queue[head]))
        if (!visited[static_cast<std::size_t>(w)]) {
          visited[static_cast<std::size_t>(w)] = true;
          queue.push_back(w);
        }
    const double w = sample.weight(i);
    for (int v : queue) coverage[v] += w;
  }
  return coverage;
}

Eigen::VectorXd group_coverage(const CoverageVector& coverage,
                               const CommunityStructure& communities) {
  communities.validate(static_cast<int>(coverage.size()));
  Eigen::VectorXd result(communities.size());
  for (int c = 0; c < communities.size(); ++c) {
    double total = 0.0;
    for (int v : communities[c]) total += coverage[v];
    result[c] = total / static_cast<double>(communities[c].size());
  }
  return result;
}

ExactSpread exact_spread(const Graph& graph, std::span<const int> seeds,
                         int max_stochastic_edges) {
  const int n = graph.node_count();
  for (int s : seeds)
    if (s < 0 || s >= n) throw std::invalid_argument("exact_spread: seed id out of range");

  std::vector<int> stochastic;
  std::vector<std::pair<int, int>> deterministic;
  for (int e = 0; e < graph.edge_count(); ++e) {
    const Edge& edge = graph.edge(e);
    if (!edge.has_weight())
      throw std::invalid_argument("exact_spread: graph has unset edge weights");
    if (edge.weight > 0.0 && edge.weight < 1.0)
      stochastic.push_back(e);
    else if (edge.weight == 1.0)
      deterministic.emplace_back(edge.src, edge.dst);
  }
  const int s_count = static_cast<int>(stochastic.size());
  if (s_count > max_stochastic_edges)
    throw std::invalid_argument("exact_spread: " + std::to_string(s_count) +
                                " stochastic edges exceed cap " +
                                std::to_string(max_stochastic_edges));

  ExactSpread result;
  result.per_node = CoverageVector::Zero(n);
  std::vector<std::pair<int, int>> live;
  const std::size_t outcomes = std::size_t(1) << s_count;
  for (std::size_t bits = 0; bits < outcomes; ++bits) {
    live = deterministic;
    double probability = 1.0;
    for (int j = 0; j < s_count; ++j) {
      const Edge& edge = graph.edge(stochastic[static_cast<std::size_t>(j)]);
      if (bits >> j & 1) {
        probability *= edge.weight;
        live.emplace_back(edge.src, edge.dst);
      } else {
        probability *= 1.0 - edge.weight;
      }
    }
    const LiveEdgeGraph live_graph = LiveEdgeGraph::from_edges(n, live);
    for (int v : reachable_set(live_graph, seeds)) result.per_node[v] += probability;
  }
  result.total = result.per_node.sum();
  return result;
}

CoverageVector independent_coverage_exact(const LiveEdgeSample& sample,
                                          const Eigen::VectorXd& x) {
  const int n = sample.node_count();
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("independent coverage: dimension mismatch");

  CoverageVector coverage = CoverageVector::Zero(n);
  // miss[v] accumulates prod_{i reaching v} (1 - x_i) per member.
  Eigen::VectorXd miss(n);
  ReachCache cache(sample);
  for (int i = 0; i < sample.size(); ++i) {
    miss.setOnes();
    for (int source = 0; source < n; ++source) {
      if (x[source] <= 0.0) continue;
      const double keep_out = 1.0 - x[source];
      for (int v : cache.reach(i, source)) miss[v] *= keep_out;
    }
    coverage += sample.weight(i) * (1.0 - miss.array()).matrix();
  }
  return coverage;
}

CoverageVector independent_coverage_sampled(const LiveEdgeSample& sample,
                                            const Eigen::VectorXd& x, int num_draws,
                                            std::uint64_t rng_seed) {
  const int n = sample.node_count();
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("independent coverage: dimension mismatch");
  if (num_draws < 1) throw std::invalid_argument("independent coverage: num_draws >= 1");

  Rng rng(rng_seed);
  CoverageVector coverage = CoverageVector::Zero(n);
  std::vector<int> seeds;
  for (int draw = 0; draw < num_draws; ++draw) {
    seeds.clear();
    for (int v = 0; v < n; ++v)
      if (rng.uniform() < x[v]) seeds.push_back(v);
    coverage += coverage_vector(sample, seeds);
  }
  return coverage / static_cast<double>(num_draws);
}

int default_independent_draws(double delta, double eps) {
  return static_cast<int>(std::ceil(std::log(2.0 / delta) / (2.0 * eps * eps)));
}

CoverageVector distribution_coverage(const LiveEdgeSample& sample,
                                     const SetDistribution& distribution) {
  CoverageVector coverage = CoverageVector::Zero(sample.node_count());
  for (const auto& atom : distribution.support)
    coverage += atom.weight * coverage_vector(sample, atom.nodes);
  return coverage;
}

ReachCache::ReachCache(const LiveEdgeSample& sample, std::size_t memo_budget_ints)
    : sample_(sample),
      memo_(static_cast<std::size_t>(sample.size()) *
            static_cast<std::size_t>(sample.node_count())),
      memo_ready_(memo_.size(), false),
      reversed_(static_cast<std::size_t>(sample.size())),
      visited_(static_cast<std::size_t>(sample.node_count()), false),
      memo_budget_(memo_budget_ints) {}

std::span<const int> ReachCache::reach(int i, int source) {
  const std::size_t key = static_cast<std::size_t>(i) *
                              static_cast<std::size_t>(sample_.node_count()) +
                          static_cast<std::size_t>(source);
  if (memo_ready_[key]) return memo_[key];

  const LiveEdgeGraph& live = sample_.member(i);
  bfs_queue_.clear();
  bfs_queue_.push_back(source);
  visited_[static_cast<std::size_t>(source)] = true;
  for (std::size_t head = 0; head < bfs_queue_.size(); ++head)
    for (int w : live.out(bfs_queue_[head]))
      if (!visited_[static_cast<std::size_t>(w)]) {
        visited_[static_cast<std::size_t>(w)] = true;
        bfs_queue_.push_back(w);
      }
  for (int v : bfs_queue_) visited_[static_cast<std::size_t>(v)] = false;
  std::sort(bfs_queue_.begin(), bfs_queue_.end());

  if (memo_used_ + bfs_queue_.size() <= memo_budget_) {
    memo_[key] = bfs_queue_;
    memo_ready_[key] = true;
    memo_used_ += bfs_queue_.size();
    return memo_[key];
  }
  scratch_reach_ = bfs_queue_;
  return scratch_reach_;
}

std::vector<int> ReachCache::in_reach(int i, int target) {
  auto& reversed = reversed_[static_cast<std::size_t>(i)];
  if (!reversed) {
    const LiveEdgeGraph& live = sample_.member(i);
    std::vector<std::pair<int, int>> flipped;
    flipped.reserve(live.targets.size());
    for (int v = 0; v < live.node_count(); ++v)
      for (int w : live.out(v)) flipped.emplace_back(w, v);
    reversed = LiveEdgeGraph::from_edges(live.node_count(), flipped);
  }
  const int one[] = {target};
  return reachable_set(*reversed, one);
}

}  // namespace fairspread
