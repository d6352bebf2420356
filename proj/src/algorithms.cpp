#include "fairspread/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>

namespace fairspread {

namespace {

constexpr double kGainFloor = 1e-12;

// Incrementally maintained coverage of a growing seed set across all sample
// members; marginal gains walk the memoized per-source reach lists.
class CoverageState {
 public:
  explicit CoverageState(ReachCache& cache)
      : cache_(cache),
        n_(cache.sample().node_count()),
        covered_(static_cast<std::size_t>(cache.sample().size()) *
                     static_cast<std::size_t>(n_),
                 false),
        coverage_(Eigen::VectorXd::Zero(n_)) {}

  int node_count() const { return n_; }
  const Eigen::VectorXd& coverage() const { return coverage_; }
  double total() const { return coverage_.sum(); }

  double marginal(int v, const Eigen::VectorXd& node_weights) {
    const auto& sample = cache_.sample();
    double gain = 0.0;
    for (int i = 0; i < sample.size(); ++i) {
      const double w = sample.weight(i);
      const std::size_t base = static_cast<std::size_t>(i) * static_cast<std::size_t>(n_);
      for (int u : cache_.reach(i, v))
        if (!covered_[base + static_cast<std::size_t>(u)]) gain += w * node_weights[u];
    }
    return gain;
  }

  // Sparse per-node coverage increase if v were added; pairs (node, delta).
  void marginal_delta(int v, std::vector<std::pair<int, double>>& delta,
                      std::vector<double>& scratch) {
    const auto& sample = cache_.sample();
    delta.clear();
    for (int i = 0; i < sample.size(); ++i) {
      const double w = sample.weight(i);
      const std::size_t base = static_cast<std::size_t>(i) * static_cast<std::size_t>(n_);
      for (int u : cache_.reach(i, v))
        if (!covered_[base + static_cast<std::size_t>(u)]) {
          if (scratch[static_cast<std::size_t>(u)] == 0.0) delta.emplace_back(u, 0.0);
          scratch[static_cast<std::size_t>(u)] += w;
        }
    }
    for (auto& [u, d] : delta) {
      d = scratch[static_cast<std::size_t>(u)];
      scratch[static_cast<std::size_t>(u)] = 0.0;
    }
  }

  void add_seed(int v) {
    const auto& sample = cache_.sample();
    for (int i = 0; i < sample.size(); ++i) {
      const double w = sample.weight(i);
      const std::size_t base = static_cast<std::size_t>(i) * static_cast<std::size_t>(n_);
      for (int u : cache_.reach(i, v)) {
        const std::size_t key = base + static_cast<std::size_t>(u);
        if (!covered_[key]) {
          covered_[key] = true;
          coverage_[u] += w;
        }
      }
    }
  }

 private:
  ReachCache& cache_;
  int n_;
  std::vector<bool> covered_;
  Eigen::VectorXd coverage_;
};

Eigen::VectorXd community_indicator_weights(const CommunityStructure& communities,
                                            int c, int n) {
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(n);
  const auto& members = communities[c];
  const double w = 1.0 / static_cast<double>(members.size());
  for (int v : members) weights[v] = w;
  return weights;
}

std::vector<std::vector<int>> communities_of_node(const CommunityStructure& communities,
                                                  int n) {
  std::vector<std::vector<int>> member_of(static_cast<std::size_t>(n));
  for (int c = 0; c < communities.size(); ++c)
    for (int v : communities[c]) member_of[static_cast<std::size_t>(v)].push_back(c);
  return member_of;
}

}  // namespace

std::vector<int> GreedyTrace::prefix(int i) const {
  const int take = std::min<int>(i, static_cast<int>(seeds.size()));
  std::vector<int> result(seeds.begin(), seeds.begin() + take);
  std::sort(result.begin(), result.end());
  return result;
}

SeedSet GreedyTrace::prefix_set(int i) const { return SeedSet(prefix(i), i); }

double GreedyTrace::objective_at(int i) const {
  if (i <= 0 || objective.empty()) return 0.0;
  const int take = std::min<int>(i, static_cast<int>(objective.size()));
  return objective[static_cast<std::size_t>(take) - 1];
}

GreedyTrace greedy_weighted_coverage(ReachCache& cache, int k,
                                     const Eigen::VectorXd& node_weights) {
  if (k < 0) throw std::invalid_argument("greedy: k must be >= 0");
  const int n = cache.sample().node_count();
  if (static_cast<int>(node_weights.size()) != n)
    throw std::invalid_argument("greedy: weight vector dimension mismatch");
  if (node_weights.minCoeff() < 0.0)
    throw std::invalid_argument("greedy: node weights must be >= 0");

  GreedyTrace trace;
  if (k == 0) return trace;

  CoverageState state(cache);
  // CELF queue: (gain, -node, step-at-computation); stale entries get
  // refreshed when popped.
  std::priority_queue<std::tuple<double, int, int>> queue;
  for (int v = 0; v < n; ++v)
    queue.push({state.marginal(v, node_weights), -v, 0});

  double running = 0.0;
  while (static_cast<int>(trace.seeds.size()) < k && !queue.empty()) {
    auto [gain, negated, step] = queue.top();
    queue.pop();
    const int v = -negated;
    if (step != static_cast<int>(trace.seeds.size())) {
      queue.push({state.marginal(v, node_weights), negated,
                  static_cast<int>(trace.seeds.size())});
      continue;
    }
    if (gain <= kGainFloor) break;  // nothing left to gain
    state.add_seed(v);
    running += gain;
    trace.seeds.push_back(v);
    trace.gains.push_back(gain);
    trace.objective.push_back(running);
  }
  return trace;
}

GreedyTrace grdy_im(ReachCache& cache, int k, int horizon) {
  return greedy_weighted_coverage(
      cache, std::max(k, horizon),
      Eigen::VectorXd::Ones(cache.sample().node_count()));
}

SeedSet grdy_maxmin(ReachCache& cache, const CommunityStructure& communities, int k) {
  if (k < 1) throw std::invalid_argument("grdy_maxmin: k must be >= 1");
  const int n = cache.sample().node_count();
  communities.validate(n);
  const auto member_of = communities_of_node(communities, n);
  const int m = communities.size();

  CoverageState state(cache);
  Eigen::VectorXd community_cov = Eigen::VectorXd::Zero(m);
  std::vector<bool> seeded(static_cast<std::size_t>(n), false);
  std::vector<int> seeds;
  std::vector<std::pair<int, double>> delta;
  std::vector<double> scratch(static_cast<std::size_t>(n), 0.0);
  Eigen::VectorXd candidate_cov(m);

  for (int step = 0; step < std::min(k, n); ++step) {
    int best = -1;
    double best_min = -1.0, best_total = -1.0;
    for (int v = 0; v < n; ++v) {
      if (seeded[static_cast<std::size_t>(v)]) continue;
      state.marginal_delta(v, delta, scratch);
      candidate_cov = community_cov;
      double total_gain = 0.0;
      for (const auto& [u, d] : delta) {
        total_gain += d;
        for (int c : member_of[static_cast<std::size_t>(u)])
          candidate_cov[c] += d / static_cast<double>(communities[c].size());
      }
      const double min_cov = candidate_cov.minCoeff();
      const double total = state.total() + total_gain;
      if (min_cov > best_min + kGainFloor ||
          (min_cov > best_min - kGainFloor && total > best_total + kGainFloor)) {
        best = v;
        best_min = min_cov;
        best_total = total;
      }
    }
    if (best < 0) break;
    state.marginal_delta(best, delta, scratch);
    for (const auto& [u, d] : delta)
      for (int c : member_of[static_cast<std::size_t>(u)])
        community_cov[c] += d / static_cast<double>(communities[c].size());
    state.add_seed(best);
    seeded[static_cast<std::size_t>(best)] = true;
    seeds.push_back(best);
  }
  return SeedSet(std::move(seeds), k);
}

SeedSet grdy_prop(ReachCache& cache, const CommunityStructure& communities, int k) {
  const int n = cache.sample().node_count();
  communities.validate(n);

  CoverageState state(cache);
  std::vector<bool> seeded(static_cast<std::size_t>(n), false);
  std::vector<int> seeds;

  auto greedy_fill = [&](const Eigen::VectorXd& weights, int budget) {
    for (int pick = 0; pick < budget; ++pick) {
      int best = -1;
      double best_gain = kGainFloor;
      for (int v = 0; v < n; ++v) {
        if (seeded[static_cast<std::size_t>(v)]) continue;
        const double gain = state.marginal(v, weights);
        if (gain > best_gain + kGainFloor) {
          best = v;
          best_gain = gain;
        }
      }
      if (best < 0) return;  // zero marginal gain everywhere
      state.add_seed(best);
      seeded[static_cast<std::size_t>(best)] = true;
      seeds.push_back(best);
    }
  };

  for (int c = 0; c < communities.size(); ++c) {
    const int budget =
        static_cast<int>((static_cast<long long>(k) * communities[c].size()) / n);
    if (budget == 0) continue;
    greedy_fill(community_indicator_weights(communities, c, n), budget);
  }
  if (static_cast<int>(seeds.size()) < k)
    greedy_fill(Eigen::VectorXd::Ones(n), k - static_cast<int>(seeds.size()));
  return SeedSet(std::move(seeds), k);
}

SeedSet myopic(const Graph& graph, ReachCache& cache, int k) {
  if (k < 1) throw std::invalid_argument("myopic: k must be >= 1");
  const int n = graph.node_count();

  CoverageState state(cache);
  std::vector<bool> seeded(static_cast<std::size_t>(n), false);
  std::vector<int> seeds;

  int hub = 0;
  for (int v = 1; v < n; ++v)
    if (graph.out_degree(v) > graph.out_degree(hub)) hub = v;
  state.add_seed(hub);
  seeded[static_cast<std::size_t>(hub)] = true;
  seeds.push_back(hub);

  while (static_cast<int>(seeds.size()) < std::min(k, n)) {
    int best = -1;
    double best_cov = 2.0;
    for (int v = 0; v < n; ++v) {
      if (seeded[static_cast<std::size_t>(v)]) continue;
      if (state.coverage()[v] < best_cov) {
        best_cov = state.coverage()[v];
        best = v;
      }
    }
    state.add_seed(best);
    seeded[static_cast<std::size_t>(best)] = true;
    seeds.push_back(best);
  }
  return SeedSet(std::move(seeds), k);
}

IndependentSolution uniform_solution(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("uniform_solution: need 0 <= k <= n");
  return IndependentSolution(
      Eigen::VectorXd::Constant(n, static_cast<double>(k) / static_cast<double>(n)), k);
}

SetDistribution mult_weight_maximin(ReachCache& cache,
                                    const CommunityStructure& communities, int k,
                                    MultWeightParams params) {
  const int n = cache.sample().node_count();
  communities.validate(n);
  if (!(params.step > 0.0 && params.step < 1.0))
    throw std::invalid_argument("mult_weight: step must be in (0,1)");
  const int m = communities.size();
  const int rounds =
      params.iterations > 0
          ? params.iterations
          : static_cast<int>(std::ceil(8.0 * std::log(std::max(m, 2)) / 0.25));
  if (rounds < 1) throw std::invalid_argument("mult_weight: iterations must be >= 1");

  const auto member_of = communities_of_node(communities, n);
  Eigen::VectorXd community_weight = Eigen::VectorXd::Constant(m, 1.0 / m);
  Eigen::VectorXd node_weights(n);

  std::vector<SetDistribution::Atom> atoms;
  for (int t = 0; t < rounds; ++t) {
    node_weights.setZero();
    for (int v = 0; v < n; ++v)
      for (int c : member_of[static_cast<std::size_t>(v)])
        node_weights[v] += community_weight[c] / static_cast<double>(communities[c].size());
    const GreedyTrace trace = greedy_weighted_coverage(cache, k, node_weights);
    const std::vector<int> chosen = trace.prefix(k);
    atoms.push_back({chosen, 1.0 / rounds});

    const Eigen::VectorXd group_cov =
        group_coverage(coverage_vector(cache.sample(), chosen), communities);
    for (int c = 0; c < m; ++c)
      community_weight[c] *= std::pow(1.0 - params.step, group_cov[c]);
    community_weight /= community_weight.sum();
  }
  return SetDistribution(std::move(atoms), k);
}

namespace {

// Per-community greedy optima, budget k each (the LP supports' S_1).
std::vector<std::vector<int>> community_greedy_sets(
    ReachCache& cache, const CommunityStructure& communities, int k) {
  const int n = cache.sample().node_count();
  std::vector<std::vector<int>> sets;
  sets.reserve(static_cast<std::size_t>(communities.size()));
  for (int c = 0; c < communities.size(); ++c) {
    const GreedyTrace trace = greedy_weighted_coverage(
        cache, k, community_indicator_weights(communities, c, n));
    sets.push_back(trace.prefix(k));
  }
  return sets;
}

struct SupportColumn {
  double spread = 0.0;            // sigma~ of the column
  Eigen::VectorXd group_cov;      // sigma~_C of the column
  double expected_size = 0.0;
};

SupportColumn column_for_set(const LiveEdgeSample& sample,
                             const CommunityStructure& communities,
                             const std::vector<int>& nodes) {
  SupportColumn column;
  const CoverageVector cov = coverage_vector(sample, nodes);
  column.spread = cov.sum();
  column.group_cov = group_coverage(cov, communities);
  column.expected_size = static_cast<double>(nodes.size());
  return column;
}

// Shared fairness-band LP over explicit support columns. Returns the chosen
// weights (aligned with columns) and gamma.
struct SupportLpResult {
  Eigen::VectorXd weights;
  double gamma = 0.0;
  LpStatus status = LpStatus::kOptimal;
};

SupportLpResult solve_support_lp(const std::vector<SupportColumn>& columns, int k,
                                 double eta, int m) {
  LinearProgram lp;
  const int count = static_cast<int>(columns.size());
  for (int s = 0; s < count; ++s)
    lp.add_variable(0.0, 1.0, columns[static_cast<std::size_t>(s)].spread,
                    "p" + std::to_string(s));
  const int gamma = lp.add_variable(0.0, 1.0, 0.0, "gamma");

  std::vector<std::pair<int, double>> row;
  for (int s = 0; s < count; ++s) row.emplace_back(s, 1.0);
  lp.add_constraint(row, Relation::kEqual, 1.0, "mass");

  row.clear();
  for (int s = 0; s < count; ++s)
    row.emplace_back(s, columns[static_cast<std::size_t>(s)].expected_size);
  lp.add_constraint(row, Relation::kLessEqual, static_cast<double>(k), "size");

  for (int c = 0; c < m; ++c) {
    row.clear();
    for (int s = 0; s < count; ++s) {
      const double coeff = columns[static_cast<std::size_t>(s)].group_cov[c];
      if (coeff != 0.0) row.emplace_back(s, coeff);
    }
    row.emplace_back(gamma, -1.0);
    if (eta == 0.0) {
      lp.add_constraint(row, Relation::kEqual, 0.0, "fair" + std::to_string(c));
    } else {
      lp.add_constraint(row, Relation::kLessEqual, eta, "fair_hi" + std::to_string(c));
      lp.add_constraint(row, Relation::kGreaterEqual, -eta, "fair_lo" + std::to_string(c));
    }
  }

  const LpSolution solution = solve(lp);
  SupportLpResult result;
  result.status = solution.status;
  if (solution.status != LpStatus::kOptimal)
    throw std::runtime_error("support LP: solver returned " + to_string(solution.status));
  result.weights = solution.primal.head(count);
  result.gamma = solution.primal[gamma];
  return result;
}

SetDistribution distribution_from_atoms(std::vector<SetDistribution::Atom> atoms, int k) {
  // The LP satisfies sum p = 1 only to its tolerance; rescale exactly.
  double total = 0.0;
  for (const auto& atom : atoms) total += atom.weight;
  if (total <= 0.0) return SetDistribution({{{}, 1.0}}, k);
  for (auto& atom : atoms) atom.weight /= total;
  return SetDistribution(std::move(atoms), k);
}

}  // namespace

DistributionLpResult grdy_grp_lp(ReachCache& cache,
                                 const CommunityStructure& communities, int k,
                                 double eta) {
  if (eta < 0.0) throw std::invalid_argument("grdy_grp_lp: eta must be >= 0");
  const auto& sample = cache.sample();
  communities.validate(sample.node_count());

  std::set<std::vector<int>> support;
  support.insert({});  // the empty set keeps every fairness level feasible
  for (auto& set : community_greedy_sets(cache, communities, k))
    support.insert(std::move(set));
  const GreedyTrace trace = grdy_im(cache, k, 2 * k);
  for (int i = 0; i <= 2 * k; ++i) support.insert(trace.prefix(i));

  std::vector<std::vector<int>> sets(support.begin(), support.end());
  std::vector<SupportColumn> columns;
  columns.reserve(sets.size());
  for (const auto& nodes : sets)
    columns.push_back(column_for_set(sample, communities, nodes));

  const SupportLpResult lp = solve_support_lp(columns, k, eta, communities.size());
  std::vector<SetDistribution::Atom> atoms;
  for (std::size_t s = 0; s < sets.size(); ++s)
    if (lp.weights[static_cast<Eigen::Index>(s)] > 1e-12)
      atoms.push_back({sets[s], lp.weights[static_cast<Eigen::Index>(s)]});

  DistributionLpResult result;
  result.distribution = distribution_from_atoms(std::move(atoms), k);
  result.gamma = lp.gamma;
  result.status = lp.status;
  return result;
}

DistributionLpResult maxmin_lp(ReachCache& cache, const CommunityStructure& communities,
                               int k, double eta, MultWeightParams params) {
  if (eta < 0.0) throw std::invalid_argument("maxmin_lp: eta must be >= 0");
  const auto& sample = cache.sample();
  communities.validate(sample.node_count());

  const SetDistribution q = mult_weight_maximin(cache, communities, k, params);

  std::vector<std::vector<int>> sets;
  sets.push_back({});
  {
    std::set<std::vector<int>> dedup;
    for (auto& set : community_greedy_sets(cache, communities, k))
      if (!set.empty() && dedup.insert(set).second) sets.push_back(std::move(set));
  }

  std::vector<SupportColumn> columns;
  columns.reserve(sets.size() + 1);
  for (const auto& nodes : sets)
    columns.push_back(column_for_set(sample, communities, nodes));

  // q enters as one aggregated column.
  SupportColumn q_column;
  const CoverageVector q_cov = distribution_coverage(sample, q);
  q_column.spread = q_cov.sum();
  q_column.group_cov = group_coverage(q_cov, communities);
  q_column.expected_size = expected_size(q);
  columns.push_back(q_column);

  const SupportLpResult lp = solve_support_lp(columns, k, eta, communities.size());

  std::vector<SetDistribution::Atom> atoms;
  for (std::size_t s = 0; s < sets.size(); ++s)
    if (lp.weights[static_cast<Eigen::Index>(s)] > 1e-12)
      atoms.push_back({sets[s], lp.weights[static_cast<Eigen::Index>(s)]});
  const double q_weight = lp.weights[static_cast<Eigen::Index>(sets.size())];
  if (q_weight > 1e-12)
    for (const auto& atom : q.support)
      atoms.push_back({atom.nodes, q_weight * atom.weight});

  DistributionLpResult result;
  result.distribution = distribution_from_atoms(std::move(atoms), k);
  result.gamma = lp.gamma;
  result.status = lp.status;
  return result;
}

namespace {

// Exact eta = 0 reduction of the ind_lp program: y_{v,L} is forced to
// s_{v,L} = sum_{i: v in rho_L(i)} x_i, so fairness rows and the objective
// become linear in x and y in [0,1] becomes cover caps s_{v,L} <= 1,
// generated lazily and certified against every (v, L) pair at the end.
IndLpResult ind_lp_reduced(ReachCache& cache, const CommunityStructure& communities,
                           int k) {
  const auto& sample = cache.sample();
  const int n = sample.node_count();
  const int m = communities.size();

  // pair_cov(v, i) = sum_L w_L [v in rho_L(i)] = sigma~_v({i}).
  Eigen::MatrixXd pair_cov = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < sample.size(); ++i) {
    const double w = sample.weight(i);
    for (int source = 0; source < n; ++source)
      for (int v : cache.reach(i, source)) pair_cov(v, source) += w;
  }

  LinearProgram lp;
  for (int i = 0; i < n; ++i)
    lp.add_variable(0.0, 1.0, pair_cov.col(i).sum(), "x" + std::to_string(i));
  const int gamma = lp.add_variable(0.0, 1.0, 0.0, "gamma");

  std::vector<std::pair<int, double>> row;
  for (int c = 0; c < m; ++c) {
    row.clear();
    for (int i = 0; i < n; ++i) {
      double coeff = 0.0;
      for (int v : communities[c]) coeff += pair_cov(v, i);
      coeff /= static_cast<double>(communities[c].size());
      if (coeff != 0.0) row.emplace_back(i, coeff);
    }
    row.emplace_back(gamma, -1.0);
    lp.add_constraint(row, Relation::kEqual, 0.0, "fair" + std::to_string(c));
  }
  row.clear();
  for (int i = 0; i < n; ++i) row.emplace_back(i, 1.0);
  lp.add_constraint(row, Relation::kLessEqual, static_cast<double>(k), "budget");

  std::set<std::vector<int>> cap_rows;
  LpSolution solution;
  Eigen::VectorXd loads(n);
  for (int round = 0;; ++round) {
    if (round > 200)
      throw std::runtime_error("ind_lp: cover-cap generation failed to converge");
    solution = solve(lp);
    if (solution.status != LpStatus::kOptimal)
      throw std::runtime_error("ind_lp: solver returned " + to_string(solution.status));

    // Separate y <= 1: every (v, L) with sum_{i reaching v} x_i > 1 yields a
    // new cap row (deduplicated by the reacher set).
    int added = 0;
    for (int i = 0; i < sample.size(); ++i) {
      loads.setZero();
      for (int source = 0; source < n; ++source) {
        const double x = solution.primal[source];
        if (x <= 1e-12) continue;
        for (int v : cache.reach(i, source)) loads[v] += x;
      }
      for (int v = 0; v < n; ++v) {
        if (loads[v] <= 1.0 + 1e-6) continue;
        std::vector<int> reachers = cache.in_reach(i, v);
        if (!cap_rows.insert(reachers).second) continue;
        row.clear();
        for (int source : reachers) row.emplace_back(source, 1.0);
        lp.add_constraint(row, Relation::kLessEqual, 1.0,
                          "cap" + std::to_string(cap_rows.size()));
        ++added;
      }
    }
    if (added == 0) break;
  }

  IndLpResult result;
  result.solution = IndependentSolution(solution.primal.head(n), k);
  result.gamma = solution.primal[gamma];
  result.status = solution.status;
  return result;
}

IndLpResult ind_lp_explicit(ReachCache& cache, const CommunityStructure& communities,
                            int k, double eta) {
  const auto& sample = cache.sample();
  const int n = sample.node_count();
  const int m = communities.size();
  const long long y_count = static_cast<long long>(n) * sample.size();
  const long long rows = (eta > 0.0 ? 2 : 1) * y_count + m + 1;
  const long long cols = y_count + n + 1 + rows;
  if (rows * cols > (1LL << 28))
    throw std::runtime_error(
        "ind_lp: explicit LP too large at this scale; use eta = 0 (reduced "
        "formulation) or a smaller sample");

  LinearProgram lp;
  for (int i = 0; i < n; ++i) lp.add_variable(0.0, 1.0, 0.0, "x" + std::to_string(i));
  const int gamma = lp.add_variable(0.0, 1.0, 0.0, "gamma");
  // y index: member * n + v.
  std::vector<int> y_var(static_cast<std::size_t>(y_count));
  for (int i = 0; i < sample.size(); ++i)
    for (int v = 0; v < n; ++v)
      y_var[static_cast<std::size_t>(i) * n + v] = lp.add_variable(
          0.0, 1.0, sample.weight(i),
          "y_" + std::to_string(v) + "_" + std::to_string(i));

  std::vector<std::pair<int, double>> row;
  for (int i = 0; i < sample.size(); ++i)
    for (int v = 0; v < n; ++v) {
      row.clear();
      for (int source : cache.in_reach(i, v)) row.emplace_back(source, 1.0);
      row.emplace_back(y_var[static_cast<std::size_t>(i) * n + v], -1.0);
      if (eta == 0.0) {
        lp.add_constraint(row, Relation::kEqual, 0.0);
      } else {
        // y in [sum x - eta, sum x]: sum x - y >= 0 and sum x - y <= eta.
        lp.add_constraint(row, Relation::kGreaterEqual, 0.0);
        lp.add_constraint(row, Relation::kLessEqual, eta);
      }
    }

  for (int c = 0; c < m; ++c) {
    row.clear();
    const double scale = 1.0 / static_cast<double>(communities[c].size());
    for (int v : communities[c])
      for (int i = 0; i < sample.size(); ++i)
        row.emplace_back(y_var[static_cast<std::size_t>(i) * n + v],
                         scale * sample.weight(i));
    row.emplace_back(gamma, -1.0);
    lp.add_constraint(row, Relation::kEqual, 0.0, "fair" + std::to_string(c));
  }
  row.clear();
  for (int i = 0; i < n; ++i) row.emplace_back(i, 1.0);
  lp.add_constraint(row, Relation::kLessEqual, static_cast<double>(k), "budget");

  const LpSolution solution = solve(lp);
  if (solution.status != LpStatus::kOptimal)
    throw std::runtime_error("ind_lp: solver returned " + to_string(solution.status));

  IndLpResult result;
  result.solution = IndependentSolution(solution.primal.head(n), k);
  result.gamma = solution.primal[gamma];
  result.status = solution.status;
  return result;
}

}  // namespace

IndLpResult ind_lp(ReachCache& cache, const CommunityStructure& communities, int k,
                   double eta, bool force_explicit) {
  if (eta < 0.0 || eta >= 1.0) throw std::invalid_argument("ind_lp: eta must be in [0,1)");
  communities.validate(cache.sample().node_count());
  if (eta == 0.0 && !force_explicit) return ind_lp_reduced(cache, communities, k);
  return ind_lp_explicit(cache, communities, k, eta);
}

const std::vector<std::string>& algorithm_ids() {
  static const std::vector<std::string> ids = {
      "grdy_im",     "grdy_maxmin", "grdy_prop", "myopic",    "uniform",
      "mult_weight", "ind_lp",      "grdy_grp+lp", "maxmin+lp"};
  return ids;
}

bool algorithm_uses_eta(const std::string& id) {
  return id == "ind_lp" || id == "grdy_grp+lp" || id == "maxmin+lp";
}

AlgorithmResult run_algorithm(const std::string& id, AlgorithmInputs& in) {
  if (id == "grdy_im")
    return {grdy_im(in.cache, in.k).prefix_set(in.k), std::nullopt};
  if (id == "grdy_maxmin")
    return {grdy_maxmin(in.cache, in.communities, in.k), std::nullopt};
  if (id == "grdy_prop")
    return {grdy_prop(in.cache, in.communities, in.k), std::nullopt};
  if (id == "myopic") return {myopic(in.graph, in.cache, in.k), std::nullopt};
  if (id == "uniform")
    return {uniform_solution(in.graph.node_count(), in.k), std::nullopt};
  if (id == "mult_weight")
    return {mult_weight_maximin(in.cache, in.communities, in.k, in.mult_weight),
            std::nullopt};
  if (id == "ind_lp") {
    IndLpResult result = ind_lp(in.cache, in.communities, in.k, in.eta);
    return {std::move(result.solution), result.gamma};
  }
  if (id == "grdy_grp+lp") {
    DistributionLpResult result = grdy_grp_lp(in.cache, in.communities, in.k, in.eta);
    return {std::move(result.distribution), result.gamma};
  }
  if (id == "maxmin+lp") {
    DistributionLpResult result =
        maxmin_lp(in.cache, in.communities, in.k, in.eta, in.mult_weight);
    return {std::move(result.distribution), result.gamma};
  }
  throw std::invalid_argument("unknown algorithm id: " + id);
}

}  // namespace fairspread
