#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "fairspread/diffusion.hpp"
#include "fairspread/graph.hpp"
#include "fairspread/lp.hpp"
#include "fairspread/solutions.hpp"

namespace fairspread {

// Seeds in pick order with per-step marginal gains; prefixes expose
// T_0..T_k. Gains are non-increasing (lazy greedy over a monotone
// submodular objective on a fixed sample). Greedy stops early once the best
// marginal gain hits zero; later prefixes clamp to the final set.
struct GreedyTrace {
  std::vector<int> seeds;
  std::vector<double> gains;
  std::vector<double> objective;  // cumulative weighted coverage after each pick

  std::vector<int> prefix(int i) const;
  SeedSet prefix_set(int i) const;  // budget i
  double objective_at(int i) const;
};

// Lazy-greedy (CELF) maximization of sum_v weight_v * sigma~_v(S), |S| <= k;
// ties broken by lowest node id.
GreedyTrace greedy_weighted_coverage(ReachCache& cache, int k,
                                     const Eigen::VectorXd& node_weights);

// Greedy influence maximization: unit weights, prefixes up to `horizon`
// (defaults to k; the restricted-support LP asks for 2k).
GreedyTrace grdy_im(ReachCache& cache, int k, int horizon = -1);

// Greedily maximizes the minimum community coverage; ties by larger overall
// coverage, then lowest id.
SeedSet grdy_maxmin(ReachCache& cache, const CommunityStructure& communities, int k);

// Per-community greedy with budget floor(k|C_i|/n) each (input order), then
// extends greedily on overall coverage while |S| < k.
SeedSet grdy_prop(ReachCache& cache, const CommunityStructure& communities, int k);

// Max out-degree first, then repeatedly the non-seed with minimum reach
// probability; ties by lowest id.
SeedSet myopic(const Graph& graph, ReachCache& cache, int k);

// x_v = k/n for all v.
IndependentSolution uniform_solution(int n, int k);

struct MultWeightParams {
  int iterations = 0;  // 0: ceil(8 ln(max(m,2)) / 0.25)
  double step = 0.1;
};

// Multiplicative-weights maximin: weights over communities, each round a
// weighted greedy set; community weights decay by (1-step)^coverage. Returns
// the uniform distribution over the round sets (duplicates merged).
SetDistribution mult_weight_maximin(ReachCache& cache,
                                    const CommunityStructure& communities, int k,
                                    MultWeightParams params = {});

struct IndLpResult {
  IndependentSolution solution;
  double gamma = 0.0;
  LpStatus status = LpStatus::kOptimal;
};

// LP relaxation with per-(node, live-edge-graph) coverage variables:
//   max sum_v sum_L w_L y_{v,L}
//   s.t. (1/|C|) sum_{v in C} sum_L w_L y_{v,L} = gamma        for all C
//        y_{v,L} = sum_{i: v in rho_L(i)} x_i                  (eta = 0)
//        y_{v,L} in [sum_i x_i - eta, sum_i x_i]               (eta > 0)
//        1'x <= k, x in [0,1]^n, y in [0,1], gamma in [0,1].
// For eta = 0 the y's are substituted out exactly and the y<=1 caps are
// added lazily, which keeps the LP solvable at experiment scale. Setting
// force_explicit builds the full LP regardless (test cross-check).
IndLpResult ind_lp(ReachCache& cache, const CommunityStructure& communities, int k,
                   double eta, bool force_explicit = false);

struct DistributionLpResult {
  SetDistribution distribution;
  double gamma = 0.0;
  LpStatus status = LpStatus::kOptimal;
};

// Restricted-support LP over S_1 (per-community greedy sets, budget k each),
// S_2 (greedy prefixes T_0..T_2k) and the empty set:
//   max sigma~(p)  s.t.  sum p = 1, E|S| <= k,
//                        sigma~_C(p) in [gamma - eta, gamma + eta] for all C.
DistributionLpResult grdy_grp_lp(ReachCache& cache,
                                 const CommunityStructure& communities, int k,
                                 double eta);

// Mixture LP over {empty set, S_1.. S_m, q} where q is the
// multiplicative-weights maximin distribution; same constraints. The result
// is flattened (q's support expanded and scaled by its mixture weight).
DistributionLpResult maxmin_lp(ReachCache& cache,
                               const CommunityStructure& communities, int k,
                               double eta, MultWeightParams params = {});

// String-addressable algorithm surface for the experiment harness.
struct AlgorithmInputs {
  ReachCache& cache;
  const Graph& graph;
  const CommunityStructure& communities;
  int k = 1;
  double eta = 0.0;
  MultWeightParams mult_weight;
};

struct AlgorithmResult {
  SolutionVariant solution;
  std::optional<double> gamma;  // present for the LP-backed algorithms
};

const std::vector<std::string>& algorithm_ids();
bool algorithm_uses_eta(const std::string& id);
AlgorithmResult run_algorithm(const std::string& id, AlgorithmInputs& inputs);

}  // namespace fairspread
