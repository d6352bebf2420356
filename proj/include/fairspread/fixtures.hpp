#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fairspread/diffusion.hpp"
#include "fairspread/graph.hpp"
#include "fairspread/solutions.hpp"

namespace fairspread {

struct TheoryInstance;

// One analytic ground-truth value. Facts with a recompute hook are
// re-derived by exact enumeration at verification time; facts without one
// are proof-level bounds and are only recorded.
struct TheoryFact {
  std::string label;
  double value = 0.0;
  std::function<double(const TheoryInstance&)> recompute;
};

struct TheoryInstance {
  std::string name;
  Graph graph;
  CommunityStructure communities;
  int k = 1;
  std::vector<TheoryFact> facts;
  // Canonical solutions the facts refer to.
  std::optional<SetDistribution> fair_distribution;
  std::optional<IndependentSolution> fair_independent;
  std::optional<SeedSet> spread_optimal_set;

  double fact(const std::string& label) const;
};

// Hub v with edges to u_1..u_N at weight (1+eps)/N, singleton communities,
// k = 1. Carries the perfectly fair distribution (1/(N-eps) on {v}, the rest
// split over the leaves).
TheoryInstance star_instance(int N, double eps);

// Two nodes a -> b with weight 3/4, singleton communities, k = 1. No
// nonempty deterministic solution is fair; x = (2/3, 1/3) is.
TheoryInstance two_node_instance();

// u_1, u_2 each wired to v_1..v_N at weight 1, singleton communities, k = 1.
// p = 1/2 {u_1,u_2} + 1/2 {} is fair with spread N/2 + 1; the only fair
// independent solution is x = 0.
TheoryInstance bipartite_blowup_instance(int N);

// Disjoint halves I and J with one node w in J wired to all of I at weight
// 1, singleton communities, k = 1. Price of fairness grows linearly in n.
TheoryInstance pof_instance(int n);

struct FactCheck {
  std::string label;
  double expected = 0.0;
  double actual = 0.0;
  bool skipped = false;  // analytic-only fact or enumeration over the cap
  bool passed = false;
};

// Re-derives every recomputable fact by exact enumeration. Facts whose
// enumeration exceeds the cap come back skipped, not failed.
std::vector<FactCheck> verify_instance(const TheoryInstance& instance,
                                       double tolerance = 1e-9,
                                       int max_stochastic_edges = kDefaultEnumerationCap);

// Fixture registry for the CLI/harness: star, two_node, bipartite_blowup,
// pof. `size` is N (star, blowup) or n (pof); eps applies to star only.
TheoryInstance fixture_by_name(const std::string& name, int size, double eps);
const std::vector<std::string>& fixture_names();

}  // namespace fairspread
