#include <cmath>

#include "doctest.h"
#include "fairspread/diffusion.hpp"
#include "fairspread/fixtures.hpp"
#include "test_support.hpp"

using namespace fairspread;

namespace {

Graph two_node_graph() { return Graph(2, {{0, 1, 0.75}}); }

Graph chain_graph() { return Graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}); }

}  // namespace

TEST_CASE("live-edge sampling: degenerate weights") {
  Rng rng(1);
  const Graph zeros(3, {{0, 1, 0.0}, {1, 2, 0.0}});
  for (int i = 0; i < 50; ++i)
    CHECK(sample_live_edge_graph(zeros, DiffusionModel::kIndependentCascade, rng)
              .targets.empty());

  const Graph ones(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  for (int i = 0; i < 50; ++i)
    CHECK(sample_live_edge_graph(ones, DiffusionModel::kIndependentCascade, rng)
              .targets.size() == 2);
}

TEST_CASE("live-edge sampling: IC inclusion frequency concentrates") {
  const Graph g(2, {{0, 1, 0.75}});
  Rng rng(99);
  int live = 0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i)
    live += sample_live_edge_graph(g, DiffusionModel::kIndependentCascade, rng)
                .targets.empty()
                ? 0
                : 1;
  CHECK(std::abs(static_cast<double>(live) / trials - 0.75) <= 0.01);
}

TEST_CASE("live-edge sampling: LT picks at most one in-neighbor") {
  const Graph g(3, {{0, 2, 0.4}, {1, 2, 0.5}});
  Rng rng(7);
  int chose0 = 0, chose1 = 0, none = 0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    const LiveEdgeGraph live =
        sample_live_edge_graph(g, DiffusionModel::kLinearThreshold, rng);
    REQUIRE(live.targets.size() <= 1);
    if (live.targets.empty())
      ++none;
    else if (!live.out(0).empty())
      ++chose0;
    else
      ++chose1;
  }
  CHECK(std::abs(chose0 / double(trials) - 0.4) < 0.01);
  CHECK(std::abs(chose1 / double(trials) - 0.5) < 0.01);
  CHECK(std::abs(none / double(trials) - 0.1) < 0.01);

  const Graph bad(3, {{0, 2, 0.7}, {1, 2, 0.5}});
  CHECK_THROWS_WITH_AS(
      sample_live_edge_graph(bad, DiffusionModel::kLinearThreshold, rng),
      doctest::Contains("node 2"), std::invalid_argument);
}

TEST_CASE("build_sample: determinism and validation") {
  const Graph g = two_node_graph();
  const auto a = LiveEdgeSample::draw(g, DiffusionModel::kIndependentCascade, 200, 5);
  const auto b = LiveEdgeSample::draw(g, DiffusionModel::kIndependentCascade, 200, 5);
  REQUIRE(a.size() == 200);
  for (int i = 0; i < a.size(); ++i) CHECK(a.member(i).targets == b.member(i).targets);
  CHECK(a.weight(0) == doctest::Approx(1.0 / 200));
  CHECK_THROWS_AS(LiveEdgeSample::draw(g, DiffusionModel::kIndependentCascade, 0, 5),
                  std::invalid_argument);
  const Graph unweighted = load_edge_list("a b", false);
  CHECK_THROWS_AS(
      LiveEdgeSample::draw(unweighted, DiffusionModel::kIndependentCascade, 10, 5),
      std::invalid_argument);
}

TEST_CASE("reachable_set basics") {
  const LiveEdgeGraph live =
      LiveEdgeGraph::from_edges(3, std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  CHECK(reachable_set(live, {}).empty());
  const int all[] = {0, 1, 2};
  CHECK(reachable_set(live, all) == std::vector<int>{0, 1, 2});
  const int zero[] = {0};
  CHECK(reachable_set(live, zero) == std::vector<int>{0, 1, 2});
  const int one[] = {1};
  CHECK(reachable_set(live, one) == std::vector<int>{1, 2});
  const int bad[] = {5};
  CHECK_THROWS_AS(reachable_set(live, bad), std::invalid_argument);
}

TEST_CASE("exact_spread: two-outcome oracle") {
  const Graph g = two_node_graph();
  const int a[] = {0};
  const ExactSpread spread = exact_spread(g, a);
  CHECK(spread.per_node[0] == doctest::Approx(1.0));
  CHECK(spread.per_node[1] == doctest::Approx(0.75));
  CHECK(spread.total == doctest::Approx(1.75));
  CHECK(exact_spread(g, {}).total == 0.0);
}

TEST_CASE("exact_spread: star with weight 1/4 per edge") {
  std::vector<Edge> edges;
  for (int i = 1; i <= 4; ++i) edges.push_back({0, i, 0.25});
  const Graph g(5, std::move(edges));
  const int hub[] = {0};
  CHECK(exact_spread(g, hub).total == doctest::Approx(2.0));
}

TEST_CASE("exact_spread: cap counts stochastic edges only") {
  std::vector<Edge> small;
  for (int i = 1; i <= 21; ++i) small.push_back({0, i, 1.0});
  const Graph deterministic(22, std::move(small));
  const int hub[] = {0};
  CHECK(exact_spread(deterministic, hub).total == doctest::Approx(22.0));

  std::vector<Edge> wide;
  for (int i = 1; i <= 21; ++i) wide.push_back({0, i, 0.5});
  const Graph stochastic(22, std::move(wide));
  CHECK_THROWS_AS(exact_spread(stochastic, hub), std::invalid_argument);
}

TEST_CASE("coverage_vector: seeds, zero vector, exact sample equals oracle") {
  const Graph g = two_node_graph();
  const auto exact = LiveEdgeSample::enumerate_exact(g);
  REQUIRE(exact.size() == 2);
  CHECK(coverage_vector(exact, {}).sum() == 0.0);
  const int a[] = {0};
  const CoverageVector cov = coverage_vector(exact, a);
  CHECK(cov[0] == doctest::Approx(1.0));
  CHECK(cov[1] == doctest::Approx(0.75));

  const auto sampled =
      LiveEdgeSample::draw(g, DiffusionModel::kIndependentCascade, 100000, 3);
  CHECK(std::abs(coverage_vector(sampled, a).sum() - 1.75) <= 0.01);
}

TEST_CASE("coverage_vector: seeds always covered") {
  const Graph g = chain_graph();
  const auto sample = LiveEdgeSample::draw(g, DiffusionModel::kIndependentCascade, 10, 1);
  const int seeds[] = {2};
  CHECK(coverage_vector(sample, seeds)[2] == doctest::Approx(1.0));
}

TEST_CASE("coverage_vector: mask path agrees with plain BFS accumulation") {
  const Graph g = assign_uniform_weights(generate_barabasi_albert(30, 2, 9), 0.4, 9);
  const auto sample = LiveEdgeSample::draw(g, DiffusionModel::kIndependentCascade, 64, 2);
  REQUIRE(sample.has_masks());
  const int seeds[] = {0, 7, 19};
  const CoverageVector fast = coverage_vector(sample, seeds);
  CoverageVector manual = CoverageVector::Zero(g.node_count());
  for (int i = 0; i < sample.size(); ++i)
    for (int v : reachable_set(sample.member(i), seeds)) manual[v] += sample.weight(i);
  CHECK((fast - manual).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("coverage_vector: wide graphs (no masks) agree with reachable_set") {
  const Graph g = assign_uniform_weights(generate_barabasi_albert(80, 2, 9), 0.4, 9);
  const auto sample = LiveEdgeSample::draw(g, DiffusionModel::kIndependentCascade, 32, 2);
  REQUIRE(!sample.has_masks());
  const int seeds[] = {3, 41};
  const CoverageVector cov = coverage_vector(sample, seeds);
  CoverageVector manual = CoverageVector::Zero(g.node_count());
  for (int i = 0; i < sample.size(); ++i)
    for (int v : reachable_set(sample.member(i), seeds)) manual[v] += sample.weight(i);
  CHECK((cov - manual).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("monotonicity: adding seeds never lowers any reach probability") {
  const Graph g = assign_uniform_weights(generate_barabasi_albert(20, 2, 4), 0.4, 4);
  const auto sample =
      LiveEdgeSample::draw(g, DiffusionModel::kIndependentCascade, 300, 8);
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> small, large;
    for (int v = 0; v < g.node_count(); ++v) {
      const double r = rng.uniform();
      if (r < 0.15) small.push_back(v);
      if (r < 0.3) large.push_back(v);
    }
    const CoverageVector cs = coverage_vector(sample, small);
    const CoverageVector cl = coverage_vector(sample, large);
    CHECK((cl - cs).minCoeff() >= -1e-12);
  }
}

TEST_CASE("group_coverage: singleton identity and global mean") {
  const Graph g = chain_graph();
  const auto sample = LiveEdgeSample::enumerate_exact(g);
  const int zero[] = {0};
  const CoverageVector cov = coverage_vector(sample, zero);

  const CommunityStructure singles = singleton_communities(3);
  const Eigen::VectorXd per = group_coverage(cov, singles);
  for (int v = 0; v < 3; ++v) CHECK(per[v] == doctest::Approx(cov[v]));

  CommunityStructure whole;
  whole.communities = {{0, 1, 2}};
  whole.labels = {"V"};
  CHECK(group_coverage(cov, whole)[0] == doctest::Approx(cov.sum() / 3.0));
}

TEST_CASE("independent coverage: exact product form") {
  const Graph g = two_node_graph();
  const auto exact = LiveEdgeSample::enumerate_exact(g);
  Eigen::VectorXd x(2);
  x << 2.0 / 3.0, 1.0 / 3.0;
  const CoverageVector cov = independent_coverage_exact(exact, x);
  CHECK(cov[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(cov[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(cov.sum() == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

  CHECK(independent_coverage_exact(exact, Eigen::VectorXd::Zero(2)).sum() == 0.0);
}

TEST_CASE("independent coverage: sampled estimator approaches the exact value") {
  const Graph g = two_node_graph();
  const auto exact = LiveEdgeSample::enumerate_exact(g);
  Eigen::VectorXd x(2);
  x << 2.0 / 3.0, 1.0 / 3.0;
  const CoverageVector estimate = independent_coverage_sampled(exact, x, 20000, 77);
  const CoverageVector truth = independent_coverage_exact(exact, x);
  CHECK((estimate - truth).cwiseAbs().maxCoeff() <= 0.02);
  CHECK(independent_coverage_sampled(exact, Eigen::VectorXd::Zero(2), 10, 1).sum() ==
        0.0);
}

TEST_CASE("default independent draw count is the Hoeffding bound") {
  CHECK(default_independent_draws() == 150);
  CHECK(default_independent_draws(0.1, 0.1) ==
        static_cast<int>(std::ceil(std::log(20.0) / 0.02)));
}

TEST_CASE("distribution_coverage: mixtures are exact and linear") {
  const TheoryInstance star = star_instance(10, 0.1);
  const auto exact = LiveEdgeSample::enumerate_exact(star.graph);
  const CoverageVector cov = distribution_coverage(exact, *star.fair_distribution);
  CHECK(cov.sum() == doctest::Approx(11.0 / 9.9).epsilon(1e-12));

  const SetDistribution empty_mass({{{}, 1.0}}, 1);
  CHECK(distribution_coverage(exact, empty_mass).sum() == 0.0);

  // Linearity: mixing distributions mixes their coverage vectors.
  const SetDistribution hub_mass({{{0}, 1.0}}, 1);
  std::vector<SetDistribution::Atom> blended_atoms;
  for (const auto& atom : star.fair_distribution->support)
    blended_atoms.push_back({atom.nodes, 0.25 * atom.weight});
  blended_atoms.push_back({{0}, 0.75});
  const SetDistribution blended(blended_atoms, 1);
  const CoverageVector lhs = distribution_coverage(exact, blended);
  const CoverageVector rhs = 0.25 * cov + 0.75 * distribution_coverage(exact, hub_mass);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("bipartite blow-up: fair distribution spread is N/2 + 1") {
  const TheoryInstance blowup = bipartite_blowup_instance(6);
  const auto exact = LiveEdgeSample::enumerate_exact(blowup.graph);
  REQUIRE(exact.size() == 1);  // all edges deterministic
  CHECK(distribution_coverage(exact, *blowup.fair_distribution).sum() ==
        doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("reach cache: forward and inverse reach agree with reachable_set") {
  const Graph g = assign_uniform_weights(generate_barabasi_albert(25, 2, 6), 0.4, 6);
  const auto sample = LiveEdgeSample::draw(g, DiffusionModel::kIndependentCascade, 40, 3);
  ReachCache cache(sample);
  for (int i = 0; i < sample.size(); i += 7)
    for (int v = 0; v < g.node_count(); v += 3) {
      const int seed[] = {v};
      const std::vector<int> expected = reachable_set(sample.member(i), seed);
      const auto got = cache.reach(i, v);
      CHECK(std::vector<int>(got.begin(), got.end()) == expected);

      // u in in_reach(v) iff v in reach(u).
      const std::vector<int> inverse = cache.in_reach(i, v);
      for (int u = 0; u < g.node_count(); ++u) {
        const auto forward = cache.reach(i, u);
        const bool reaches =
            std::binary_search(forward.begin(), forward.end(), v);
        const bool listed = std::binary_search(inverse.begin(), inverse.end(), u);
        CHECK(reaches == listed);
      }
    }
}

TEST_CASE("oracle equivalence smoke: sampled estimate near exact spread") {
  const Graph g = two_node_graph();
  const auto sample =
      LiveEdgeSample::draw(g, DiffusionModel::kIndependentCascade, 10000, 17);
  testing::enumerate_sets(2, 2, [&](const std::vector<int>& set) {
    const double estimate = coverage_vector(sample, set).sum();
    const double truth = exact_spread(g, set).total;
    CHECK(std::abs(estimate - truth) <= 0.05 * g.node_count());
  });
}

TEST_CASE("custom triggering hook produces a live-edge graph") {
  const Graph g = chain_graph();
  Rng rng(1);
  const LiveEdgeGraph live = sample_live_edge_graph(
      g,
      [](int, std::span<const int> in_neighbors, Rng&) {
        return std::vector<int>(in_neighbors.begin(), in_neighbors.end());
      },
      rng);
  CHECK(live.targets.size() == 2);
}
