#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fairspread/graph.hpp"
#include "fairspread/rng.hpp"

using namespace fairspread;

TEST_CASE("edge list: single directed line") {
  const Graph g = load_edge_list("a b 0.5", true);
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.edge(0).src == 0);
  CHECK(g.edge(0).dst == 1);
  CHECK(g.edge(0).weight == doctest::Approx(0.5));
  CHECK(g.label(0) == "a");
  CHECK(g.node_id("b") == 1);
  CHECK(g.node_id("zzz") == -1);
}

TEST_CASE("edge list: undirected line stores both directions, weight unset") {
  const Graph g = load_edge_list("a b", false);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_unset_weights());
  CHECK(g.edge(0).src == 0);
  CHECK(g.edge(0).dst == 1);
  CHECK(g.edge(1).src == 1);
  CHECK(g.edge(1).dst == 0);
}

TEST_CASE("edge list: duplicate edges merge keeping the first weight") {
  const Graph g = load_edge_list("a b 0.3\na b 0.3\n", true);
  CHECK(g.edge_count() == 1);
  const Graph g2 = load_edge_list("a b 0.3\na b 0.7\n", true);
  CHECK(g2.edge_count() == 1);
  CHECK(g2.edge(0).weight == doctest::Approx(0.3));
}

TEST_CASE("edge list: comments, blank lines, errors carry line numbers") {
  const Graph g = load_edge_list("# header\n\na b 0.1  # trailing\nb c\n", true);
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);

  CHECK_THROWS_WITH_AS(load_edge_list("a\n", true),
                       doctest::Contains("line 1"), std::runtime_error);
  CHECK_THROWS_WITH_AS(load_edge_list("a b 0.2\nc d 1.5\n", true),
                       doctest::Contains("line 2"), std::runtime_error);
  CHECK_THROWS_AS(load_edge_list("a b x\n", true), std::runtime_error);
  CHECK_THROWS_AS(load_edge_list("a b 0.2 extra\n", true), std::runtime_error);
}

TEST_CASE("barabasi-albert: seed clique and edge counts") {
  const Graph triangle = generate_barabasi_albert(3, 2, 7);
  CHECK(triangle.node_count() == 3);
  CHECK(triangle.edge_count() == 6);  // bidirected triangle

  const Graph g = generate_barabasi_albert(50, 2, 7);
  CHECK(g.node_count() == 50);
  // clique(3) + 2 undirected edges per added node, stored bidirected.
  CHECK(g.edge_count() == 2 * (2 * 50 - 3));

  CHECK_THROWS_AS(generate_barabasi_albert(2, 2, 7), std::invalid_argument);
  CHECK_THROWS_AS(generate_barabasi_albert(5, 0, 7), std::invalid_argument);
}

TEST_CASE("barabasi-albert: deterministic under seed") {
  const Graph a = generate_barabasi_albert(40, 2, 123);
  const Graph b = generate_barabasi_albert(40, 2, 123);
  REQUIRE(a.edge_count() == b.edge_count());
  for (int e = 0; e < a.edge_count(); ++e) {
    CHECK(a.edge(e).src == b.edge(e).src);
    CHECK(a.edge(e).dst == b.edge(e).dst);
  }
  const Graph c = generate_barabasi_albert(40, 2, 124);
  bool differs = c.edge_count() != a.edge_count();
  for (int e = 0; !differs && e < a.edge_count(); ++e)
    differs = a.edge(e).src != c.edge(e).src || a.edge(e).dst != c.edge(e).dst;
  CHECK(differs);
}

TEST_CASE("uniform weights: range, determinism, symmetric pairs") {
  const Graph base = generate_barabasi_albert(30, 2, 5);
  const Graph g1 = assign_uniform_weights(base, 0.4, 11);
  const Graph g2 = assign_uniform_weights(base, 0.4, 11);
  for (int e = 0; e < g1.edge_count(); ++e) {
    CHECK(g1.edge(e).weight >= 0.0);
    CHECK(g1.edge(e).weight <= 0.4);
    CHECK(g1.edge(e).weight == g2.edge(e).weight);  // bit-identical
  }
  // Bidirected pairs share one draw.
  for (int e = 0; e < g1.edge_count(); ++e) {
    const Edge& edge = g1.edge(e);
    for (int f = 0; f < g1.edge_count(); ++f)
      if (g1.edge(f).src == edge.dst && g1.edge(f).dst == edge.src)
        CHECK(g1.edge(f).weight == edge.weight);
  }
  const Graph g3 = assign_uniform_weights(base, 0.2, 11);
  for (int e = 0; e < g3.edge_count(); ++e) CHECK(g3.edge(e).weight <= 0.2);

  CHECK_THROWS_AS(assign_uniform_weights(base, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(assign_uniform_weights(base, 1.5, 1), std::invalid_argument);
}

TEST_CASE("communities: singleton") {
  const Graph g = load_edge_list("a b\nb c\n", false);
  const CommunityStructure cs = build_communities(g, CommunityScheme::kSingleton, 0, 0);
  CHECK(cs.size() == 3);
  for (int c = 0; c < cs.size(); ++c) CHECK(cs[c].size() == 1);
}

TEST_CASE("communities: bfs target sizes and full cover") {
  const Graph g = assign_uniform_weights(generate_barabasi_albert(23, 2, 3), 0.4, 3);
  for (int m : {1, 2, 5, 7}) {
    const CommunityStructure cs = build_communities(g, CommunityScheme::kBfs, m, 9);
    REQUIRE(cs.size() == m);
    int total = 0;
    for (int c = 0; c < m; ++c) {
      const int expected = 23 / m + (c < 23 % m ? 1 : 0);
      CHECK(static_cast<int>(cs[c].size()) == expected);
      total += static_cast<int>(cs[c].size());
    }
    CHECK(total == 23);  // bfs partitions the node set
  }
  CHECK_THROWS_AS(build_communities(g, CommunityScheme::kBfs, 24, 9),
                  std::invalid_argument);
}

TEST_CASE("communities: bfs with m=1 covers V") {
  const Graph g = assign_uniform_weights(generate_barabasi_albert(12, 2, 3), 0.4, 3);
  const CommunityStructure cs = build_communities(g, CommunityScheme::kBfs, 1, 1);
  REQUIRE(cs.size() == 1);
  CHECK(static_cast<int>(cs[0].size()) == 12);
}

TEST_CASE("communities: random assignment removes empties and is deterministic") {
  const Graph g = generate_barabasi_albert(40, 2, 5);
  const CommunityStructure a = build_communities(g, CommunityScheme::kRandom, 6, 21);
  const CommunityStructure b = build_communities(g, CommunityScheme::kRandom, 6, 21);
  REQUIRE(a.size() == b.size());
  for (int c = 0; c < a.size(); ++c) CHECK(a[c] == b[c]);
  int total = 0;
  for (int c = 0; c < a.size(); ++c) {
    CHECK(!a[c].empty());
    total += static_cast<int>(a[c].size());
  }
  CHECK(total == 40);
  CHECK_THROWS_AS(build_communities(g, CommunityScheme::kRandom, 41, 1),
                  std::invalid_argument);
}

TEST_CASE("communities: random_overlap option frequencies match uniform(m+2)") {
  const int n = 100000, m = 10;
  const Graph g(n, {});
  const CommunityStructure cs =
      build_communities(g, CommunityScheme::kRandomOverlap, m, 17);
  REQUIRE(cs.size() == m);

  // Reconstruct each node's option: one community, none, or all m.
  std::vector<int> membership_count(n, 0);
  for (int c = 0; c < cs.size(); ++c)
    for (int v : cs[c]) ++membership_count[static_cast<std::size_t>(v)];
  std::vector<long> option_count(static_cast<std::size_t>(m) + 2, 0);
  std::vector<int> single_of(n, -1);
  for (int c = 0; c < cs.size(); ++c)
    for (int v : cs[c])
      if (membership_count[static_cast<std::size_t>(v)] == 1)
        single_of[static_cast<std::size_t>(v)] = c;
  for (int v = 0; v < n; ++v) {
    const int count = membership_count[static_cast<std::size_t>(v)];
    if (count == 0)
      ++option_count[static_cast<std::size_t>(m)];
    else if (count == m)
      ++option_count[static_cast<std::size_t>(m) + 1];
    else {
      REQUIRE(count == 1);
      ++option_count[static_cast<std::size_t>(single_of[static_cast<std::size_t>(v)])];
    }
  }

  const double p = 1.0 / (m + 2);
  const double standard_error = std::sqrt(p * (1.0 - p) / n);
  for (long count : option_count) {
    const double frequency = static_cast<double>(count) / n;
    CHECK(std::abs(frequency - p) <= 3.0 * standard_error);
  }
}

TEST_CASE("communities: load from text") {
  const Graph g = load_edge_list("0 1\n1 2\n", false);
  const CommunityStructure cs = load_communities(g, "0 A\n1 A\n1 B\n");
  REQUIRE(cs.size() == 2);
  CHECK(cs[0] == std::vector<int>{0, 1});
  CHECK(cs[1] == std::vector<int>{1});
  CHECK(cs.labels[0] == "A");

  CHECK_THROWS_AS(load_communities(g, ""), std::invalid_argument);
  CHECK_THROWS_WITH_AS(load_communities(g, "9 A\n"), doctest::Contains("9"),
                       std::runtime_error);

  // Covering a strict subset of V is valid.
  const CommunityStructure partial = load_communities(g, "0 A\n");
  CHECK(partial.size() == 1);
}

TEST_CASE("rng: uniform stream is reproducible and in range") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(derive_seed(1, SeedStream::kAlgorithmSample, 3) !=
        derive_seed(1, SeedStream::kEvaluationSample, 3));
  CHECK(derive_seed(1, SeedStream::kAlgorithmSample, 3) ==
        derive_seed(1, SeedStream::kAlgorithmSample, 3));
}
