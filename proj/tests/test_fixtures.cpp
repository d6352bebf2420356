#include <cmath>

#include "doctest.h"
#include "fairspread/fixtures.hpp"

using namespace fairspread;

namespace {

void check_all_pass(const TheoryInstance& instance) {
  int verified = 0;
  for (const FactCheck& check : verify_instance(instance)) {
    INFO(instance.name, ": ", check.label, " expected ", check.expected, " got ",
         check.actual);
    CHECK(check.passed);
    if (!check.skipped) ++verified;
  }
  CHECK(verified > 0);
}

}  // namespace

TEST_CASE("star instance: analytic facts verify by exact enumeration") {
  const TheoryInstance star = star_instance(10, 0.1);
  CHECK(star.graph.node_count() == 11);
  CHECK(star.graph.edge_count() == 10);
  CHECK(star.k == 1);
  CHECK(star.fact("hub_spread") == doctest::Approx(2.1));
  CHECK(star.fact("fair_spread") == doctest::Approx(11.0 / 9.9));
  CHECK(star.fact("hub_multiplicative_violation") == doctest::Approx(10.0 / 1.1));
  check_all_pass(star);

  CHECK_THROWS_AS(star_instance(1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(star_instance(10, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(star_instance(2, 1.5), std::invalid_argument);
}

TEST_CASE("star instance: oversize graphs skip self-verification") {
  const TheoryInstance large = star_instance(25, 0.1);
  const auto checks = verify_instance(large);
  for (const auto& check : checks) {
    CHECK(check.skipped);
    CHECK(check.passed);
  }
}

TEST_CASE("two-node instance facts") {
  const TheoryInstance inst = two_node_instance();
  CHECK(inst.fact("deterministic_fair_optimum") == 0.0);
  CHECK(inst.fact("fair_independent_spread") == doctest::Approx(4.0 / 3.0));
  check_all_pass(inst);
}

TEST_CASE("bipartite blow-up facts") {
  const TheoryInstance inst = bipartite_blowup_instance(6);
  CHECK(inst.fact("fair_spread") == doctest::Approx(4.0));
  check_all_pass(inst);
  CHECK_THROWS_AS(bipartite_blowup_instance(0), std::invalid_argument);
}

TEST_CASE("pof instance facts") {
  const TheoryInstance inst = pof_instance(20);
  CHECK(inst.fact("greedy_spread") == doctest::Approx(11.0));
  CHECK(inst.fact("fair_optimum_upper_bound") == doctest::Approx(2.0));
  CHECK(inst.fact("pof_lower_bound") == doctest::Approx(5.5));
  check_all_pass(inst);
  CHECK_THROWS_AS(pof_instance(21), std::invalid_argument);
  CHECK_THROWS_AS(pof_instance(2), std::invalid_argument);
}

TEST_CASE("fixture registry") {
  CHECK(fixture_by_name("star", 10, 0.1).name == "star");
  CHECK(fixture_by_name("two_node", 0, 0.0).name == "two_node");
  CHECK(fixture_by_name("bipartite_blowup", 6, 0.0).name == "bipartite_blowup");
  CHECK(fixture_by_name("pof", 20, 0.0).name == "pof");
  CHECK_THROWS_AS(fixture_by_name("nope", 1, 0.0), std::invalid_argument);
  CHECK(fixture_names().size() == 4);
  CHECK_THROWS_AS(two_node_instance().fact("nope"), std::invalid_argument);
}
