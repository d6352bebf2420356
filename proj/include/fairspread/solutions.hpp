#pragma once

#include <Eigen/Dense>
#include <string>
#include <variant>
#include <vector>

namespace fairspread {

// Deterministic seed set S with its budget k, |S| <= k.
struct SeedSet {
  std::vector<int> nodes;  // sorted, unique
  int budget = 0;

  SeedSet() = default;
  SeedSet(std::vector<int> nodes, int budget);
  int size() const { return static_cast<int>(nodes.size()); }
};

// Independent marginals x in [0,1]^n with sum(x) <= k (numerical slack 1e-6).
struct IndependentSolution {
  Eigen::VectorXd x;
  int budget = 0;

  IndependentSolution() = default;
  IndependentSolution(Eigen::VectorXd x, int budget);
};

// Finite-support distribution over node sets with expected size <= k.
// Canonical form: each set sorted, support sorted lexicographically,
// duplicate sets merged, weights strictly positive and summing to 1 (1e-9).
struct SetDistribution {
  struct Atom {
    std::vector<int> nodes;
    double weight = 0.0;
  };
  std::vector<Atom> support;
  int budget = 0;

  SetDistribution() = default;
  SetDistribution(std::vector<Atom> support, int budget);

  bool operator==(const SetDistribution& other) const;
};

double expected_size(const SeedSet& s);
double expected_size(const IndependentSolution& s);
double expected_size(const SetDistribution& s);

using SolutionVariant = std::variant<SeedSet, IndependentSolution, SetDistribution>;
double expected_size(const SolutionVariant& s);

// max_C sigma_C - min_C sigma_C.
double dp_violation_additive(const Eigen::VectorXd& group_coverages);

// Largest beta with sigma_{C_i} >= beta * sigma_{C_j} for all pairs, i.e.
// min/max. All-zero coverages count as perfectly fair (beta = 1); a zero
// minimum against a positive maximum gives 0.
double dp_violation_multiplicative(const Eigen::VectorXd& group_coverages);

bool eps_plus_feasible(const Eigen::VectorXd& group_coverages, double eps);

// JSON round-trip for harness persistence. Schema: an object with "kind" in
// {"seed_set","independent","distribution"}, "budget", and the payload
// ("nodes", "x", or "support" of {"set","weight"} entries).
std::string solution_to_json(const SolutionVariant& solution);
SolutionVariant solution_from_json(const std::string& text);

}  // namespace fairspread
