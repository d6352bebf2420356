#include "fairspread/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace fairspread {

namespace {
constexpr double kSizeSlack = 1e-6;
constexpr double kWeightSlack = 1e-9;
}  // namespace

SeedSet::SeedSet(std::vector<int> nodes_in, int budget_in)
    : nodes(std::move(nodes_in)), budget(budget_in) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  if (static_cast<int>(nodes.size()) > budget)
    throw std::invalid_argument("seed set larger than its budget");
}

IndependentSolution::IndependentSolution(Eigen::VectorXd x_in, int budget_in)
    : x(std::move(x_in)), budget(budget_in) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < -kSizeSlack || x[i] > 1.0 + kSizeSlack)
      throw std::invalid_argument("independent solution entry outside [0,1]");
    x[i] = std::clamp(x[i], 0.0, 1.0);
  }
  if (x.sum() > static_cast<double>(budget) + kSizeSlack)
    throw std::invalid_argument("independent solution exceeds budget");
}

SetDistribution::SetDistribution(std::vector<Atom> support_in, int budget_in)
    : budget(budget_in) {
  for (Atom& atom : support_in) {
    std::sort(atom.nodes.begin(), atom.nodes.end());
    atom.nodes.erase(std::unique(atom.nodes.begin(), atom.nodes.end()),
                     atom.nodes.end());
  }
  std::sort(support_in.begin(), support_in.end(),
            [](const Atom& a, const Atom& b) { return a.nodes < b.nodes; });
  for (Atom& atom : support_in) {
    if (atom.weight < -kWeightSlack)
      throw std::invalid_argument("distribution weight negative");
    if (atom.weight <= 0.0) continue;  // canonical form drops zero mass
    if (!support.empty() && support.back().nodes == atom.nodes)
      support.back().weight += atom.weight;
    else
      support.push_back(std::move(atom));
  }
  double total = 0.0;
  for (const Atom& atom : support) total += atom.weight;
  if (std::abs(total - 1.0) > kWeightSlack)
    throw std::invalid_argument("distribution weights do not sum to 1");
  if (expected_size(*this) > static_cast<double>(budget) + kSizeSlack)
    throw std::invalid_argument("distribution expected size exceeds budget");
}

bool SetDistribution::operator==(const SetDistribution& other) const {
  if (budget != other.budget || support.size() != other.support.size()) return false;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i].nodes != other.support[i].nodes) return false;
    if (std::abs(support[i].weight - other.support[i].weight) > kWeightSlack)
      return false;
  }
  return true;
}

double expected_size(const SeedSet& s) { return static_cast<double>(s.nodes.size()); }

double expected_size(const IndependentSolution& s) { return s.x.sum(); }

double expected_size(const SetDistribution& s) {
  double total = 0.0;
  for (const auto& atom : s.support)
    total += atom.weight * static_cast<double>(atom.nodes.size());
  return total;
}

double expected_size(const SolutionVariant& s) {
  return std::visit([](const auto& solution) { return expected_size(solution); }, s);
}

double dp_violation_additive(const Eigen::VectorXd& group_coverages) {
  if (group_coverages.size() == 0)
    throw std::invalid_argument("dp_violation_additive: no communities");
  return group_coverages.maxCoeff() - group_coverages.minCoeff();
}

double dp_violation_multiplicative(const Eigen::VectorXd& group_coverages) {
  if (group_coverages.size() == 0)
    throw std::invalid_argument("dp_violation_multiplicative: no communities");
  const double hi = group_coverages.maxCoeff();
  if (hi <= 0.0) return 1.0;
  return group_coverages.minCoeff() / hi;
}

bool eps_plus_feasible(const Eigen::VectorXd& group_coverages, double eps) {
  if (eps < 0.0 || eps >= 1.0)
    throw std::invalid_argument("eps_plus_feasible: eps outside [0,1)");
  return dp_violation_additive(group_coverages) <= eps;
}

std::string solution_to_json(const SolutionVariant& solution) {
  nlohmann::json j;
  if (const auto* seed = std::get_if<SeedSet>(&solution)) {
    j["kind"] = "seed_set";
    j["budget"] = seed->budget;
    j["nodes"] = seed->nodes;
  } else if (const auto* ind = std::get_if<IndependentSolution>(&solution)) {
    j["kind"] = "independent";
    j["budget"] = ind->budget;
    j["x"] = std::vector<double>(ind->x.data(), ind->x.data() + ind->x.size());
  } else {
    const auto& dist = std::get<SetDistribution>(solution);
    j["kind"] = "distribution";
    j["budget"] = dist.budget;
    auto& support = j["support"] = nlohmann::json::array();
    for (const auto& atom : dist.support)
      support.push_back({{"set", atom.nodes}, {"weight", atom.weight}});
  }
  return j.dump(2);
}

SolutionVariant solution_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const std::string kind = j.at("kind").get<std::string>();
  const int budget = j.at("budget").get<int>();
  if (kind == "seed_set")
    return SeedSet(j.at("nodes").get<std::vector<int>>(), budget);
  if (kind == "independent") {
    const auto values = j.at("x").get<std::vector<double>>();
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(
        values.data(), static_cast<Eigen::Index>(values.size()));
    return IndependentSolution(std::move(x), budget);
  }
  if (kind == "distribution") {
    std::vector<SetDistribution::Atom> support;
    for (const auto& entry : j.at("support"))
      support.push_back({entry.at("set").get<std::vector<int>>(),
                         entry.at("weight").get<double>()});
    return SetDistribution(std::move(support), budget);
  }
  throw std::runtime_error("solution json: unknown kind `" + kind + "`");
}

}  // namespace fairspread
