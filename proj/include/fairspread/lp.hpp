#pragma once

#include <Eigen/Dense>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace fairspread {

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

// A maximization LP: bounded variables, sparse constraint rows.
class LinearProgram {
 public:
  struct Constraint {
    std::vector<std::pair<int, double>> coefficients;
    Relation relation = Relation::kLessEqual;
    double rhs = 0.0;
    std::string name;
  };

  // Returns the variable index. Bounds may be +/-infinity (lower <= upper).
  int add_variable(double lower, double upper, double objective = 0.0,
                   std::string name = "");
  // Returns the constraint index.
  int add_constraint(std::vector<std::pair<int, double>> coefficients,
                     Relation relation, double rhs, std::string name = "");
  void set_objective(int variable, double coefficient);

  int variable_count() const { return static_cast<int>(lower_.size()); }
  int constraint_count() const { return static_cast<int>(constraints_.size()); }
  double lower(int j) const { return lower_[static_cast<std::size_t>(j)]; }
  double upper(int j) const { return upper_[static_cast<std::size_t>(j)]; }
  double objective(int j) const { return objective_[static_cast<std::size_t>(j)]; }
  const Constraint& constraint(int i) const {
    return constraints_[static_cast<std::size_t>(i)];
  }
  const std::string& variable_name(int j) const {
    return variable_names_[static_cast<std::size_t>(j)];
  }

  // Throws on malformed input (bad indices, lower > upper, non-finite rhs).
  void validate() const;

 private:
  std::vector<double> lower_, upper_, objective_;
  std::vector<std::string> variable_names_;
  std::vector<Constraint> constraints_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kNumericalFailure };

std::string to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kNumericalFailure;
  Eigen::VectorXd primal;  // structural variables
  double objective = std::numeric_limits<double>::quiet_NaN();
  // Largest absolute residual of any constraint or bound at the primal.
  double max_violation = 0.0;
  int iterations = 0;
};

// Bounded-variable two-phase primal simplex (dense tableau). Deterministic:
// Dantzig pricing with lowest-index ties, Bland's rule after degeneracy
// streaks. An optimal result is certified to violate no constraint by more
// than 1e-6; anything worse surfaces as kNumericalFailure, never as a
// silently wrong answer.
LpSolution solve(const LinearProgram& lp);

// Largest absolute violation of constraints and bounds at the point.
double constraint_violation(const LinearProgram& lp, const Eigen::VectorXd& primal);

// Algebraic text form (CPLEX-LP-like) for debugging.
std::string lp_to_text(const LinearProgram& lp);

}  // namespace fairspread
