#include "fairspread/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fairspread {

int LinearProgram::add_variable(double lower, double upper, double objective,
                                std::string name) {
  lower_.push_back(lower);
  upper_.push_back(upper);
  objective_.push_back(objective);
  variable_names_.push_back(std::move(name));
  return variable_count() - 1;
}

int LinearProgram::add_constraint(std::vector<std::pair<int, double>> coefficients,
                                  Relation relation, double rhs, std::string name) {
  constraints_.push_back({std::move(coefficients), relation, rhs, std::move(name)});
  return constraint_count() - 1;
}

void LinearProgram::set_objective(int variable, double coefficient) {
  objective_[static_cast<std::size_t>(variable)] = coefficient;
}

void LinearProgram::validate() const {
  for (int j = 0; j < variable_count(); ++j) {
    if (std::isnan(lower(j)) || std::isnan(upper(j)) || lower(j) > upper(j))
      throw std::invalid_argument("lp: bad bounds on variable " + std::to_string(j));
    if (!std::isfinite(objective(j)))
      throw std::invalid_argument("lp: non-finite objective coefficient");
    if (std::isinf(lower(j)) && std::isinf(upper(j)))
      throw std::invalid_argument("lp: free variable (both bounds infinite) unsupported");
  }
  for (int i = 0; i < constraint_count(); ++i) {
    const auto& row = constraint(i);
    if (!std::isfinite(row.rhs))
      throw std::invalid_argument("lp: non-finite rhs in constraint " + std::to_string(i));
    for (const auto& [j, coeff] : row.coefficients) {
      if (j < 0 || j >= variable_count())
        throw std::invalid_argument("lp: constraint references unknown variable");
      if (!std::isfinite(coeff))
        throw std::invalid_argument("lp: non-finite coefficient");
    }
  }
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kNumericalFailure: return "numerical_failure";
  }
  return "?";
}

double constraint_violation(const LinearProgram& lp, const Eigen::VectorXd& primal) {
  double worst = 0.0;
  for (int j = 0; j < lp.variable_count(); ++j) {
    if (std::isfinite(lp.lower(j))) worst = std::max(worst, lp.lower(j) - primal[j]);
    if (std::isfinite(lp.upper(j))) worst = std::max(worst, primal[j] - lp.upper(j));
  }
  for (int i = 0; i < lp.constraint_count(); ++i) {
    const auto& row = lp.constraint(i);
    double value = 0.0;
    for (const auto& [j, coeff] : row.coefficients) value += coeff * primal[j];
    switch (row.relation) {
      case Relation::kLessEqual: worst = std::max(worst, value - row.rhs); break;
      case Relation::kGreaterEqual: worst = std::max(worst, row.rhs - value); break;
      case Relation::kEqual: worst = std::max(worst, std::abs(value - row.rhs)); break;
    }
  }
  return worst;
}

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kCertifyTol = 1e-6;
constexpr int kDegenerateStreakLimit = 40;

class Simplex {
 public:
  explicit Simplex(const LinearProgram& lp) : lp_(lp) {
    const int n = lp.variable_count();
    const int m = lp.constraint_count();
    total_ = n + m;

    lower_.resize(total_);
    upper_.resize(total_);
    cost_ = Eigen::VectorXd::Zero(total_);
    for (int j = 0; j < n; ++j) {
      lower_[j] = lp.lower(j);
      upper_[j] = lp.upper(j);
      cost_[j] = lp.objective(j);
    }
    // One slack per row: Ax + s = b with the slack's bounds encoding the
    // relation.
    for (int i = 0; i < m; ++i) {
      const int j = n + i;
      switch (lp.constraint(i).relation) {
        case Relation::kLessEqual: lower_[j] = 0.0; upper_[j] = kLpInfinity; break;
        case Relation::kGreaterEqual: lower_[j] = -kLpInfinity; upper_[j] = 0.0; break;
        case Relation::kEqual: lower_[j] = 0.0; upper_[j] = 0.0; break;
      }
    }

    tableau_ = Eigen::MatrixXd::Zero(m, total_);
    rhs_ = Eigen::VectorXd::Zero(m);
    for (int i = 0; i < m; ++i) {
      const auto& row = lp.constraint(i);
      for (const auto& [j, coeff] : row.coefficients) tableau_(i, j) += coeff;
      tableau_(i, n + i) = 1.0;
      rhs_[i] = row.rhs;
    }

    value_.resize(total_);
    in_basis_.assign(static_cast<std::size_t>(total_), false);
    basis_.resize(m);
    for (int j = 0; j < total_; ++j) value_[j] = nonbasic_resting_value(j);
    for (int i = 0; i < m; ++i) {
      basis_[i] = n + i;
      in_basis_[static_cast<std::size_t>(n + i)] = true;
    }
    recompute_basic_values();
  }

  LpSolution run() {
    LpSolution result;
    const int phase1 = iterate(/*phase1=*/true);
    result.iterations = iterations_;
    if (phase1 < 0) {
      result.status = LpStatus::kNumericalFailure;
      return result;
    }
    if (max_infeasibility() > kCertifyTol) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    const int phase2 = iterate(/*phase1=*/false);
    result.iterations = iterations_;
    if (phase2 < 0) {
      result.status = phase2 == -2 ? LpStatus::kUnbounded : LpStatus::kNumericalFailure;
      return result;
    }

    const int n = lp_.variable_count();
    result.primal = Eigen::VectorXd(n);
    for (int j = 0; j < n; ++j) result.primal[j] = value_[j];
    result.objective = 0.0;
    for (int j = 0; j < n; ++j) result.objective += lp_.objective(j) * result.primal[j];
    result.max_violation = constraint_violation(lp_, result.primal);
    result.status =
        result.max_violation <= kCertifyTol ? LpStatus::kOptimal : LpStatus::kNumericalFailure;
    return result;
  }

 private:
  double nonbasic_resting_value(int j) const {
    if (std::isfinite(lower_[j])) return lower_[j];
    if (std::isfinite(upper_[j])) return upper_[j];
    return 0.0;
  }

  void recompute_basic_values() {
    Eigen::VectorXd basics = rhs_;
    for (int j = 0; j < total_; ++j) {
      if (in_basis_[static_cast<std::size_t>(j)] || value_[j] == 0.0) continue;
      basics -= tableau_.col(j) * value_[j];
    }
    for (int i = 0; i < static_cast<int>(basis_.size()); ++i) value_[basis_[i]] = basics[i];
  }

  double max_infeasibility() const {
    double worst = 0.0;
    for (int q : basis_) {
      worst = std::max(worst, lower_[q] - value_[q]);
      worst = std::max(worst, value_[q] - upper_[q]);
    }
    return worst;
  }

  // Phase-1 gradient of the total bound violation; zero when feasible.
  Eigen::VectorXd phase1_costs() const {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis_.size()));
    for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
      const int q = basis_[i];
      if (value_[q] < lower_[q] - kFeasTol) g[i] = 1.0;
      else if (value_[q] > upper_[q] + kFeasTol) g[i] = -1.0;
    }
    return g;
  }

  // Returns 0 on success (optimal / feasible), -1 on numerical failure,
  // -2 on unbounded (phase 2 only).
  int iterate(bool phase1) {
    const int iteration_limit = 2000 + 50 * (total_ + static_cast<int>(basis_.size()));
    int phase_iterations = 0;
    int degenerate_streak = 0;
    bool bland = false;

    while (true) {
      ++iterations_;
      if (++phase_iterations > iteration_limit) return -1;
      if (phase1 && max_infeasibility() <= kFeasTol) return 0;

      // Reduced costs. Phase 1 minimizes total infeasibility, phase 2
      // maximizes the objective; both reduce to a sign test per column.
      Eigen::VectorXd reduced;
      if (phase1) {
        reduced = tableau_.transpose() * phase1_costs();  // dW/dz_j
      } else {
        Eigen::VectorXd basis_cost(static_cast<Eigen::Index>(basis_.size()));
        for (int i = 0; i < static_cast<int>(basis_.size()); ++i)
          basis_cost[i] = cost_[basis_[i]];
        reduced = cost_ - tableau_.transpose() * basis_cost;
      }

      int entering = -1, direction = 0;
      double best_score = 0.0;
      for (int j = 0; j < total_; ++j) {
        if (in_basis_[static_cast<std::size_t>(j)]) continue;
        if (lower_[j] == upper_[j]) continue;  // fixed
        const double d = reduced[j];
        int dir = 0;
        if (phase1) {
          if (d < -kDualTol && value_[j] < upper_[j]) dir = 1;       // increase
          else if (d > kDualTol && value_[j] > lower_[j]) dir = -1;  // decrease
        } else {
          if (d > kDualTol && value_[j] < upper_[j]) dir = 1;
          else if (d < -kDualTol && value_[j] > lower_[j]) dir = -1;
        }
        if (dir == 0) continue;
        if (bland) {
          entering = j;
          direction = dir;
          break;
        }
        const double score = std::abs(d);
        if (score > best_score + kDualTol) {
          best_score = score;
          entering = j;
          direction = dir;
        }
      }
      if (entering < 0) return 0;  // optimal for this phase

      // Ratio test along +/- direction of the entering variable. The first
      // blocking event wins: a feasible basic reaching a bound, an
      // infeasible basic reaching the bound it violates (phase 1), or the
      // entering variable reaching its own opposite bound.
      double own_range = kLpInfinity;
      if (direction > 0 && std::isfinite(upper_[entering]))
        own_range = upper_[entering] - value_[entering];
      else if (direction < 0 && std::isfinite(lower_[entering]))
        own_range = value_[entering] - lower_[entering];

      double step = own_range;
      int leaving_row = -1;
      double leaving_target = 0.0;
      double best_pivot = 0.0;
      for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
        const double coeff = tableau_(i, entering);
        if (std::abs(coeff) <= kPivotTol) continue;
        const int q = basis_[i];
        const double rate = -direction * coeff;  // d value_[q] / d t
        double t = kLpInfinity, target = 0.0;
        if (value_[q] < lower_[q] - kFeasTol) {
          // Infeasible below: blocks when rising to its lower bound.
          if (rate > 0) { t = (lower_[q] - value_[q]) / rate; target = lower_[q]; }
        } else if (value_[q] > upper_[q] + kFeasTol) {
          if (rate < 0) { t = (value_[q] - upper_[q]) / (-rate); target = upper_[q]; }
        } else if (rate > 0 && std::isfinite(upper_[q])) {
          t = (upper_[q] - value_[q]) / rate;
          target = upper_[q];
        } else if (rate < 0 && std::isfinite(lower_[q])) {
          t = (value_[q] - lower_[q]) / (-rate);
          target = lower_[q];
        }
        if (!std::isfinite(t)) continue;
        t = std::max(t, 0.0);
        bool take = false;
        if (t < step - 1e-12) {
          take = true;  // strictly earlier block
        } else if (t <= step + 1e-12 && t <= own_range) {
          // Tie: prefer the numerically largest pivot, then the lowest basis
          // variable index. Under Bland's rule the index decides alone,
          // which is what the anti-cycling argument needs.
          if (leaving_row < 0)
            take = true;
          else if (bland)
            take = q < basis_[leaving_row];
          else if (std::abs(coeff) > best_pivot + 1e-12)
            take = true;
          else if (std::abs(coeff) >= best_pivot - 1e-12 && q < basis_[leaving_row])
            take = true;
        }
        if (take) {
          step = std::min(step, t);
          leaving_row = i;
          leaving_target = target;
          best_pivot = std::abs(coeff);
        }
      }

      if (leaving_row < 0) {
        if (!std::isfinite(step)) return phase1 ? -1 : -2;  // unbounded travel
        // Bound flip: entering jumps to its opposite bound.
        value_[entering] += direction * step;
        recompute_basic_values();
        degenerate_streak = 0;
        bland = false;
        continue;
      }

      if (step <= 1e-10) {
        if (++degenerate_streak >= kDegenerateStreakLimit) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;
      }

      // Pivot: leaving variable parks exactly on its blocking bound.
      const int leaving = basis_[leaving_row];
      value_[entering] += direction * step;
      value_[leaving] = leaving_target;
      in_basis_[static_cast<std::size_t>(leaving)] = false;
      in_basis_[static_cast<std::size_t>(entering)] = true;
      basis_[leaving_row] = entering;

      const double pivot = tableau_(leaving_row, entering);
      tableau_.row(leaving_row) /= pivot;
      rhs_[leaving_row] /= pivot;
      for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
        if (i == leaving_row) continue;
        const double factor = tableau_(i, entering);
        if (factor == 0.0) continue;
        tableau_.row(i) -= factor * tableau_.row(leaving_row);
        rhs_[i] -= factor * rhs_[leaving_row];
      }
      recompute_basic_values();
    }
  }

  const LinearProgram& lp_;
  int total_ = 0;
  std::vector<double> lower_, upper_;
  Eigen::VectorXd cost_;
  Eigen::MatrixXd tableau_;
  Eigen::VectorXd rhs_;
  std::vector<double> value_;
  std::vector<int> basis_;
  std::vector<bool> in_basis_;
  int iterations_ = 0;
};

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  lp.validate();
  if (lp.variable_count() == 0) {
    LpSolution trivial;
    trivial.status = LpStatus::kOptimal;
    trivial.primal = Eigen::VectorXd(0);
    trivial.objective = 0.0;
    return trivial;
  }
  Simplex simplex(lp);
  return simplex.run();
}

std::string lp_to_text(const LinearProgram& lp) {
  auto var_name = [&](int j) {
    return lp.variable_name(j).empty() ? "x" + std::to_string(j) : lp.variable_name(j);
  };
  std::ostringstream out;
  out << "Maximize\n obj:";
  bool any = false;
  for (int j = 0; j < lp.variable_count(); ++j) {
    const double c = lp.objective(j);
    if (c == 0.0) continue;
    out << (c >= 0 ? " + " : " - ") << std::abs(c) << " " << var_name(j);
    any = true;
  }
  if (!any) out << " 0";
  out << "\nSubject To\n";
  for (int i = 0; i < lp.constraint_count(); ++i) {
    const auto& row = lp.constraint(i);
    out << " " << (row.name.empty() ? "c" + std::to_string(i) : row.name) << ":";
    for (const auto& [j, coeff] : row.coefficients)
      out << (coeff >= 0 ? " + " : " - ") << std::abs(coeff) << " " << var_name(j);
    switch (row.relation) {
      case Relation::kLessEqual: out << " <= "; break;
      case Relation::kGreaterEqual: out << " >= "; break;
      case Relation::kEqual: out << " = "; break;
    }
    out << row.rhs << "\n";
  }
  out << "Bounds\n";
  for (int j = 0; j < lp.variable_count(); ++j) {
    out << " ";
    if (std::isinf(lp.lower(j)))
      out << "-inf";
    else
      out << lp.lower(j);
    out << " <= " << var_name(j) << " <= ";
    if (std::isinf(lp.upper(j)))
      out << "+inf";
    else
      out << lp.upper(j);
    out << "\n";
  }
  out << "End\n";
  return out.str();
}

}  // namespace fairspread
