#pragma once

// Small dense linear programs: maximize c.x subject to A x = b and
// lower <= x <= upper (bounds may be infinite). Solved by a two-phase
// tableau simplex with Bland's rule, so results are deterministic.

#include <Eigen/Dense>

namespace tlo {

struct LinearProgram {
  Eigen::VectorXd objective; // maximized
  Eigen::MatrixXd eq_matrix;
  Eigen::VectorXd eq_rhs;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  Eigen::Index variables() const { return objective.size(); }
  /// Throws std::invalid_argument on inconsistent dimensions or NaNs.
  void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  Eigen::VectorXd point;
  int iterations = 0;
};

struct LpOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-11;
  int max_iterations = 10000;
};

LpResult solve_lp_max(const LinearProgram& lp, const LpOptions& options = {});

} // namespace tlo
