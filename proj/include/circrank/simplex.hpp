#pragma once

#include <Eigen/Dense>

namespace circrank {

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

const char* to_string(LpStatus s);

struct LpResult {
  LpStatus status = LpStatus::NumericalFailure;
  Eigen::VectorXd x;
  double objective = 0.0;
};

struct SimplexOptions {
  double pivot_eps = 1e-10;
  double feasibility_eps = 1e-9;
  int max_iterations = 10000;
};

/// Dense two-phase simplex with Bland's rule for
///   minimize cost·x  subject to  a_eq x = b_eq,  x >= 0.
/// Redundant equality rows are detected and dropped after phase one.
LpResult minimize(const Eigen::MatrixXd& a_eq, const Eigen::VectorXd& b_eq, const Eigen::VectorXd& cost,
                  const SimplexOptions& options = {});

/// Phase one only: a feasible point, if any.
LpResult find_feasible(const Eigen::MatrixXd& a_eq, const Eigen::VectorXd& b_eq, const SimplexOptions& options = {});

}  // namespace circrank
