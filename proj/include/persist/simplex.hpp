#pragma once

#include <Eigen/Core>

namespace persist {

/// min cost^T z  s.t.  constraints * z = rhs,  z >= 0.
struct LinearProgram {
  Eigen::MatrixXd constraints;
  Eigen::VectorXd rhs;
  Eigen::VectorXd cost;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, PivotLimit };

struct SimplexOptions {
  double pivot_tolerance = 1e-9;
  double cost_tolerance = 1e-9;
  double feasibility_tolerance = 1e-7;
  long max_pivots = 2'000'000;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd primal;
  double objective = 0.0;
  long pivots = 0;
  /// Some nonbasic column has zero reduced cost at the final tableau, so the
  /// optimum may not be unique.
  bool alternative_optima = false;
};

/// Two-phase primal simplex on a dense tableau with Bland's rule.
///
/// Deterministic: the same program always yields the same vertex. Redundant
/// equality rows are detected after phase one and dropped.
LpSolution solve_simplex(const LinearProgram& program, const SimplexOptions& options = {});

}  // namespace persist
