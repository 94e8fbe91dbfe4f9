#pragma once

#include <vector>

#include <Eigen/Core>

#include "persist/model.hpp"
#include "persist/simplex.hpp"

namespace persist {

/// Overcomplete pseudo-marginals: one vector per node and one per factor.
///
/// Factor marginals are laid out like the factor tables. For unary factors the
/// factor marginal duplicates the node marginal.
struct Marginals {
  std::vector<Eigen::VectorXd> node;
  std::vector<Eigen::VectorXd> factor;
};

/// Indicator vector delta(x).
Marginals delta(const GraphicalModel& model, std::span<const Label> x);

/// <theta, mu>.
double linear_energy(const GraphicalModel& model, const Marginals& mu);

struct ConstraintResiduals {
  double normalization = 0.0;
  double marginalization = 0.0;
  double min_entry = 0.0;
};

/// Largest violations of the local-polytope constraints, plus the smallest entry.
ConstraintResiduals constraint_residuals(const GraphicalModel& model, const Marginals& mu);

/// mu in the local polytope within `tol` (residuals and negativity).
bool is_locally_consistent(const GraphicalModel& model, const Marginals& mu, double tol = 1e-7);

/// The local polytope in standard form together with the variable layout.
///
/// Variables: node marginals first (node by node), then one block per factor of
/// arity >= 2. Rows: one normalisation row per node, then one marginalisation
/// row per (factor, scope position, label).
struct PolytopeLP {
  LinearProgram program;
  std::vector<Eigen::Index> node_offset;
  std::vector<Eigen::Index> factor_offset;  // -1 for unary factors

  Eigen::Index num_variables() const { return program.cost.size(); }
  Eigen::Index num_rows() const { return program.rhs.size(); }

  Eigen::VectorXd flatten(const Marginals& mu) const;
  Marginals unflatten(const GraphicalModel& model, const Eigen::VectorXd& z) const;
};

PolytopeLP build_lp(const GraphicalModel& model);

/// Sum over all labels of `table` with the scope position `position` fixed to `label`.
double marginal_sum(const GraphicalModel& model, FactorId f, const Eigen::VectorXd& values, int position, Label label);

}  // namespace persist
