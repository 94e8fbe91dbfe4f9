#include <string>

#include "persist/solvers.hpp"

namespace persist {
namespace {

constexpr double kSnapToZero = 1e-8;

void check_lp_size(const PolytopeLP& lp, double cap) {
  const double size = static_cast<double>(lp.num_variables()) * static_cast<double>(lp.num_rows());
  if (size > cap) throw CapExceededError("local polytope LP too large for the dense simplex");
}

LpSolution run_simplex(const LinearProgram& program, const SimplexOptions& options) {
  LpSolution solution = solve_simplex(program, options);
  switch (solution.status) {
    case LpStatus::Optimal:
      return solution;
    case LpStatus::PivotLimit:
      throw SolverError("simplex exceeded its pivot budget");
    case LpStatus::Infeasible:
      throw SolverError("internal error: simplex reported the local polytope infeasible");
    case LpStatus::Unbounded:
      throw SolverError("internal error: simplex reported an unbounded local polytope LP");
  }
  throw SolverError("unknown simplex status");
}

}  // namespace

std::vector<std::optional<Label>> commit_integral_nodes(const GraphicalModel& model, const Marginals& mu, double tol) {
  std::vector<std::optional<Label>> labels(static_cast<std::size_t>(model.num_nodes()));
  for (NodeId v = 0; v < model.num_nodes(); ++v) {
    const auto& m = mu.node[static_cast<std::size_t>(v)];
    Eigen::Index arg = 0;
    if (m.maxCoeff(&arg) >= 1.0 - tol) labels[static_cast<std::size_t>(v)] = static_cast<Label>(arg);
  }
  return labels;
}

LpResult solve_lp_exact(const GraphicalModel& model, const SolverConfig& config) {
  const PolytopeLP lp = build_lp(model);
  check_lp_size(lp, config.lp_cap);
  LpSolution solution = run_simplex(lp.program, config.simplex);
  Eigen::VectorXd z = solution.primal;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (z[i] < kSnapToZero) z[i] = 0.0;
  }

  LpResult result;
  result.marginals = lp.unflatten(model, z);
  result.value = solution.objective;
  result.pivots = solution.pivots;
  result.output.labels = commit_integral_nodes(model, result.marginals, config.integrality_tolerance);
  result.output.bound = solution.objective;
  result.output.certificate = Certificate::ExactLp;
  result.output.iterations = solution.pivots;
  result.output.ties_possible = solution.alternative_optima;
  return result;
}

double min_mass_on_optimal_face(const GraphicalModel& model, const PartialLabeling& x, double optimum, double slack,
                                const SimplexOptions& options) {
  const PolytopeLP lp = build_lp(model);
  const Eigen::Index n = lp.num_variables();
  const Eigen::Index m = lp.num_rows();

  // Extra slack column s and row <theta, mu> + s = optimum + slack.
  LinearProgram face;
  face.constraints = Eigen::MatrixXd::Zero(m + 1, n + 1);
  face.constraints.topLeftCorner(m, n) = lp.program.constraints;
  face.constraints.row(m).head(n) = lp.program.cost.transpose();
  face.constraints(m, n) = 1.0;
  face.rhs.resize(m + 1);
  face.rhs.head(m) = lp.program.rhs;
  face.rhs[m] = optimum + slack;
  face.cost = Eigen::VectorXd::Zero(n + 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const NodeId v = x.domain[i];
    face.cost[lp.node_offset[static_cast<std::size_t>(v)] + x.labels[i]] = 1.0;
  }
  return run_simplex(face, options).objective;
}

}  // namespace persist
