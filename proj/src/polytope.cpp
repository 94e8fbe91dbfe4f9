#include "persist/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace persist {
namespace {

Eigen::Index stride_of(const GraphicalModel& model, FactorId f, int position) {
  const auto& scope = model.factor(f).scope;
  Eigen::Index stride = 1;
  for (std::size_t p = static_cast<std::size_t>(position) + 1; p < scope.size(); ++p) stride *= model.num_labels(scope[p]);
  return stride;
}

void check_shapes(const GraphicalModel& model, const Marginals& mu) {
  if (static_cast<int>(mu.node.size()) != model.num_nodes() || static_cast<int>(mu.factor.size()) != model.num_factors()) {
    throw DomainError("marginals do not match the model");
  }
  for (NodeId v = 0; v < model.num_nodes(); ++v) {
    if (mu.node[static_cast<std::size_t>(v)].size() != model.num_labels(v)) throw DomainError("node marginal has wrong length");
  }
  for (FactorId f = 0; f < model.num_factors(); ++f) {
    if (mu.factor[static_cast<std::size_t>(f)].size() != model.factor(f).table.size()) {
      throw DomainError("factor marginal has wrong length");
    }
  }
}

}  // namespace

double marginal_sum(const GraphicalModel& model, FactorId f, const Eigen::VectorXd& values, int position, Label label) {
  const NodeId v = model.factor(f).scope[static_cast<std::size_t>(position)];
  const Eigen::Index stride = stride_of(model, f, position);
  const Eigen::Index k = model.num_labels(v);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if ((i / stride) % k == label) sum += values[i];
  }
  return sum;
}

Marginals delta(const GraphicalModel& model, std::span<const Label> x) {
  model.check_labeling(x);
  Marginals mu;
  mu.node.reserve(static_cast<std::size_t>(model.num_nodes()));
  for (NodeId v = 0; v < model.num_nodes(); ++v) {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(model.num_labels(v));
    m[x[static_cast<std::size_t>(v)]] = 1.0;
    mu.node.push_back(std::move(m));
  }
  mu.factor.reserve(static_cast<std::size_t>(model.num_factors()));
  for (FactorId f = 0; f < model.num_factors(); ++f) {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(model.factor(f).table.size());
    m[model.table_index(f, x)] = 1.0;
    mu.factor.push_back(std::move(m));
  }
  return mu;
}

double linear_energy(const GraphicalModel& model, const Marginals& mu) {
  check_shapes(model, mu);
  double sum = 0.0;
  for (FactorId f = 0; f < model.num_factors(); ++f) {
    const Factor& factor = model.factor(f);
    const Eigen::VectorXd& m =
        factor.arity() == 1 ? mu.node[static_cast<std::size_t>(factor.scope[0])] : mu.factor[static_cast<std::size_t>(f)];
    sum += factor.table.dot(m);
  }
  return sum;
}

ConstraintResiduals constraint_residuals(const GraphicalModel& model, const Marginals& mu) {
  check_shapes(model, mu);
  ConstraintResiduals r;
  r.min_entry = std::numeric_limits<double>::infinity();
  for (const auto& m : mu.node) {
    r.normalization = std::max(r.normalization, std::abs(m.sum() - 1.0));
    if (m.size() > 0) r.min_entry = std::min(r.min_entry, m.minCoeff());
  }
  for (FactorId f = 0; f < model.num_factors(); ++f) {
    const auto& m = mu.factor[static_cast<std::size_t>(f)];
    if (m.size() > 0) r.min_entry = std::min(r.min_entry, m.minCoeff());
    const auto& scope = model.factor(f).scope;
    for (int p = 0; p < static_cast<int>(scope.size()); ++p) {
      const auto& node = mu.node[static_cast<std::size_t>(scope[static_cast<std::size_t>(p)])];
      for (Label l = 0; l < node.size(); ++l) {
        r.marginalization = std::max(r.marginalization, std::abs(marginal_sum(model, f, m, p, l) - node[l]));
      }
    }
  }
  if (!std::isfinite(r.min_entry)) r.min_entry = 0.0;
  return r;
}

bool is_locally_consistent(const GraphicalModel& model, const Marginals& mu, double tol) {
  const auto r = constraint_residuals(model, mu);
  return r.normalization <= tol && r.marginalization <= tol && r.min_entry >= -tol;
}

PolytopeLP build_lp(const GraphicalModel& model) {
  PolytopeLP lp;
  Eigen::Index vars = 0;
  for (NodeId v = 0; v < model.num_nodes(); ++v) {
    lp.node_offset.push_back(vars);
    vars += model.num_labels(v);
  }
  Eigen::Index rows = model.num_nodes();
  for (FactorId f = 0; f < model.num_factors(); ++f) {
    const Factor& factor = model.factor(f);
    if (factor.arity() == 1) {
      lp.factor_offset.push_back(-1);
      continue;
    }
    lp.factor_offset.push_back(vars);
    vars += factor.table.size();
    for (NodeId v : factor.scope) rows += model.num_labels(v);
  }

  LinearProgram& program = lp.program;
  program.constraints = Eigen::MatrixXd::Zero(rows, vars);
  program.rhs = Eigen::VectorXd::Zero(rows);
  program.cost = Eigen::VectorXd::Zero(vars);

  Eigen::Index row = 0;
  for (NodeId v = 0; v < model.num_nodes(); ++v, ++row) {
    program.constraints.row(row).segment(lp.node_offset[static_cast<std::size_t>(v)], model.num_labels(v)).setOnes();
    program.rhs[row] = 1.0;
  }
  for (FactorId f = 0; f < model.num_factors(); ++f) {
    const Factor& factor = model.factor(f);
    const Eigen::Index offset = lp.factor_offset[static_cast<std::size_t>(f)];
    if (offset < 0) {
      program.cost.segment(lp.node_offset[static_cast<std::size_t>(factor.scope[0])], factor.table.size()) += factor.table;
      continue;
    }
    program.cost.segment(offset, factor.table.size()) = factor.table;
    for (int p = 0; p < factor.arity(); ++p) {
      const NodeId v = factor.scope[static_cast<std::size_t>(p)];
      const Eigen::Index stride = stride_of(model, f, p);
      const Eigen::Index k = model.num_labels(v);
      for (Label l = 0; l < k; ++l, ++row) {
        for (Eigen::Index i = 0; i < factor.table.size(); ++i) {
          if ((i / stride) % k == l) program.constraints(row, offset + i) = 1.0;
        }
        program.constraints(row, lp.node_offset[static_cast<std::size_t>(v)] + l) = -1.0;
      }
    }
  }
  return lp;
}

Eigen::VectorXd PolytopeLP::flatten(const Marginals& mu) const {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(num_variables());
  for (std::size_t v = 0; v < node_offset.size(); ++v) z.segment(node_offset[v], mu.node[v].size()) = mu.node[v];
  for (std::size_t f = 0; f < factor_offset.size(); ++f) {
    if (factor_offset[f] >= 0) z.segment(factor_offset[f], mu.factor[f].size()) = mu.factor[f];
  }
  return z;
}

Marginals PolytopeLP::unflatten(const GraphicalModel& model, const Eigen::VectorXd& z) const {
  Marginals mu;
  for (NodeId v = 0; v < model.num_nodes(); ++v) {
    mu.node.push_back(z.segment(node_offset[static_cast<std::size_t>(v)], model.num_labels(v)));
  }
  for (FactorId f = 0; f < model.num_factors(); ++f) {
    const Eigen::Index offset = factor_offset[static_cast<std::size_t>(f)];
    if (offset < 0) {
      mu.factor.push_back(mu.node[static_cast<std::size_t>(model.factor(f).scope[0])]);
    } else {
      mu.factor.push_back(z.segment(offset, model.factor(f).table.size()));
    }
  }
  return mu;
}

}  // namespace persist
