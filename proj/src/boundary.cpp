#include "persist/boundary.hpp"

#include <algorithm>
#include <limits>

namespace persist {
namespace {

bool contains(const NodeSet& A, NodeId v) { return std::binary_search(A.begin(), A.end(), v); }

Label require_label(const PartialLabeling& y, NodeId v, const char* what) {
  const auto l = y.find(v);
  if (!l) throw DomainError(std::string(what) + " does not cover boundary node " + std::to_string(v));
  return *l;
}

// Pairwise table oriented so that the node inside A indexes rows.
RowMatrixXd inside_rows(const GraphicalModel& model, FactorId f, const NodeSet& A) {
  const auto& scope = model.factor(f).scope;
  const auto table = pairwise_table(model, f);
  if (contains(A, scope[0])) return table;
  return table.transpose();
}

NodeId inside_node(const GraphicalModel& model, FactorId f, const NodeSet& A) {
  const auto& scope = model.factor(f).scope;
  return contains(A, scope[0]) ? scope[0] : scope[1];
}

void require_boundary_factor(const GraphicalModel& model, FactorId f, const NodeSet& A) {
  if (f < 0 || f >= model.num_factors()) throw DomainError("factor id out of range");
  const auto& scope = model.factor(f).scope;
  const auto inside = std::count_if(scope.begin(), scope.end(), [&](NodeId v) { return contains(A, v); });
  if (inside == 0 || inside == static_cast<long>(scope.size())) {
    throw DomainError("factor " + std::to_string(f) + " is not a boundary factor of A");
  }
}

// Original-mode test potential of any arity.
Eigen::VectorXd original_potential(const GraphicalModel& model, FactorId f, const NodeSet& A, const PartialLabeling& y) {
  const Factor& factor = model.factor(f);
  const int arity = factor.arity();
  std::vector<int> inside_positions;
  for (int p = 0; p < arity; ++p) {
    if (contains(A, factor.scope[static_cast<std::size_t>(p)])) inside_positions.push_back(p);
  }

  Eigen::Index inside_size = 1;
  Eigen::Index y_index = 0;
  for (int p : inside_positions) {
    const NodeId v = factor.scope[static_cast<std::size_t>(p)];
    inside_size *= model.num_labels(v);
    y_index = y_index * model.num_labels(v) + require_label(y, v, "test labeling");
  }

  Eigen::VectorXd result(inside_size);
  for (Eigen::Index s = 0; s < inside_size; ++s) {
    result[s] = s == y_index ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
  }

  std::vector<int> labels(static_cast<std::size_t>(arity), 0);
  for (Eigen::Index i = 0; i < factor.table.size(); ++i) {
    Eigen::Index rest = i;
    for (int p = arity; p-- > 0;) {
      const int k = model.num_labels(factor.scope[static_cast<std::size_t>(p)]);
      labels[static_cast<std::size_t>(p)] = static_cast<int>(rest % k);
      rest /= k;
    }
    Eigen::Index s = 0;
    for (int p : inside_positions) {
      s = s * model.num_labels(factor.scope[static_cast<std::size_t>(p)]) + labels[static_cast<std::size_t>(p)];
    }
    const double value = factor.table[i];
    result[s] = s == y_index ? std::max(result[s], value) : std::min(result[s], value);
  }
  return result;
}

NodeSet inside_scope(const GraphicalModel& model, FactorId f, const NodeSet& A) {
  NodeSet s;
  for (NodeId v : model.factor(f).scope) {
    if (contains(A, v)) s.push_back(v);
  }
  return s;
}

AugmentedModel empty_augmented(const GraphicalModel& model, const NodeSet& A, const PartialLabeling& y) {
  AugmentedModel aug;
  std::vector<int> counts;
  for (NodeId v : A) counts.push_back(model.num_labels(v));
  aug.model = GraphicalModel(counts);
  aug.to_original = A;
  aug.from_original.assign(static_cast<std::size_t>(model.num_nodes()), -1);
  for (std::size_t i = 0; i < A.size(); ++i) aug.from_original[static_cast<std::size_t>(A[i])] = static_cast<int>(i);
  aug.test_labeling = y;
  return aug;
}

std::vector<NodeId> local_scope(const AugmentedModel& aug, const std::vector<NodeId>& scope) {
  std::vector<NodeId> local;
  for (NodeId v : scope) local.push_back(aug.from_original[static_cast<std::size_t>(v)]);
  return local;
}

}  // namespace

void check_node_set(const GraphicalModel& model, const NodeSet& A) {
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (A[i] < 0 || A[i] >= model.num_nodes()) throw DomainError("node id out of range");
    if (i > 0 && A[i - 1] >= A[i]) throw DomainError("node set must be strictly increasing");
  }
}

BoundarySets boundary_sets(const GraphicalModel& model, const NodeSet& A) {
  check_node_set(model, A);
  BoundarySets sets;
  std::vector<char> on_boundary(static_cast<std::size_t>(model.num_nodes()), 0);
  for (FactorId f = 0; f < model.num_factors(); ++f) {
    const auto& scope = model.factor(f).scope;
    const auto inside = std::count_if(scope.begin(), scope.end(), [&](NodeId v) { return contains(A, v); });
    if (inside == 0 || inside == static_cast<long>(scope.size())) continue;
    sets.boundary_factors.push_back(f);
    for (NodeId v : scope) {
      if (contains(A, v)) on_boundary[static_cast<std::size_t>(v)] = 1;
    }
  }
  for (NodeId v : A) (on_boundary[static_cast<std::size_t>(v)] ? sets.boundary_nodes : sets.interior).push_back(v);
  return sets;
}

std::string to_string(BoundaryMode mode) { return mode == BoundaryMode::Original ? "original" : "optimal"; }

BoundaryMode parse_boundary_mode(const std::string& name) {
  if (name == "original") return BoundaryMode::Original;
  if (name == "optimal") return BoundaryMode::Optimal;
  throw DomainError("unknown boundary mode '" + name + "'");
}

Eigen::VectorXd boundary_potential(const GraphicalModel& model, FactorId f, const NodeSet& A, const PartialLabeling& y,
                                   BoundaryMode mode) {
  if (mode == BoundaryMode::Original) {
    require_boundary_factor(model, f, A);
    return original_potential(model, f, A, y);
  }
  return boundary_potential_relative(model, f, A, y, y);
}

Eigen::VectorXd boundary_potential_relative(const GraphicalModel& model, FactorId f, const NodeSet& A,
                                            const PartialLabeling& y, const PartialLabeling& reference) {
  require_boundary_factor(model, f, A);
  if (model.factor(f).arity() != 2) {
    throw UnsupportedArityError("the reparametrized boundary potential is only defined for pairwise factors");
  }
  const NodeId u = inside_node(model, f, A);
  const Label yu = require_label(y, u, "test labeling");
  const Label ru = require_label(reference, u, "reference labeling");
  const RowMatrixXd table = inside_rows(model, f, A);
  Eigen::VectorXd result(table.rows());
  for (Eigen::Index l = 0; l < table.rows(); ++l) {
    const Eigen::RowVectorXd diff = table.row(l) - table.row(ru);
    result[l] = l == yu ? diff.maxCoeff() : diff.minCoeff();
  }
  return result;
}

Labeling AugmentedModel::localize(const PartialLabeling& x) const {
  Labeling local;
  local.reserve(to_original.size());
  for (NodeId v : to_original) {
    const auto l = x.find(v);
    if (!l) throw DomainError("labeling does not cover node " + std::to_string(v));
    local.push_back(*l);
  }
  return local;
}

PartialLabeling AugmentedModel::globalize(const Labeling& local) const {
  if (local.size() != to_original.size()) throw DomainError("local labeling has wrong length");
  return PartialLabeling{to_original, local};
}

AugmentedModel build_augmented_model(const GraphicalModel& model, const NodeSet& A, const PartialLabeling& y,
                                     BoundaryMode mode, const PartialLabeling* reference) {
  check_node_set(model, A);
  AugmentedModel aug = empty_augmented(model, A, y);
  for (FactorId f = 0; f < model.num_factors(); ++f) {
    const Factor& factor = model.factor(f);
    const NodeSet inside = inside_scope(model, f, A);
    if (inside.empty()) continue;
    if (inside.size() == factor.scope.size()) {
      aug.model.add_factor(local_scope(aug, factor.scope), factor.table);
      continue;
    }
    Eigen::VectorXd table;
    if (mode == BoundaryMode::Original) {
      table = original_potential(model, f, A, y);
    } else {
      table = boundary_potential_relative(model, f, A, y, reference ? *reference : y);
    }
    aug.model.add_factor(local_scope(aug, inside), std::move(table));
  }
  return aug;
}

AugmentedModel build_gamma_model(const GraphicalModel& model, const NodeSet& A, const Labeling& y) {
  check_node_set(model, A);
  model.check_labeling(y);
  if (model.max_arity() > 2) throw UnsupportedArityError("the improving-mapping test needs a pairwise model");
  const PartialLabeling y_full = restrict_to(y, [&] {
    NodeSet all(static_cast<std::size_t>(model.num_nodes()));
    for (NodeId v = 0; v < model.num_nodes(); ++v) all[static_cast<std::size_t>(v)] = v;
    return all;
  }());
  AugmentedModel aug = empty_augmented(model, A, restrict_to(y, A));
  for (FactorId f = 0; f < model.num_factors(); ++f) {
    const Factor& factor = model.factor(f);
    const NodeSet inside = inside_scope(model, f, A);
    if (inside.empty()) continue;
    if (inside.size() == factor.scope.size()) {
      const double at_y = factor.table[model.table_index(f, y)];
      aug.model.add_factor(local_scope(aug, factor.scope), factor.table.array() - at_y);
      continue;
    }
    aug.model.add_factor(local_scope(aug, inside), boundary_potential_relative(model, f, A, y_full, y_full));
  }
  return aug;
}

}  // namespace persist
