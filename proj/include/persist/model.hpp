#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "persist/types.hpp"

namespace persist {

/// A cost table over the joint label space of `scope`, row-major: the last
/// scope node varies fastest.
struct Factor {
  std::vector<NodeId> scope;
  Eigen::VectorXd table;

  int arity() const { return static_cast<int>(scope.size()); }
};

/// Discrete graphical model: finite label spaces per node plus dense factors.
///
/// Scopes are kept strictly sorted; a factor added with an unsorted scope has
/// its table permuted accordingly, and factors sharing a scope are merged by
/// addition. Models are built once and then only read.
class GraphicalModel {
 public:
  GraphicalModel() = default;
  explicit GraphicalModel(std::vector<int> label_counts);

  /// Adds (or merges into) the factor over `scope`. Returns its id.
  FactorId add_factor(std::vector<NodeId> scope, Eigen::VectorXd table);

  int num_nodes() const { return static_cast<int>(label_counts_.size()); }
  int num_labels(NodeId v) const { return label_counts_[static_cast<std::size_t>(v)]; }
  std::span<const int> label_counts() const { return label_counts_; }

  int num_factors() const { return static_cast<int>(factors_.size()); }
  const Factor& factor(FactorId f) const { return factors_[static_cast<std::size_t>(f)]; }
  std::span<const Factor> factors() const { return factors_; }

  /// Factors whose scope contains `v`, in increasing id order.
  std::span<const FactorId> factors_of(NodeId v) const {
    return adjacency_[static_cast<std::size_t>(v)];
  }

  /// Id of the factor with exactly this (sorted) scope, or -1.
  FactorId find_factor(std::span<const NodeId> scope) const;

  int max_arity() const;
  bool is_pairwise() const { return max_arity() <= 2; }

  /// Total number of joint labelings (as a double; may be huge).
  double state_space_size() const;

  /// Row-major table offset of the labeling restricted to the factor's scope.
  Eigen::Index table_index(FactorId f, std::span<const Label> x) const;

  /// Throws InvalidLabelingError unless x assigns an in-range label to every node.
  void check_labeling(std::span<const Label> x) const;

  bool operator==(const GraphicalModel& other) const;

 private:
  std::vector<int> label_counts_;
  std::vector<Factor> factors_;
  std::vector<std::vector<FactorId>> adjacency_;
};

/// Read-only (k_u x k_v) view of a pairwise factor's table.
Eigen::Map<const RowMatrixXd> pairwise_table(const GraphicalModel& model, FactorId f);

/// Sum of all factor costs at x, in factor order.
double energy(const GraphicalModel& model, std::span<const Label> x);

/// Energy of the factors whose scope lies inside `nodes`; x must cover them.
double restricted_energy(const GraphicalModel& model, const NodeSet& nodes, const PartialLabeling& x);

/// Merges x0 (on A) and rest (on V \ A) into a full labeling.
Labeling concatenate(const GraphicalModel& model, const PartialLabeling& x0, const PartialLabeling& rest);

/// Message-style shifts on pairwise edges.
///
/// Each pairwise factor f = {u, v} carries one vector over X_u and one over
/// X_v. The vector living on node w of edge f is subtracted from w's unary
/// and added to the edge table, so every labeling keeps its energy.
class Reparametrization {
 public:
  Reparametrization() = default;
  explicit Reparametrization(const GraphicalModel& model);

  /// The message on `node`'s side of pairwise factor `f`.
  Eigen::VectorXd& on(FactorId f, NodeId node);
  const Eigen::VectorXd& on(FactorId f, NodeId node) const;

  int num_factors() const { return static_cast<int>(first_.size()); }
  bool covers(FactorId f) const;

 private:
  std::vector<NodeId> first_node_;
  std::vector<NodeId> second_node_;
  std::vector<Eigen::VectorXd> first_;
  std::vector<Eigen::VectorXd> second_;
};

/// theta^phi: unaries lose the messages on their side, edges gain both.
GraphicalModel apply_reparametrization(const GraphicalModel& model, const Reparametrization& phi);

/// The shift psi that maximises every boundary gap for test labeling y:
/// the message on v's side of edge uv is -theta_uv(y_u, .).
Reparametrization optimal_reparametrization(const GraphicalModel& model, std::span<const Label> y);

}  // namespace persist
