#pragma once

#include <string>
#include <vector>

#include "persist/model.hpp"

namespace persist {

struct BoundarySets {
  NodeSet boundary_nodes;                 // nodes of A with a factor leaving A
  std::vector<FactorId> boundary_factors; // factors with scope nodes on both sides
  NodeSet interior;                       // A minus the boundary nodes
};

/// Throws DomainError unless A is a strictly increasing list of valid node ids.
void check_node_set(const GraphicalModel& model, const NodeSet& A);

BoundarySets boundary_sets(const GraphicalModel& model, const NodeSet& A);

enum class BoundaryMode { Original, Optimal };

std::string to_string(BoundaryMode mode);
BoundaryMode parse_boundary_mode(const std::string& name);

/// Test potential of a boundary factor, as a table over the factor's nodes
/// inside A (sorted, row-major).
///
/// Original mode maximises over exterior labels where the inside labels equal
/// y and minimises elsewhere. Optimal mode (pairwise only) is the same
/// construction after the shift psi that makes it as tight as possible; it is
/// zero at y_u.
Eigen::VectorXd boundary_potential(const GraphicalModel& model, FactorId f, const NodeSet& A, const PartialLabeling& y,
                                   BoundaryMode mode);

/// Optimal-mode boundary potential with psi built from `reference` instead of y:
/// max_{x_v} theta(y_u, x_v) - theta(r_u, x_v) at y_u, and
/// min_{x_v} theta(x_u, x_v) - theta(r_u, x_v) elsewhere.
Eigen::VectorXd boundary_potential_relative(const GraphicalModel& model, FactorId f, const NodeSet& A,
                                            const PartialLabeling& y, const PartialLabeling& reference);

/// The test problem on A: the factors inside A plus all boundary potentials,
/// re-indexed to 0..|A|-1 in the order of A.
struct AugmentedModel {
  GraphicalModel model;
  NodeSet to_original;
  std::vector<int> from_original;  // -1 outside A
  PartialLabeling test_labeling;

  /// Local labeling of the augmented model for a labeling given on (a superset of) A.
  Labeling localize(const PartialLabeling& x) const;
  PartialLabeling globalize(const Labeling& local) const;
};

/// Builds the augmented model. `y` must cover the boundary nodes of A. When
/// `reference` is given (optimal mode only), psi is built from it rather than y.
AugmentedModel build_augmented_model(const GraphicalModel& model, const NodeSet& A, const PartialLabeling& y,
                                     BoundaryMode mode, const PartialLabeling* reference = nullptr);

/// Test energy of the all-to-one mapping onto y over A: every table inside A
/// is shifted so that y scores zero, and each boundary edge contributes
/// min_{x_v} theta(x_u, x_v) - theta(y_u, x_v).
AugmentedModel build_gamma_model(const GraphicalModel& model, const NodeSet& A, const Labeling& y);

}  // namespace persist
