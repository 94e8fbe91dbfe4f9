#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "persist/generate.hpp"
#include "persist/model.hpp"

namespace persist::testing {

Eigen::VectorXd vec(std::initializer_list<double> values);

/// Two nodes, theta_u = [0,1], theta_v = [1,0], theta_uv = [[0,2],[2,0]].
GraphicalModel chain_model();

/// Three binary nodes in a cycle with theta_uv = [[1,0],[0,1]] and no unaries.
GraphicalModel frustrated_cycle();

/// The frustrated cycle plus node 3 attached to node 0 by a zero table,
/// with theta_3 = [0,10].
GraphicalModel pendant_model();

/// Random small model with whole-number potentials.
struct RandomModelOptions {
  int min_nodes = 2;
  int max_nodes = 6;
  int min_labels = 2;
  int max_labels = 3;
  double edge_density = 0.5;
  int unary_range = 4;
  int pair_range = 4;
  bool ternary = false;
  double max_states = 5e4;
};

GraphicalModel random_model(std::uint64_t seed, const RandomModelOptions& options = {});

/// Every labeling of the model in lexicographic order.
std::vector<Labeling> all_labelings(const GraphicalModel& model);

Labeling random_labeling(Sampler& rng, const GraphicalModel& model);
NodeSet random_subset(Sampler& rng, int num_nodes);
NodeSet all_nodes(const GraphicalModel& model);

}  // namespace persist::testing
