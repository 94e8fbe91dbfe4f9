#include "support.hpp"

#include <algorithm>

namespace persist::testing {

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

GraphicalModel chain_model() {
  GraphicalModel m({2, 2});
  m.add_factor({0}, vec({0, 1}));
  m.add_factor({1}, vec({1, 0}));
  m.add_factor({0, 1}, vec({0, 2, 2, 0}));
  return m;
}

GraphicalModel frustrated_cycle() {
  GraphicalModel m({2, 2, 2});
  m.add_factor({0, 1}, vec({1, 0, 0, 1}));
  m.add_factor({1, 2}, vec({1, 0, 0, 1}));
  m.add_factor({0, 2}, vec({1, 0, 0, 1}));
  return m;
}

GraphicalModel pendant_model() {
  GraphicalModel m({2, 2, 2, 2});
  m.add_factor({0, 1}, vec({1, 0, 0, 1}));
  m.add_factor({1, 2}, vec({1, 0, 0, 1}));
  m.add_factor({0, 2}, vec({1, 0, 0, 1}));
  m.add_factor({3}, vec({0, 10}));
  m.add_factor({0, 3}, vec({0, 0, 0, 0}));
  return m;
}

GraphicalModel random_model(std::uint64_t seed, const RandomModelOptions& options) {
  Sampler rng(seed);
  for (;;) {
    const int n = static_cast<int>(rng.integer(options.min_nodes, options.max_nodes));
    std::vector<int> counts;
    double states = 1.0;
    for (int v = 0; v < n; ++v) {
      counts.push_back(static_cast<int>(rng.integer(options.min_labels, options.max_labels)));
      states *= counts.back();
    }
    if (states > options.max_states) continue;

    GraphicalModel m(counts);
    for (NodeId v = 0; v < n; ++v) {
      Eigen::VectorXd t(counts[static_cast<std::size_t>(v)]);
      for (Eigen::Index i = 0; i < t.size(); ++i) t[i] = static_cast<double>(rng.integer(0, options.unary_range));
      m.add_factor({v}, t);
    }
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (rng.uniform01() >= options.edge_density) continue;
        Eigen::VectorXd t(counts[static_cast<std::size_t>(u)] * counts[static_cast<std::size_t>(v)]);
        for (Eigen::Index i = 0; i < t.size(); ++i) t[i] = static_cast<double>(rng.integer(0, options.pair_range));
        m.add_factor({u, v}, t);
      }
    }
    if (options.ternary && n >= 3) {
      std::vector<NodeId> scope;
      while (scope.size() < 3) {
        const auto v = static_cast<NodeId>(rng.integer(0, n - 1));
        if (std::find(scope.begin(), scope.end(), v) == scope.end()) scope.push_back(v);
      }
      Eigen::Index size = 1;
      for (NodeId v : scope) size *= counts[static_cast<std::size_t>(v)];
      Eigen::VectorXd t(size);
      for (Eigen::Index i = 0; i < size; ++i) t[i] = static_cast<double>(rng.integer(0, options.pair_range));
      m.add_factor(scope, t);
    }
    return m;
  }
}

std::vector<Labeling> all_labelings(const GraphicalModel& model) {
  std::vector<Labeling> out;
  Labeling x(static_cast<std::size_t>(model.num_nodes()), 0);
  for (;;) {
    out.push_back(x);
    std::size_t i = x.size();
    while (i > 0 && ++x[i - 1] == model.num_labels(static_cast<NodeId>(i - 1))) x[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

Labeling random_labeling(Sampler& rng, const GraphicalModel& model) {
  Labeling x;
  for (NodeId v = 0; v < model.num_nodes(); ++v) x.push_back(static_cast<Label>(rng.integer(0, model.num_labels(v) - 1)));
  return x;
}

NodeSet random_subset(Sampler& rng, int num_nodes) {
  NodeSet A;
  for (NodeId v = 0; v < num_nodes; ++v) {
    if (rng.uniform01() < 0.5) A.push_back(v);
  }
  return A;
}

NodeSet all_nodes(const GraphicalModel& model) {
  NodeSet A;
  for (NodeId v = 0; v < model.num_nodes(); ++v) A.push_back(v);
  return A;
}

}  // namespace persist::testing
