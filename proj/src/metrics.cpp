#include "persist/metrics.hpp"

#include <cmath>

#include "persist/boundary.hpp"

namespace persist {

double persistency_percentage(const GraphicalModel& model, const NodeSet& A) {
  check_node_set(model, A);
  std::vector<char> inside(static_cast<std::size_t>(model.num_nodes()), 0);
  for (NodeId v : A) inside[static_cast<std::size_t>(v)] = 1;
  double total = 0.0;
  double undetermined = 0.0;
  for (NodeId v = 0; v < model.num_nodes(); ++v) {
    const double weight = std::log(static_cast<double>(model.num_labels(v)));
    total += weight;
    if (!inside[static_cast<std::size_t>(v)]) undetermined += weight;
  }
  if (total == 0.0) return 1.0;
  return 1.0 - undetermined / total;
}

}  // namespace persist
