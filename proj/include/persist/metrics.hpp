#pragma once

#include "persist/model.hpp"

namespace persist {

/// 1 - sum_{u not in A} log|X_u| / sum_{u in V} log|X_u|.
///
/// Nodes with a single label add nothing to either sum; a model made only of
/// such nodes counts as fully determined and scores 1.
double persistency_percentage(const GraphicalModel& model, const NodeSet& A);

}  // namespace persist
