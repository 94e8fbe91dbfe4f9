#pragma once

#include <optional>
#include <vector>

#include "persist/boundary.hpp"
#include "persist/model.hpp"
#include "persist/polytope.hpp"
#include "persist/solvers.hpp"

namespace persist {

/// One pass of the pruning loop.
struct IterationRecord {
  int active_nodes = 0;        // |A^t|
  int disagreeing = 0;         // boundary nodes whose label changed or became fractional
  int fractional_pruned = 0;   // other nodes of A^t left without a committed label
  long solver_iterations = 0;
  double augmented_energy = 0.0;  // test energy of the test labeling itself
  bool ties_possible = false;
};

struct PersistencyResult {
  NodeSet A_star;
  PartialLabeling x_star;
  std::vector<IterationRecord> trace;
  BoundaryMode mode = BoundaryMode::Original;
  SolverKind solver = SolverKind::ExactLp;
  Certificate certificate = Certificate::ExactLp;
  int initial_size = 0;
  long initial_solver_iterations = 0;

  int iterations() const { return static_cast<int>(trace.size()); }
};

struct PruneOptions {
  SolverConfig solver;
  /// Build the optimal-mode shift once from the initial labeling (extended by
  /// label 0) instead of from the current test labeling.
  bool fixed_reference = false;
};

/// Iteratively prunes the integral part of a relaxed solution until every
/// remaining node passes the boundary test. The result is persistent.
PersistencyResult prune(const GraphicalModel& model, SolverKind solver, BoundaryMode mode,
                        const PruneOptions& options = {});

struct CriterionVerdict {
  bool holds = false;
  double optimum = 0.0;     // minimum of the test problem (or a lower bound on it)
  double test_value = 0.0;  // test energy of the tested labeling
  /// The tested labeling when the criterion holds, a cheaper one when it is
  /// refuted and the solver produced one.
  std::optional<PartialLabeling> witness;
  std::optional<Marginals> marginals;
  /// Improving-mapping check only: every LP optimum is fixed by the mapping.
  bool strict = false;
};

/// Does x0 minimise its own test problem on A?
CriterionVerdict check_criterion(const GraphicalModel& model, const NodeSet& A, const PartialLabeling& x0,
                                 SolverKind solver, BoundaryMode mode, const SolverConfig& config = {},
                                 double tol = kDefaultTolerance);

/// LP test of the all-to-one mapping sending every label in A to y.
CriterionVerdict improving_mapping_check(const GraphicalModel& model, const NodeSet& A, const Labeling& y,
                                         const SolverConfig& config = {}, double tol = kDefaultTolerance);

struct ScanEntry {
  NodeSet A;
  PartialLabeling x;
};

struct ScanResult {
  std::vector<ScanEntry> pairs;  // ordered by subset bitmask, then labeling
  ScanEntry maximal;
};

/// Every (A, x) whose LP test problem on A is minimised exactly by delta(x),
/// with every LP optimum putting full mass on x over A.
ScanResult strong_persistency_scan(const GraphicalModel& model, int max_nodes = 12, const SolverConfig& config = {});

}  // namespace persist
