#pragma once

#include <optional>
#include <string>
#include <vector>

#include "persist/model.hpp"
#include "persist/polytope.hpp"
#include "persist/simplex.hpp"

namespace persist {

enum class SolverKind { BruteForce, ExactLp, Trws };

/// What backs the committed labels of a SolverOutput.
enum class Certificate { ExactIlp, ExactLp, TreeAgreement };

std::string to_string(SolverKind kind);
std::string to_string(Certificate certificate);
SolverKind parse_solver_kind(const std::string& name);

/// Per-node verdict of an integrally correct solver.
///
/// A node holds either a committed label or nullopt, the fractional marker.
/// Whenever no node is fractional the committed labeling is a global optimum.
struct SolverOutput {
  std::vector<std::optional<Label>> labels;
  double bound = 0.0;
  Certificate certificate = Certificate::ExactIlp;
  long iterations = 0;
  /// The solver could not rule out a different optimum with other committed labels.
  bool ties_possible = false;

  int num_committed() const;
  bool fully_committed() const;
  /// The committed labels as a full labeling, if nothing is fractional.
  std::optional<Labeling> labeling() const;
};

/// Stopping rules for the TRW-S style solver.
struct StopRule {
  double relative_gap = 1e-5;
  int stall_passes = 100;
  int max_passes = 1500;
};

struct SolverConfig {
  double enumeration_cap = 2e6;
  double tie_tolerance = kDefaultTolerance;
  /// Largest LP (variables times rows) the dense simplex accepts.
  double lp_cap = 4e8;
  double integrality_tolerance = 1e-6;
  SimplexOptions simplex;
  StopRule stop;
};

struct BruteForceResult {
  Labeling best;
  double value = 0.0;
  /// Every labeling within the tie tolerance of `value`, lexicographically sorted.
  std::vector<Labeling> all_optima;
};

/// Exhaustive minimisation. Throws CapExceededError above `cap` joint labelings.
BruteForceResult solve_bruteforce(const GraphicalModel& model, double cap = 2e6,
                                  double tie_tolerance = kDefaultTolerance);

struct LpResult {
  Marginals marginals;
  double value = 0.0;
  SolverOutput output;
  long pivots = 0;
};

/// Optimal vertex of the local polytope found by the dense simplex.
LpResult solve_lp_exact(const GraphicalModel& model, const SolverConfig& config = {});

/// Commits every node whose marginal puts mass >= 1 - tol on one label.
std::vector<std::optional<Label>> commit_integral_nodes(const GraphicalModel& model, const Marginals& mu,
                                                        double tol = 1e-6);

/// Minimum of sum_{v in x.domain} mu_v(x_v) over local-polytope points whose
/// linear energy is at most optimum + slack.
///
/// A value of |domain| means every LP optimum puts full mass on x.
double min_mass_on_optimal_face(const GraphicalModel& model, const PartialLabeling& x, double optimum, double slack,
                                const SimplexOptions& options = {});

struct TrwsTrace {
  std::vector<double> bound_history;  // one entry per pass
  Labeling best_primal;
  double best_primal_energy = 0.0;
};

/// Sequential dual block-coordinate ascent on a pairwise model.
SolverOutput solve_trws(const GraphicalModel& model, const StopRule& stop = {}, TrwsTrace* trace = nullptr);

/// Node marginals of a solver output: indicator for committed labels,
/// uniform for fractional ones. Factor marginals are products of node marginals.
Marginals output_to_marginals(const GraphicalModel& model, const SolverOutput& out);

/// Runs one solver and reduces it to the common output contract.
SolverOutput solve(const GraphicalModel& model, SolverKind kind, const SolverConfig& config = {});

}  // namespace persist
