#include "persist/persistency.hpp"

#include <algorithm>
#include <cmath>

namespace persist {
namespace {

PartialLabeling restrict_partial(const PartialLabeling& x, const NodeSet& A) {
  PartialLabeling out;
  out.domain = A;
  for (NodeId v : A) {
    const auto l = x.find(v);
    if (!l) throw DomainError("labeling does not cover node " + std::to_string(v));
    out.labels.push_back(*l);
  }
  return out;
}

bool within(double test, double optimum, double tol) { return test - optimum <= tol * (1.0 + std::abs(test)); }

}  // namespace

PersistencyResult prune(const GraphicalModel& model, SolverKind solver, BoundaryMode mode, const PruneOptions& options) {
  if (mode == BoundaryMode::Optimal && !model.is_pairwise()) {
    throw UnsupportedArityError("optimal boundary mode needs a pairwise model");
  }
  PersistencyResult result;
  result.mode = mode;
  result.solver = solver;

  const SolverOutput initial = solve(model, solver, options.solver);
  result.certificate = initial.certificate;
  result.initial_solver_iterations = initial.iterations;

  PartialLabeling x;
  Labeling reference_labels(static_cast<std::size_t>(model.num_nodes()), 0);
  for (NodeId v = 0; v < model.num_nodes(); ++v) {
    if (const auto& c = initial.labels[static_cast<std::size_t>(v)]) {
      x.domain.push_back(v);
      x.labels.push_back(*c);
      reference_labels[static_cast<std::size_t>(v)] = *c;
    }
  }
  result.initial_size = static_cast<int>(x.size());

  PartialLabeling reference;
  const PartialLabeling* reference_ptr = nullptr;
  if (mode == BoundaryMode::Optimal && options.fixed_reference) {
    NodeSet all(static_cast<std::size_t>(model.num_nodes()));
    for (NodeId v = 0; v < model.num_nodes(); ++v) all[static_cast<std::size_t>(v)] = v;
    reference = restrict_to(reference_labels, all);
    reference_ptr = &reference;
  }

  while (!x.empty()) {
    const NodeSet& A = x.domain;
    const AugmentedModel aug = build_augmented_model(model, A, x, mode, reference_ptr);
    const SolverOutput out = solve(aug.model, solver, options.solver);

    const BoundarySets sets = boundary_sets(model, A);
    std::vector<char> disagrees(A.size(), 0);
    IterationRecord record;
    record.active_nodes = static_cast<int>(A.size());
    record.solver_iterations = out.iterations;
    record.augmented_energy = energy(aug.model, aug.localize(x));
    record.ties_possible = out.ties_possible;
    for (NodeId u : sets.boundary_nodes) {
      const auto i = static_cast<std::size_t>(aug.from_original[static_cast<std::size_t>(u)]);
      if (!out.labels[i] || *out.labels[i] != x.labels[i]) {
        disagrees[i] = 1;
        ++record.disagreeing;
      }
    }

    PartialLabeling next;
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (!out.labels[i]) {
        if (!disagrees[i]) ++record.fractional_pruned;
        continue;
      }
      if (disagrees[i]) continue;
      next.domain.push_back(A[i]);
      next.labels.push_back(*out.labels[i]);
    }
    result.trace.push_back(record);
    const bool fixpoint = next.size() == A.size();
    x = std::move(next);
    if (fixpoint) break;
  }

  result.A_star = x.domain;
  result.x_star = x;
  return result;
}

CriterionVerdict check_criterion(const GraphicalModel& model, const NodeSet& A, const PartialLabeling& x0,
                                 SolverKind solver, BoundaryMode mode, const SolverConfig& config, double tol) {
  check_node_set(model, A);
  const PartialLabeling tested = restrict_partial(x0, A);
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (tested.labels[i] < 0 || tested.labels[i] >= model.num_labels(A[i])) {
      throw InvalidLabelingError("label out of range at node " + std::to_string(A[i]));
    }
  }

  CriterionVerdict verdict;
  if (A.empty()) {
    verdict.holds = true;
    verdict.witness = tested;
    return verdict;
  }

  const AugmentedModel aug = build_augmented_model(model, A, tested, mode);
  verdict.test_value = energy(aug.model, tested.labels);

  switch (solver) {
    case SolverKind::BruteForce: {
      const auto bf = solve_bruteforce(aug.model, config.enumeration_cap, config.tie_tolerance);
      verdict.optimum = bf.value;
      verdict.holds = within(verdict.test_value, bf.value, tol);
      verdict.witness = verdict.holds ? tested : aug.globalize(bf.best);
      break;
    }
    case SolverKind::ExactLp: {
      const auto lp = solve_lp_exact(aug.model, config);
      verdict.optimum = lp.value;
      verdict.holds = within(verdict.test_value, lp.value, tol);
      verdict.marginals = lp.marginals;
      if (verdict.holds) {
        verdict.witness = tested;
      } else if (const auto local = lp.output.labeling()) {
        verdict.witness = aug.globalize(*local);
      }
      break;
    }
    case SolverKind::Trws: {
      TrwsTrace trace;
      const auto out = solve_trws(aug.model, config.stop, &trace);
      verdict.optimum = out.bound;
      verdict.holds = within(verdict.test_value, out.bound, tol);
      if (verdict.holds) {
        verdict.witness = tested;
      } else if (trace.best_primal_energy < verdict.test_value) {
        verdict.witness = aug.globalize(trace.best_primal);
      }
      break;
    }
  }
  return verdict;
}

CriterionVerdict improving_mapping_check(const GraphicalModel& model, const NodeSet& A, const Labeling& y,
                                         const SolverConfig& config, double tol) {
  const AugmentedModel gamma = build_gamma_model(model, A, y);
  const PartialLabeling target = restrict_to(y, A);

  CriterionVerdict verdict;
  verdict.witness = target;
  if (A.empty()) {
    verdict.holds = true;
    verdict.strict = true;
    return verdict;
  }

  // Same scale as the boundary test so both checks share one tolerance.
  const AugmentedModel shifted = build_augmented_model(model, A, target, BoundaryMode::Optimal);
  const double scale = energy(shifted.model, target.labels);

  const auto lp = solve_lp_exact(gamma.model, config);
  verdict.optimum = lp.value;
  verdict.test_value = 0.0;
  verdict.marginals = lp.marginals;
  verdict.holds = -lp.value <= tol * (1.0 + std::abs(scale));
  if (verdict.holds) {
    const double slack = tol * (1.0 + std::abs(lp.value));
    PartialLabeling local_target;
    for (std::size_t i = 0; i < A.size(); ++i) local_target.domain.push_back(static_cast<NodeId>(i));
    local_target.labels = target.labels;
    const double mass = min_mass_on_optimal_face(gamma.model, local_target, lp.value, slack, config.simplex);
    verdict.strict = mass >= static_cast<double>(A.size()) - 1e-7;
  }
  return verdict;
}

}  // namespace persist
