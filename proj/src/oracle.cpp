#include "persist/oracle.hpp"

#include <limits>

#include "persist/boundary.hpp"
#include "persist/solvers.hpp"

namespace persist {
namespace {

PartialLabeling checked_claim(const GraphicalModel& model, const NodeSet& A, const PartialLabeling& x) {
  check_node_set(model, A);
  PartialLabeling claim;
  claim.domain = A;
  for (NodeId v : A) {
    const auto l = x.find(v);
    if (!l) throw DomainError("labeling does not cover node " + std::to_string(v));
    if (*l < 0 || *l >= model.num_labels(v)) {
      throw InvalidLabelingError("label " + std::to_string(*l) + " out of range at node " + std::to_string(v));
    }
    claim.labels.push_back(*l);
  }
  return claim;
}

bool agrees(const Labeling& x, const PartialLabeling& claim) {
  for (std::size_t i = 0; i < claim.size(); ++i) {
    if (x[static_cast<std::size_t>(claim.domain[i])] != claim.labels[i]) return false;
  }
  return true;
}

// Minimum of E(x) - E(p(x)) over all x, plus the first moved labeling that
// comes within `tie` of zero or below.
struct MappingScan {
  double min_difference = std::numeric_limits<double>::infinity();
  Labeling argmin;
  std::optional<Labeling> moved_non_strict;
};

MappingScan scan_mapping(const GraphicalModel& model, const NodeSet& A, const Labeling& y,
                         const OracleOptions& options) {
  check_node_set(model, A);
  model.check_labeling(y);
  if (model.state_space_size() > options.cap) throw CapExceededError("state space exceeds the oracle cap");

  MappingScan scan;
  Labeling x(static_cast<std::size_t>(model.num_nodes()), 0);
  Labeling mapped = x;
  const auto counts = model.label_counts();
  for (;;) {
    bool moved = false;
    mapped = x;
    for (NodeId v : A) {
      const auto i = static_cast<std::size_t>(v);
      moved = moved || mapped[i] != y[i];
      mapped[i] = y[i];
    }
    const double diff = moved ? energy(model, x) - energy(model, mapped) : 0.0;
    if (diff < scan.min_difference) {
      scan.min_difference = diff;
      scan.argmin = x;
    }
    if (moved && !scan.moved_non_strict && diff <= options.tie_tolerance) scan.moved_non_strict = x;

    std::size_t i = x.size();
    while (i > 0 && ++x[i - 1] == counts[i - 1]) x[--i] = 0;
    if (i == 0) break;
  }
  return scan;
}

}  // namespace

std::string to_string(ClaimKind kind) {
  switch (kind) {
    case ClaimKind::Persistent:
      return "persistent";
    case ClaimKind::StronglyPersistent:
      return "strongly-persistent";
    case ClaimKind::Improving:
      return "improving";
    case ClaimKind::StrictlyImproving:
      return "strictly-improving";
  }
  return "unknown";
}

OracleReport verify_persistent(const GraphicalModel& model, const NodeSet& A, const PartialLabeling& x,
                               const OracleOptions& options) {
  const PartialLabeling claim = checked_claim(model, A, x);
  const auto bf = solve_bruteforce(model, options.cap, options.tie_tolerance);
  OracleReport report;
  report.claim = ClaimKind::Persistent;
  report.num_optima = static_cast<int>(bf.all_optima.size());
  for (const auto& opt : bf.all_optima) {
    if (agrees(opt, claim)) {
      report.verdict = true;
      return report;
    }
  }
  report.counterexample = bf.all_optima.front();
  return report;
}

OracleReport verify_strongly_persistent(const GraphicalModel& model, const NodeSet& A, const PartialLabeling& x,
                                        const OracleOptions& options) {
  const PartialLabeling claim = checked_claim(model, A, x);
  const auto bf = solve_bruteforce(model, options.cap, options.tie_tolerance);
  OracleReport report;
  report.claim = ClaimKind::StronglyPersistent;
  report.num_optima = static_cast<int>(bf.all_optima.size());
  report.verdict = true;
  for (const auto& opt : bf.all_optima) {
    if (!agrees(opt, claim)) {
      report.verdict = false;
      report.counterexample = opt;
      break;
    }
  }
  return report;
}

OracleReport verify_improving(const GraphicalModel& model, const NodeSet& A, const Labeling& y,
                              const OracleOptions& options) {
  const MappingScan scan = scan_mapping(model, A, y, options);
  OracleReport report;
  report.claim = ClaimKind::Improving;
  report.verdict = scan.min_difference >= -options.tie_tolerance;
  if (!report.verdict) report.counterexample = scan.argmin;
  return report;
}

OracleReport verify_strictly_improving(const GraphicalModel& model, const NodeSet& A, const Labeling& y,
                                       const OracleOptions& options) {
  const MappingScan scan = scan_mapping(model, A, y, options);
  OracleReport report;
  report.claim = ClaimKind::StrictlyImproving;
  report.verdict = !scan.moved_non_strict.has_value();
  if (!report.verdict) report.counterexample = scan.moved_non_strict;
  return report;
}

}  // namespace persist
