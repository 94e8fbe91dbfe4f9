#pragma once

#include <optional>
#include <string>

#include "persist/model.hpp"

namespace persist {

enum class ClaimKind { Persistent, StronglyPersistent, Improving, StrictlyImproving };

std::string to_string(ClaimKind kind);

/// Ground-truth verdict on a claim, decided by exhaustive enumeration.
struct OracleReport {
  ClaimKind claim = ClaimKind::Persistent;
  bool verdict = false;
  /// A labeling refuting the claim; present exactly when the verdict is false.
  std::optional<Labeling> counterexample;
  int num_optima = 0;
};

struct OracleOptions {
  double cap = 2e6;
  double tie_tolerance = kDefaultTolerance;
};

/// Some global optimum agrees with x on A.
OracleReport verify_persistent(const GraphicalModel& model, const NodeSet& A, const PartialLabeling& x,
                               const OracleOptions& options = {});

/// Every global optimum agrees with x on A.
OracleReport verify_strongly_persistent(const GraphicalModel& model, const NodeSet& A, const PartialLabeling& x,
                                        const OracleOptions& options = {});

/// The all-to-one mapping p (labels on A replaced by y) never increases the energy.
OracleReport verify_improving(const GraphicalModel& model, const NodeSet& A, const Labeling& y,
                              const OracleOptions& options = {});

/// Improving, and E(x) > E(p(x)) whenever p moves x.
OracleReport verify_strictly_improving(const GraphicalModel& model, const NodeSet& A, const Labeling& y,
                                       const OracleOptions& options = {});

}  // namespace persist
