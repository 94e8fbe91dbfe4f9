#include <algorithm>

#include "persist/solvers.hpp"

namespace persist {

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::BruteForce:
      return "bruteforce";
    case SolverKind::ExactLp:
      return "lp";
    case SolverKind::Trws:
      return "trws";
  }
  return "unknown";
}

std::string to_string(Certificate certificate) {
  switch (certificate) {
    case Certificate::ExactIlp:
      return "exact-ilp";
    case Certificate::ExactLp:
      return "exact-lp";
    case Certificate::TreeAgreement:
      return "tree-agreement";
  }
  return "unknown";
}

SolverKind parse_solver_kind(const std::string& name) {
  if (name == "bruteforce") return SolverKind::BruteForce;
  if (name == "lp" || name == "exact-lp") return SolverKind::ExactLp;
  if (name == "trws") return SolverKind::Trws;
  throw DomainError("unknown solver '" + name + "'");
}

int SolverOutput::num_committed() const {
  return static_cast<int>(std::count_if(labels.begin(), labels.end(), [](const auto& l) { return l.has_value(); }));
}

bool SolverOutput::fully_committed() const { return num_committed() == static_cast<int>(labels.size()); }

std::optional<Labeling> SolverOutput::labeling() const {
  if (!fully_committed()) return std::nullopt;
  Labeling x;
  x.reserve(labels.size());
  for (const auto& l : labels) x.push_back(*l);
  return x;
}

Marginals output_to_marginals(const GraphicalModel& model, const SolverOutput& out) {
  if (static_cast<int>(out.labels.size()) != model.num_nodes()) throw DomainError("solver output has wrong length");
  Marginals mu;
  for (NodeId v = 0; v < model.num_nodes(); ++v) {
    const int k = model.num_labels(v);
    const auto& c = out.labels[static_cast<std::size_t>(v)];
    if (c) {
      Eigen::VectorXd m = Eigen::VectorXd::Zero(k);
      m[*c] = 1.0;
      mu.node.push_back(std::move(m));
    } else {
      mu.node.push_back(Eigen::VectorXd::Constant(k, 1.0 / k));
    }
  }
  for (FactorId f = 0; f < model.num_factors(); ++f) {
    const auto& scope = model.factor(f).scope;
    Eigen::VectorXd m = Eigen::VectorXd::Ones(1);
    for (NodeId v : scope) {
      const auto& node = mu.node[static_cast<std::size_t>(v)];
      Eigen::VectorXd next(m.size() * node.size());
      for (Eigen::Index i = 0; i < m.size(); ++i) next.segment(i * node.size(), node.size()) = m[i] * node;
      m = std::move(next);
    }
    mu.factor.push_back(std::move(m));
  }
  return mu;
}

SolverOutput solve(const GraphicalModel& model, SolverKind kind, const SolverConfig& config) {
  switch (kind) {
    case SolverKind::BruteForce: {
      const auto result = solve_bruteforce(model, config.enumeration_cap, config.tie_tolerance);
      SolverOutput out;
      out.labels.assign(result.best.begin(), result.best.end());
      out.bound = result.value;
      out.certificate = Certificate::ExactIlp;
      out.iterations = 1;
      out.ties_possible = result.all_optima.size() > 1;
      return out;
    }
    case SolverKind::ExactLp:
      return solve_lp_exact(model, config).output;
    case SolverKind::Trws:
      return solve_trws(model, config.stop);
  }
  throw DomainError("unknown solver kind");
}

}  // namespace persist
