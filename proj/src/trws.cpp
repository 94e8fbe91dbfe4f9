#include <algorithm>
#include <cmath>
#include <limits>

#include "persist/solvers.hpp"

namespace persist {
namespace {

constexpr double kMargin = 1e-9;

double scaled(double tol, double value) { return tol * (1.0 + std::abs(value)); }

struct Edge {
  NodeId first = 0;
  NodeId second = 0;
  RowMatrixXd table;  // first node indexes rows
};

struct Incidence {
  int edge = 0;
  bool is_first = false;
  NodeId other = 0;
};

// Reparametrized potentials: every operation keeps each labeling's energy.
class TrwsState {
 public:
  explicit TrwsState(const GraphicalModel& model) : model_(model) {
    const auto n = static_cast<std::size_t>(model.num_nodes());
    unary_.resize(n);
    incident_.resize(n);
    for (NodeId v = 0; v < model.num_nodes(); ++v) unary_[static_cast<std::size_t>(v)].setZero(model.num_labels(v));
    for (FactorId f = 0; f < model.num_factors(); ++f) {
      const Factor& factor = model.factor(f);
      if (factor.arity() == 1) {
        unary_[static_cast<std::size_t>(factor.scope[0])] += factor.table;
      } else if (factor.arity() == 2) {
        const int id = static_cast<int>(edges_.size());
        edges_.push_back({factor.scope[0], factor.scope[1], pairwise_table(model, f)});
        incident_[static_cast<std::size_t>(factor.scope[0])].push_back({id, true, factor.scope[1]});
        incident_[static_cast<std::size_t>(factor.scope[1])].push_back({id, false, factor.scope[0]});
      } else {
        throw UnsupportedArityError("the tree-reweighted solver needs a pairwise model");
      }
    }
    weight_.resize(n, 1.0);
    for (std::size_t v = 0; v < n; ++v) {
      int before = 0;
      int after = 0;
      for (const auto& inc : incident_[v]) (inc.other < static_cast<NodeId>(v) ? before : after) += 1;
      weight_[v] = 1.0 / std::max({before, after, 1});
    }
  }

  void forward_pass() {
    for (NodeId v = 0; v < model_.num_nodes(); ++v) update(v, true);
  }

  void backward_pass() {
    for (NodeId v = model_.num_nodes(); v-- > 0;) update(v, false);
  }

  double bound() const {
    double sum = 0.0;
    for (const auto& h : unary_) sum += h.minCoeff();
    for (const auto& e : edges_) sum += e.table.minCoeff();
    return sum;
  }

  // Minimum of the edge over the other endpoint, indexed by v's label.
  Eigen::VectorXd edge_min_for(const Incidence& inc) const {
    const auto& t = edges_[static_cast<std::size_t>(inc.edge)].table;
    if (inc.is_first) return t.rowwise().minCoeff();
    return t.colwise().minCoeff().transpose();
  }

  double edge_value(const Incidence& inc, Label mine, Label theirs) const {
    const auto& t = edges_[static_cast<std::size_t>(inc.edge)].table;
    return inc.is_first ? t(mine, theirs) : t(theirs, mine);
  }

  double edge_min(const Incidence& inc) const { return edges_[static_cast<std::size_t>(inc.edge)].table.minCoeff(); }

  // Unary with every incident edge minimised out.
  Eigen::VectorXd collected(NodeId v) const {
    Eigen::VectorXd c = unary_[static_cast<std::size_t>(v)];
    for (const auto& inc : incident_[static_cast<std::size_t>(v)]) c += edge_min_for(inc);
    return c;
  }

  std::span<const Incidence> incident(NodeId v) const { return incident_[static_cast<std::size_t>(v)]; }
  const Eigen::VectorXd& unary(NodeId v) const { return unary_[static_cast<std::size_t>(v)]; }

 private:
  void update(NodeId v, bool forward) {
    auto& h = unary_[static_cast<std::size_t>(v)];
    for (const auto& inc : incident_[static_cast<std::size_t>(v)]) {
      auto& t = edges_[static_cast<std::size_t>(inc.edge)].table;
      if (inc.is_first) {
        const Eigen::VectorXd m = t.rowwise().minCoeff();
        t.colwise() -= m;
        h += m;
      } else {
        const Eigen::RowVectorXd m = t.colwise().minCoeff();
        t.rowwise() -= m;
        h += m.transpose();
      }
    }
    const double w = weight_[static_cast<std::size_t>(v)];
    int sent = 0;
    for (const auto& inc : incident_[static_cast<std::size_t>(v)]) {
      if ((inc.other > v) != forward) continue;
      auto& t = edges_[static_cast<std::size_t>(inc.edge)].table;
      if (inc.is_first) {
        t.colwise() += w * h;
      } else {
        t.rowwise() += w * h.transpose();
      }
      ++sent;
    }
    if (sent > 0) h *= 1.0 - sent * w;
  }

  const GraphicalModel& model_;
  std::vector<Eigen::VectorXd> unary_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> incident_;
  std::vector<double> weight_;
};

// Nodes where the primal labeling attains the minimum of the node's collected
// unary and of every incident edge. When every node qualifies the primal
// energy equals the dual bound, so a full commitment is always optimal.
// A node whose label satisfies complementary slackness against the primal keeps
// it when the collected argmin is strict, or when every neighbour is slack too.
// On a tied dual only the second test can fire, and it needs a whole
// neighbourhood that the primal explains.
std::vector<std::optional<Label>> consistent_nodes(const GraphicalModel& model, const TrwsState& state,
                                                   const Labeling& primal) {
  const auto n = static_cast<std::size_t>(model.num_nodes());
  std::vector<bool> slack(n, false);
  std::vector<bool> strict(n, false);
  for (NodeId v = 0; v < model.num_nodes(); ++v) {
    const Label a = primal[static_cast<std::size_t>(v)];
    const Eigen::VectorXd c = state.collected(v);
    const double low = c.minCoeff();
    if (c[a] > low + scaled(kMargin, low)) continue;
    bool consistent = true;
    for (const auto& inc : state.incident(v)) {
      const double edge_low = state.edge_min(inc);
      if (state.edge_value(inc, a, primal[static_cast<std::size_t>(inc.other)]) > edge_low + scaled(kMargin, edge_low)) {
        consistent = false;
        break;
      }
    }
    if (!consistent) continue;
    slack[static_cast<std::size_t>(v)] = true;
    bool unique = true;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      if (i != a && c[i] <= low + scaled(kMargin, low)) unique = false;
    }
    strict[static_cast<std::size_t>(v)] = unique;
  }

  std::vector<std::optional<Label>> labels(n);
  for (NodeId v = 0; v < model.num_nodes(); ++v) {
    const auto i = static_cast<std::size_t>(v);
    if (!slack[i]) continue;
    bool keep = strict[i];
    if (!keep) {
      keep = true;
      for (const auto& inc : state.incident(v)) keep = keep && slack[static_cast<std::size_t>(inc.other)];
    }
    if (keep) labels[i] = primal[i];
  }
  return labels;
}

// Greedy labeling in node order, conditioning on the labels already chosen.
Labeling round_primal(const GraphicalModel& model, const TrwsState& state) {
  Labeling x(static_cast<std::size_t>(model.num_nodes()), 0);
  for (NodeId v = 0; v < model.num_nodes(); ++v) {
    Eigen::VectorXd c = state.unary(v);
    for (const auto& inc : state.incident(v)) {
      if (inc.other < v) {
        const Label theirs = x[static_cast<std::size_t>(inc.other)];
        for (Label l = 0; l < c.size(); ++l) c[l] += state.edge_value(inc, l, theirs);
      } else {
        c += state.edge_min_for(inc);
      }
    }
    Eigen::Index arg = 0;
    c.minCoeff(&arg);
    x[static_cast<std::size_t>(v)] = static_cast<Label>(arg);
  }
  return x;
}

}  // namespace

SolverOutput solve_trws(const GraphicalModel& model, const StopRule& stop, TrwsTrace* trace) {
  TrwsState state(model);
  SolverOutput out;
  out.certificate = Certificate::TreeAgreement;
  out.labels.assign(static_cast<std::size_t>(model.num_nodes()), std::nullopt);

  TrwsTrace local;
  TrwsTrace& record = trace ? *trace : local;
  record.bound_history.clear();
  record.best_primal_energy = std::numeric_limits<double>::infinity();

  int best_count = -1;
  int stalled = 0;
  for (int pass = 1; pass <= std::max(stop.max_passes, 1); ++pass) {
    state.forward_pass();
    state.backward_pass();
    out.iterations = pass;
    out.bound = state.bound();
    record.bound_history.push_back(out.bound);

    const Labeling primal = round_primal(model, state);
    const double primal_energy = energy(model, primal);
    if (primal_energy < record.best_primal_energy) {
      record.best_primal_energy = primal_energy;
      record.best_primal = primal;
    }

    out.labels = consistent_nodes(model, state, record.best_primal);
    const int count = out.num_committed();
    if (out.fully_committed()) {
      const double e = energy(model, *out.labeling());
      if (e - out.bound <= scaled(kMargin, e)) break;
    }
    // A closed duality gap proves the rounded labeling optimal.
    if (record.best_primal_energy - out.bound <= scaled(kMargin, record.best_primal_energy)) {
      out.labels.assign(record.best_primal.begin(), record.best_primal.end());
      break;
    }
    if (record.best_primal_energy - out.bound <= stop.relative_gap * std::max(1.0, std::abs(record.best_primal_energy))) {
      break;
    }
    if (count > best_count) {
      best_count = count;
      stalled = 0;
    } else if (++stalled >= stop.stall_passes) {
      break;
    }
  }

  // The contract only allows a full commitment when it is provably optimal.
  if (out.fully_committed()) {
    const double e = energy(model, *out.labeling());
    if (e - out.bound > scaled(kMargin, e)) out.labels.assign(out.labels.size(), std::nullopt);
  }
  out.ties_possible = !out.fully_committed();
  return out;
}

}  // namespace persist
