#include "persist/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

namespace persist {

std::optional<Label> PartialLabeling::find(NodeId node) const {
  auto it = std::lower_bound(domain.begin(), domain.end(), node);
  if (it == domain.end() || *it != node) return std::nullopt;
  return labels[static_cast<std::size_t>(it - domain.begin())];
}

Label PartialLabeling::at(NodeId node) const {
  auto label = find(node);
  if (!label) throw DomainError("node " + std::to_string(node) + " is outside the labeling's domain");
  return *label;
}

PartialLabeling restrict_to(const Labeling& x, const NodeSet& nodes) {
  PartialLabeling out;
  out.domain = nodes;
  out.labels.reserve(nodes.size());
  for (NodeId v : nodes) out.labels.push_back(x.at(static_cast<std::size_t>(v)));
  return out;
}

bool nearly_equal(double a, double b, double tol) {
  return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

GraphicalModel::GraphicalModel(std::vector<int> label_counts)
    : label_counts_(std::move(label_counts)), adjacency_(label_counts_.size()) {
  for (int k : label_counts_) {
    if (k < 1) throw InvalidModelError("every node needs at least one label");
  }
}

FactorId GraphicalModel::add_factor(std::vector<NodeId> scope, Eigen::VectorXd table) {
  if (scope.empty()) throw InvalidModelError("factor scope must be nonempty");
  Eigen::Index expected = 1;
  for (NodeId v : scope) {
    if (v < 0 || v >= num_nodes()) {
      throw InvalidModelError("scope node " + std::to_string(v) + " out of range");
    }
    expected *= num_labels(v);
  }
  if (table.size() != expected) {
    std::ostringstream msg;
    msg << "factor table has " << table.size() << " entries, expected " << expected;
    throw InvalidModelError(msg.str());
  }
  if (!table.allFinite()) throw InvalidModelError("factor table has non-finite entries");

  std::vector<std::size_t> order(scope.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scope[a] < scope[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (scope[order[i]] == scope[order[i - 1]]) throw InvalidModelError("factor scope repeats a node");
  }

  std::vector<NodeId> sorted(scope.size());
  for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = scope[order[i]];

  if (!std::is_sorted(scope.begin(), scope.end())) {
    // Walk the sorted joint space and read from the original layout.
    const std::size_t arity = scope.size();
    std::vector<Eigen::Index> original_stride(arity);
    Eigen::Index stride = 1;
    for (std::size_t i = arity; i-- > 0;) {
      original_stride[i] = stride;
      stride *= num_labels(scope[i]);
    }
    Eigen::VectorXd permuted(table.size());
    std::vector<Label> labels(arity, 0);  // indexed by sorted position
    for (Eigen::Index flat = 0; flat < table.size(); ++flat) {
      Eigen::Index src = 0;
      for (std::size_t i = 0; i < arity; ++i) src += labels[i] * original_stride[order[i]];
      permuted[flat] = table[src];
      for (std::size_t i = arity; i-- > 0;) {
        if (++labels[i] < num_labels(sorted[i])) break;
        labels[i] = 0;
      }
    }
    table = std::move(permuted);
  }

  if (FactorId existing = find_factor(sorted); existing >= 0) {
    factors_[static_cast<std::size_t>(existing)].table += table;
    return existing;
  }
  const auto id = static_cast<FactorId>(factors_.size());
  for (NodeId v : sorted) adjacency_[static_cast<std::size_t>(v)].push_back(id);
  factors_.push_back(Factor{std::move(sorted), std::move(table)});
  return id;
}

FactorId GraphicalModel::find_factor(std::span<const NodeId> scope) const {
  if (scope.empty()) return -1;
  const NodeId first = scope.front();
  if (first < 0 || first >= num_nodes()) return -1;
  for (FactorId f : adjacency_[static_cast<std::size_t>(first)]) {
    const auto& s = factors_[static_cast<std::size_t>(f)].scope;
    if (std::equal(s.begin(), s.end(), scope.begin(), scope.end())) return f;
  }
  return -1;
}

int GraphicalModel::max_arity() const {
  int arity = 0;
  for (const auto& f : factors_) arity = std::max(arity, f.arity());
  return arity;
}

double GraphicalModel::state_space_size() const {
  double size = 1.0;
  for (int k : label_counts_) size *= k;
  return size;
}

Eigen::Index GraphicalModel::table_index(FactorId f, std::span<const Label> x) const {
  Eigen::Index index = 0;
  for (NodeId v : factor(f).scope) index = index * num_labels(v) + x[static_cast<std::size_t>(v)];
  return index;
}

void GraphicalModel::check_labeling(std::span<const Label> x) const {
  if (static_cast<int>(x.size()) != num_nodes()) {
    throw InvalidLabelingError("labeling has " + std::to_string(x.size()) + " entries, model has " +
                               std::to_string(num_nodes()) + " nodes");
  }
  for (NodeId v = 0; v < num_nodes(); ++v) {
    const Label l = x[static_cast<std::size_t>(v)];
    if (l < 0 || l >= num_labels(v)) {
      throw InvalidLabelingError("label " + std::to_string(l) + " out of range at node " + std::to_string(v));
    }
  }
}

bool GraphicalModel::operator==(const GraphicalModel& other) const {
  if (label_counts_ != other.label_counts_ || factors_.size() != other.factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].scope != other.factors_[i].scope) return false;
    if (factors_[i].table != other.factors_[i].table) return false;
  }
  return true;
}

Eigen::Map<const RowMatrixXd> pairwise_table(const GraphicalModel& model, FactorId f) {
  const Factor& factor = model.factor(f);
  if (factor.arity() != 2) throw UnsupportedArityError("pairwise_table on a non-pairwise factor");
  return {factor.table.data(), model.num_labels(factor.scope[0]), model.num_labels(factor.scope[1])};
}

double energy(const GraphicalModel& model, std::span<const Label> x) {
  model.check_labeling(x);
  double sum = 0.0;
  for (FactorId f = 0; f < model.num_factors(); ++f) sum += model.factor(f).table[model.table_index(f, x)];
  return sum;
}

double restricted_energy(const GraphicalModel& model, const NodeSet& nodes, const PartialLabeling& x) {
  std::vector<char> inside(static_cast<std::size_t>(model.num_nodes()), 0);
  for (NodeId v : nodes) inside.at(static_cast<std::size_t>(v)) = 1;
  Labeling full(static_cast<std::size_t>(model.num_nodes()), 0);
  for (NodeId v : nodes) {
    const Label l = x.at(v);
    if (l < 0 || l >= model.num_labels(v)) {
      throw InvalidLabelingError("label " + std::to_string(l) + " out of range at node " + std::to_string(v));
    }
    full[static_cast<std::size_t>(v)] = l;
  }
  double sum = 0.0;
  for (FactorId f = 0; f < model.num_factors(); ++f) {
    const auto& scope = model.factor(f).scope;
    if (std::all_of(scope.begin(), scope.end(), [&](NodeId v) { return inside[static_cast<std::size_t>(v)]; })) {
      sum += model.factor(f).table[model.table_index(f, full)];
    }
  }
  return sum;
}

Labeling concatenate(const GraphicalModel& model, const PartialLabeling& x0, const PartialLabeling& rest) {
  const auto n = static_cast<std::size_t>(model.num_nodes());
  Labeling out(n, -1);
  for (const PartialLabeling* part : {&x0, &rest}) {
    for (std::size_t i = 0; i < part->domain.size(); ++i) {
      const NodeId v = part->domain[i];
      if (v < 0 || static_cast<std::size_t>(v) >= n) throw DomainError("node id out of range in concatenate");
      if (out[static_cast<std::size_t>(v)] != -1) throw DomainError("labelings overlap at node " + std::to_string(v));
      out[static_cast<std::size_t>(v)] = part->labels[i];
    }
  }
  if (std::find(out.begin(), out.end(), -1) != out.end()) throw DomainError("labelings do not cover every node");
  model.check_labeling(out);
  return out;
}

Reparametrization::Reparametrization(const GraphicalModel& model)
    : first_node_(static_cast<std::size_t>(model.num_factors()), -1),
      second_node_(static_cast<std::size_t>(model.num_factors()), -1),
      first_(static_cast<std::size_t>(model.num_factors())),
      second_(static_cast<std::size_t>(model.num_factors())) {
  for (FactorId f = 0; f < model.num_factors(); ++f) {
    const Factor& factor = model.factor(f);
    if (factor.arity() != 2) continue;
    const auto i = static_cast<std::size_t>(f);
    first_node_[i] = factor.scope[0];
    second_node_[i] = factor.scope[1];
    first_[i] = Eigen::VectorXd::Zero(model.num_labels(factor.scope[0]));
    second_[i] = Eigen::VectorXd::Zero(model.num_labels(factor.scope[1]));
  }
}

bool Reparametrization::covers(FactorId f) const {
  return f >= 0 && f < num_factors() && first_node_[static_cast<std::size_t>(f)] >= 0;
}

Eigen::VectorXd& Reparametrization::on(FactorId f, NodeId node) {
  return const_cast<Eigen::VectorXd&>(std::as_const(*this).on(f, node));
}

const Eigen::VectorXd& Reparametrization::on(FactorId f, NodeId node) const {
  if (!covers(f)) throw DomainError("reparametrization has no entry for factor " + std::to_string(f));
  const auto i = static_cast<std::size_t>(f);
  if (node == first_node_[i]) return first_[i];
  if (node == second_node_[i]) return second_[i];
  throw DomainError("node " + std::to_string(node) + " is not in factor " + std::to_string(f));
}

GraphicalModel apply_reparametrization(const GraphicalModel& model, const Reparametrization& phi) {
  if (model.max_arity() > 2) throw UnsupportedArityError("reparametrization is defined for pairwise models only");
  if (phi.num_factors() != model.num_factors()) throw DomainError("reparametrization does not match the model");

  std::vector<Eigen::VectorXd> unary_shift(static_cast<std::size_t>(model.num_nodes()));
  for (NodeId v = 0; v < model.num_nodes(); ++v) {
    unary_shift[static_cast<std::size_t>(v)] = Eigen::VectorXd::Zero(model.num_labels(v));
  }

  GraphicalModel out{std::vector<int>(model.label_counts().begin(), model.label_counts().end())};
  for (FactorId f = 0; f < model.num_factors(); ++f) {
    const Factor& factor = model.factor(f);
    if (factor.arity() == 1) {
      out.add_factor(factor.scope, factor.table);
      continue;
    }
    const NodeId u = factor.scope[0];
    const NodeId v = factor.scope[1];
    const Eigen::VectorXd& on_u = phi.on(f, u);
    const Eigen::VectorXd& on_v = phi.on(f, v);
    RowMatrixXd table = pairwise_table(model, f);
    table.colwise() += on_u;
    table.rowwise() += on_v.transpose();
    unary_shift[static_cast<std::size_t>(u)] += on_u;
    unary_shift[static_cast<std::size_t>(v)] += on_v;
    out.add_factor(factor.scope, Eigen::Map<const Eigen::VectorXd>(table.data(), table.size()));
  }
  for (NodeId v = 0; v < model.num_nodes(); ++v) {
    const auto& shift = unary_shift[static_cast<std::size_t>(v)];
    if (!shift.isZero(0.0)) out.add_factor({v}, -shift);
  }
  return out;
}

Reparametrization optimal_reparametrization(const GraphicalModel& model, std::span<const Label> y) {
  if (model.max_arity() > 2) throw UnsupportedArityError("optimal reparametrization needs a pairwise model");
  model.check_labeling(y);
  Reparametrization psi(model);
  for (FactorId f = 0; f < model.num_factors(); ++f) {
    if (model.factor(f).arity() != 2) continue;
    const NodeId u = model.factor(f).scope[0];
    const NodeId v = model.factor(f).scope[1];
    const auto table = pairwise_table(model, f);
    psi.on(f, v) = -table.row(y[static_cast<std::size_t>(u)]).transpose();
    psi.on(f, u) = -table.col(y[static_cast<std::size_t>(v)]);
  }
  return psi;
}

}  // namespace persist
