#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "persist/persistency.hpp"

namespace persist {
namespace {

constexpr double kMassTolerance = 1e-7;

// Original-mode test energies over X_A for every test labeling y, stored as
// base energies plus per-boundary-factor max/min tables.
class TestEnergies {
 public:
  TestEnergies(const GraphicalModel& model, const NodeSet& A) : counts_(A.size()) {
    std::vector<int> local(static_cast<std::size_t>(model.num_nodes()), -1);
    size_ = 1;
    for (std::size_t i = 0; i < A.size(); ++i) {
      local[static_cast<std::size_t>(A[i])] = static_cast<int>(i);
      counts_[i] = model.num_labels(A[i]);
      size_ *= counts_[i];
    }
    strides_.assign(A.size(), 1);
    for (std::size_t i = A.size(); i-- > 1;) strides_[i - 1] = strides_[i] * counts_[i];

    base_.assign(static_cast<std::size_t>(size_), 0.0);
    std::vector<Label> x(A.size(), 0);
    std::vector<Label> full(static_cast<std::size_t>(model.num_nodes()), 0);
    for (FactorId f = 0; f < model.num_factors(); ++f) {
      const Factor& factor = model.factor(f);
      std::vector<int> inside;
      for (int p = 0; p < factor.arity(); ++p) {
        if (local[static_cast<std::size_t>(factor.scope[static_cast<std::size_t>(p)])] >= 0) inside.push_back(p);
      }
      if (inside.empty()) continue;
      if (inside.size() == factor.scope.size()) {
        for (long idx = 0; idx < size_; ++idx) {
          decode(idx, x);
          for (std::size_t i = 0; i < A.size(); ++i) full[static_cast<std::size_t>(A[i])] = x[i];
          base_[static_cast<std::size_t>(idx)] += factor.table[model.table_index(f, full)];
        }
        continue;
      }
      add_boundary_factor(model, f, inside, local);
    }
  }

  long size() const { return size_; }

  double value(long x, long y) const {
    double e = base_[static_cast<std::size_t>(x)];
    for (const auto& b : boundary_) {
      const int s = b.index[static_cast<std::size_t>(x)];
      e += s == b.index[static_cast<std::size_t>(y)] ? b.max[s] : b.min[s];
    }
    return e;
  }

  // y is the strict unique minimiser of its own test energy over X_A.
  bool uniquely_minimal(long y, double tol) const {
    const double own = value(y, y);
    const double margin = tol * (1.0 + std::abs(own));
    std::vector<Label> labels(counts_.size());
    decode(y, labels);
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      for (int l = 0; l < counts_[i]; ++l) {
        if (l == labels[i]) continue;
        const long x = y + (l - labels[i]) * strides_[i];
        if (value(x, y) <= own + margin) return false;
      }
    }
    for (long x = 0; x < size_; ++x) {
      if (x != y && value(x, y) <= own + margin) return false;
    }
    return true;
  }

  void decode(long idx, std::vector<Label>& x) const {
    for (std::size_t i = counts_.size(); i-- > 0;) {
      x[i] = static_cast<Label>(idx % counts_[i]);
      idx /= counts_[i];
    }
  }

 private:
  struct Boundary {
    std::vector<int> index;  // inside-clique index of each x in X_A
    std::vector<double> max;
    std::vector<double> min;
  };

  void add_boundary_factor(const GraphicalModel& model, FactorId f, const std::vector<int>& inside,
                           const std::vector<int>& local) {
    const Factor& factor = model.factor(f);
    int clique = 1;
    for (int p : inside) clique *= model.num_labels(factor.scope[static_cast<std::size_t>(p)]);
    Boundary b;
    b.max.assign(static_cast<std::size_t>(clique), -std::numeric_limits<double>::infinity());
    b.min.assign(static_cast<std::size_t>(clique), std::numeric_limits<double>::infinity());

    std::vector<int> labels(static_cast<std::size_t>(factor.arity()));
    for (Eigen::Index i = 0; i < factor.table.size(); ++i) {
      Eigen::Index rest = i;
      for (int p = factor.arity(); p-- > 0;) {
        const int k = model.num_labels(factor.scope[static_cast<std::size_t>(p)]);
        labels[static_cast<std::size_t>(p)] = static_cast<int>(rest % k);
        rest /= k;
      }
      int s = 0;
      for (int p : inside) s = s * model.num_labels(factor.scope[static_cast<std::size_t>(p)]) + labels[static_cast<std::size_t>(p)];
      b.max[static_cast<std::size_t>(s)] = std::max(b.max[static_cast<std::size_t>(s)], factor.table[i]);
      b.min[static_cast<std::size_t>(s)] = std::min(b.min[static_cast<std::size_t>(s)], factor.table[i]);
    }

    b.index.resize(static_cast<std::size_t>(size_));
    std::vector<Label> x(counts_.size());
    for (long idx = 0; idx < size_; ++idx) {
      decode(idx, x);
      int s = 0;
      for (int p : inside) {
        const NodeId v = factor.scope[static_cast<std::size_t>(p)];
        s = s * model.num_labels(v) + x[static_cast<std::size_t>(local[static_cast<std::size_t>(v)])];
      }
      b.index[static_cast<std::size_t>(idx)] = s;
    }
    boundary_.push_back(std::move(b));
  }

  std::vector<int> counts_;
  std::vector<long> strides_;
  long size_ = 1;
  std::vector<double> base_;
  std::vector<Boundary> boundary_;
};

bool lp_certifies_uniquely(const GraphicalModel& model, const NodeSet& A, const PartialLabeling& y,
                           const SolverConfig& config, double tol) {
  const AugmentedModel aug = build_augmented_model(model, A, y, BoundaryMode::Original);
  const double own = energy(aug.model, y.labels);
  const LpResult lp = solve_lp_exact(aug.model, config);
  if (own - lp.value > tol * (1.0 + std::abs(own))) return false;
  PartialLabeling local;
  for (std::size_t i = 0; i < A.size(); ++i) local.domain.push_back(static_cast<NodeId>(i));
  local.labels = y.labels;
  const double slack = tol * (1.0 + std::abs(lp.value));
  return min_mass_on_optimal_face(aug.model, local, lp.value, slack, config.simplex) >=
         static_cast<double>(A.size()) - kMassTolerance;
}

}  // namespace

ScanResult strong_persistency_scan(const GraphicalModel& model, int max_nodes, const SolverConfig& config) {
  const int n = model.num_nodes();
  if (n > max_nodes || n > 30) {
    throw CapExceededError("strong persistency scan supports at most " + std::to_string(max_nodes) + " nodes");
  }
  double pairs = 1.0;
  for (int k : model.label_counts()) pairs *= 1.0 + k;
  if (pairs > config.enumeration_cap) {
    throw CapExceededError("strong persistency scan would test " + std::to_string(pairs) + " pairs");
  }

  ScanResult result;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    NodeSet A;
    for (int v = 0; v < n; ++v) {
      if (mask & (1UL << v)) A.push_back(v);
    }
    if (A.empty()) {
      result.pairs.push_back({});
      continue;
    }
    const TestEnergies energies(model, A);
    std::vector<Label> labels(A.size());
    for (long y = 0; y < energies.size(); ++y) {
      if (!energies.uniquely_minimal(y, config.tie_tolerance)) continue;
      energies.decode(y, labels);
      PartialLabeling candidate{A, labels};
      if (lp_certifies_uniquely(model, A, candidate, config, config.tie_tolerance)) {
        result.pairs.push_back({A, std::move(candidate)});
      }
    }
  }

  result.maximal = *std::max_element(result.pairs.begin(), result.pairs.end(),
                                     [](const ScanEntry& a, const ScanEntry& b) { return a.A.size() < b.A.size(); });
  return result;
}

}  // namespace persist
