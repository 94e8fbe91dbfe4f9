#include "persist/generate.hpp"

#include <algorithm>
#include <cmath>

namespace persist {
namespace {

Eigen::VectorXd draw_table(Sampler& rng, Eigen::Index size, double lo, double hi, bool integral) {
  Eigen::VectorXd t(size);
  for (Eigen::Index i = 0; i < size; ++i) t[i] = rng.draw(lo, hi, integral);
  return t;
}

Eigen::VectorXd potts_table(int k, double alpha, bool equal_costs) {
  Eigen::VectorXd t(k * k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) t[a * k + b] = (a == b) == equal_costs ? alpha : 0.0;
  }
  return t;
}

void add_unaries(GraphicalModel& model, Sampler& rng, const InstanceSpec& spec) {
  for (NodeId v = 0; v < model.num_nodes(); ++v) {
    model.add_factor({v}, draw_table(rng, model.num_labels(v), spec.noise_min, spec.noise_max, spec.integral));
  }
}

void add_random_edges(GraphicalModel& model, Sampler& rng, const InstanceSpec& spec) {
  const Eigen::Index pair_size = static_cast<Eigen::Index>(spec.labels) * spec.labels;
  for (NodeId u = 0; u < model.num_nodes(); ++u) {
    for (NodeId v = u + 1; v < model.num_nodes(); ++v) {
      if (rng.uniform01() >= spec.edge_density) continue;
      model.add_factor({u, v}, draw_table(rng, pair_size, spec.coupling_min, spec.coupling_max, spec.integral));
    }
  }
}

}  // namespace

double Sampler::draw(double lo, double hi, bool integral) {
  if (!integral) return uniform(lo, hi);
  return static_cast<double>(integer(static_cast<long>(std::ceil(lo)), static_cast<long>(std::floor(hi))));
}

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::PottsGrid:
      return "potts-grid";
    case GeneratorKind::RandomPairwise:
      return "random-pairwise";
    case GeneratorKind::RandomHyper:
      return "random-hyper";
    case GeneratorKind::FrustratedCycle:
      return "frustrated-cycle";
  }
  return "unknown";
}

GeneratorKind parse_generator_kind(const std::string& name) {
  if (name == "potts-grid") return GeneratorKind::PottsGrid;
  if (name == "random-pairwise") return GeneratorKind::RandomPairwise;
  if (name == "random-hyper") return GeneratorKind::RandomHyper;
  if (name == "frustrated-cycle") return GeneratorKind::FrustratedCycle;
  throw DomainError("unknown generator '" + name + "'");
}

void validate(const InstanceSpec& spec) {
  if (spec.labels < 1) throw DomainError("label count must be positive");
  if (spec.coupling_min > spec.coupling_max || spec.noise_min > spec.noise_max) throw DomainError("inverted range");
  if (spec.integral && (std::floor(spec.coupling_max) < std::ceil(spec.coupling_min) ||
                        std::floor(spec.noise_max) < std::ceil(spec.noise_min))) {
    throw DomainError("integral draws need a whole number inside every range");
  }
  if (spec.edge_density < 0.0 || spec.edge_density > 1.0) throw DomainError("edge density must lie in [0, 1]");
  switch (spec.kind) {
    case GeneratorKind::PottsGrid:
      if (spec.height < 1 || spec.width < 1) throw DomainError("grid dimensions must be positive");
      break;
    case GeneratorKind::RandomPairwise:
      if (spec.nodes < 1) throw DomainError("node count must be positive");
      break;
    case GeneratorKind::RandomHyper:
      if (spec.nodes < 3) throw DomainError("random-hyper needs at least three nodes");
      break;
    case GeneratorKind::FrustratedCycle:
      if (spec.nodes < 3) throw DomainError("a cycle needs at least three nodes");
      break;
  }
}

GraphicalModel generate(const InstanceSpec& spec) {
  validate(spec);
  Sampler rng(spec.seed);
  switch (spec.kind) {
    case GeneratorKind::PottsGrid: {
      GraphicalModel model(std::vector<int>(static_cast<std::size_t>(spec.height * spec.width), spec.labels));
      add_unaries(model, rng, spec);
      for (int r = 0; r < spec.height; ++r) {
        for (int c = 0; c < spec.width; ++c) {
          const NodeId v = r * spec.width + c;
          if (c + 1 < spec.width) {
            model.add_factor({v, v + 1}, potts_table(spec.labels, rng.draw(spec.coupling_min, spec.coupling_max, spec.integral), false));
          }
          if (r + 1 < spec.height) {
            model.add_factor({v, v + spec.width},
                             potts_table(spec.labels, rng.draw(spec.coupling_min, spec.coupling_max, spec.integral), false));
          }
        }
      }
      return model;
    }
    case GeneratorKind::RandomPairwise:
    case GeneratorKind::RandomHyper: {
      GraphicalModel model(std::vector<int>(static_cast<std::size_t>(spec.nodes), spec.labels));
      add_unaries(model, rng, spec);
      add_random_edges(model, rng, spec);
      if (spec.kind == GeneratorKind::RandomHyper) {
        std::vector<NodeId> scope;
        while (scope.size() < 3) {
          const auto v = static_cast<NodeId>(rng.integer(0, spec.nodes - 1));
          if (std::find(scope.begin(), scope.end(), v) == scope.end()) scope.push_back(v);
        }
        const Eigen::Index size = static_cast<Eigen::Index>(spec.labels) * spec.labels * spec.labels;
        model.add_factor(scope, draw_table(rng, size, spec.coupling_min, spec.coupling_max, spec.integral));
      }
      return model;
    }
    case GeneratorKind::FrustratedCycle: {
      GraphicalModel model(std::vector<int>(static_cast<std::size_t>(spec.nodes), spec.labels));
      for (NodeId v = 0; v < spec.nodes; ++v) {
        const double alpha = rng.draw(spec.coupling_min, spec.coupling_max, spec.integral);
        model.add_factor({v, (v + 1) % spec.nodes}, potts_table(spec.labels, alpha, true));
      }
      return model;
    }
  }
  throw DomainError("unknown generator");
}

}  // namespace persist
