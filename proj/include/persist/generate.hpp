#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "persist/model.hpp"

namespace persist {

enum class GeneratorKind { PottsGrid, RandomPairwise, RandomHyper, FrustratedCycle };

std::string to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(const std::string& name);

/// Recipe for a synthetic instance. The same spec always yields the same model.
struct InstanceSpec {
  GeneratorKind kind = GeneratorKind::RandomPairwise;
  int height = 1;  // potts-grid rows
  int width = 2;   // potts-grid columns
  int nodes = 4;   // random-* and frustrated-cycle
  int labels = 2;
  double coupling_min = 1.0;
  double coupling_max = 1.0;
  double noise_min = 0.0;
  double noise_max = 1.0;
  /// Probability that a node pair carries a pairwise factor (random-*).
  double edge_density = 0.4;
  /// Draw whole numbers from the ranges instead of reals.
  bool integral = false;
  std::uint64_t seed = 0;
};

/// Throws DomainError on non-positive sizes or inverted ranges.
void validate(const InstanceSpec& spec);

/// potts-grid: 4-connected grid, theta_uv = alpha [x_u != x_v] with alpha per
/// edge from the coupling range, unaries from the noise range.
/// random-pairwise: each node pair joined with probability edge_density,
/// every table entry drawn from the coupling range.
/// random-hyper: random-pairwise plus one ternary factor on three random nodes.
/// frustrated-cycle: a cycle with theta_uv = alpha [x_u == x_v] and no unaries.
GraphicalModel generate(const InstanceSpec& spec);

/// Uniform draws from mt19937_64 mapped identically on every platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Integer in [lo, hi].
  long integer(long lo, long hi) { return lo + static_cast<long>(uniform01() * static_cast<double>(hi - lo + 1)); }
  double draw(double lo, double hi, bool integral);
  std::uint64_t next() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace persist
