#include <algorithm>
#include <limits>
#include <string>

#include "persist/solvers.hpp"

namespace persist {
namespace {

// Steps x to the next labeling in lexicographic order (last node fastest).
bool advance(Labeling& x, std::span<const int> counts) {
  for (std::size_t i = x.size(); i-- > 0;) {
    if (++x[i] < counts[i]) return true;
    x[i] = 0;
  }
  return false;
}

}  // namespace

BruteForceResult solve_bruteforce(const GraphicalModel& model, double cap, double tie_tolerance) {
  const double states = model.state_space_size();
  if (states > cap) {
    throw CapExceededError("state space of " + std::to_string(states) + " labelings exceeds the cap of " +
                           std::to_string(cap));
  }

  std::vector<double> energies;
  energies.reserve(static_cast<std::size_t>(states));
  Labeling x(static_cast<std::size_t>(model.num_nodes()), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    const double e = energy(model, x);
    energies.push_back(e);
    best = std::min(best, e);
  } while (advance(x, model.label_counts()));

  BruteForceResult result;
  result.value = best;
  std::fill(x.begin(), x.end(), 0);
  for (double e : energies) {
    if (e <= best + tie_tolerance) result.all_optima.push_back(x);
    advance(x, model.label_counts());
  }
  result.best = result.all_optima.front();
  return result;
}

}  // namespace persist
