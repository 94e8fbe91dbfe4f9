#include <gtest/gtest.h>

#include "persist/generate.hpp"
#include "persist/solvers.hpp"
#include "support.hpp"

namespace persist {
namespace {

using testing::vec;

GraphicalModel separable_model() {
  GraphicalModel m({3, 2, 2});
  m.add_factor({0}, vec({3, 1, 2}));
  m.add_factor({1}, vec({0, 4}));
  m.add_factor({2}, vec({2, 1}));
  return m;
}

GraphicalModel biased_potts_grid(std::uint64_t seed) {
  InstanceSpec spec;
  spec.kind = GeneratorKind::PottsGrid;
  spec.height = 4;
  spec.width = 4;
  spec.labels = 2;
  spec.noise_min = 0;
  spec.noise_max = 10;
  spec.coupling_min = 0.5;
  spec.coupling_max = 1.0;
  spec.seed = seed;
  return generate(spec);
}

TEST(BruteForce, ChainHasTwoOptima) {
  const auto r = solve_bruteforce(testing::chain_model());
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  EXPECT_EQ(r.all_optima, (std::vector<Labeling>{{0, 0}, {1, 1}}));
  EXPECT_EQ(r.best, (Labeling{0, 0}));
}

TEST(BruteForce, SingleNode) {
  GraphicalModel m({3});
  m.add_factor({0}, vec({3, 1, 2}));
  const auto r = solve_bruteforce(m);
  EXPECT_EQ(r.best, (Labeling{1}));
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  EXPECT_EQ(r.all_optima.size(), 1u);
}

TEST(BruteForce, ZeroModelMakesEverythingOptimal) {
  const GraphicalModel m({2, 3});
  EXPECT_EQ(solve_bruteforce(m).all_optima.size(), 6u);
  const auto out = solve(m, SolverKind::BruteForce);
  EXPECT_TRUE(out.fully_committed());
  EXPECT_TRUE(out.ties_possible);
}

TEST(BruteForce, RespectsCap) {
  const GraphicalModel m(std::vector<int>(30, 2));
  EXPECT_THROW(solve_bruteforce(m), CapExceededError);
}

TEST(ExactLp, FrustratedCycleIsFractional) {
  const auto r = solve_lp_exact(testing::frustrated_cycle());
  EXPECT_NEAR(r.value, 0.0, 1e-9);
  EXPECT_DOUBLE_EQ(solve_bruteforce(testing::frustrated_cycle()).value, 1.0);
  EXPECT_EQ(r.output.num_committed(), 0);
  EXPECT_EQ(r.output.certificate, Certificate::ExactLp);
}

TEST(ExactLp, SeparableIsIntegral) {
  const auto r = solve_lp_exact(separable_model());
  EXPECT_NEAR(r.value, 1 + 0 + 1, 1e-9);
  EXPECT_EQ(r.output.labeling(), (Labeling{1, 0, 1}));
}

TEST(ExactLp, LowerBoundsTheIntegerOptimumOnGrids) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    InstanceSpec spec;
    spec.kind = GeneratorKind::PottsGrid;
    spec.height = 2;
    spec.width = 3;
    spec.labels = 3;
    spec.coupling_min = -1;
    spec.coupling_max = 2;
    spec.seed = seed;
    const auto m = generate(spec);
    const auto lp = solve_lp_exact(m);
    const auto bf = solve_bruteforce(m);
    EXPECT_LE(lp.value, bf.value + 1e-9);
    EXPECT_TRUE(is_locally_consistent(m, lp.marginals));
    EXPECT_NEAR(linear_energy(m, lp.marginals), lp.value, 1e-7);
  }
}

TEST(ExactLp, CommittedLabelsExtendToAnOptimum) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const auto m = testing::random_model(seed, {.max_nodes = 5});
    const auto lp = solve_lp_exact(m);
    const auto bf = solve_bruteforce(m);
    if (auto x = lp.output.labeling()) {
      EXPECT_NEAR(energy(m, *x), bf.value, 1e-7) << "seed " << seed;
    }
  }
}

TEST(ExactLp, FaceMassSeesTies) {
  const auto chain = testing::chain_model();
  const auto r = solve_lp_exact(chain);
  const PartialLabeling x{{0, 1}, {0, 0}};
  EXPECT_LT(min_mass_on_optimal_face(chain, x, r.value, 1e-9), 2.0 - 1e-6);

  const auto sep = separable_model();
  const auto rs = solve_lp_exact(sep);
  EXPECT_NEAR(min_mass_on_optimal_face(sep, PartialLabeling{{0, 2}, {1, 1}}, rs.value, 1e-9), 2.0, 1e-7);
}

TEST(Trws, SeparableIsCommitted) {
  const auto out = solve_trws(separable_model());
  EXPECT_EQ(out.labeling(), (Labeling{1, 0, 1}));
  EXPECT_NEAR(out.bound, 2.0, 1e-9);
  EXPECT_EQ(out.certificate, Certificate::TreeAgreement);
  EXPECT_FALSE(out.ties_possible);
}

TEST(Trws, FrustratedCycleStaysFractional) {
  const auto out = solve_trws(testing::frustrated_cycle());
  EXPECT_EQ(out.num_committed(), 0);
  EXPECT_TRUE(out.ties_possible);
  EXPECT_LE(out.bound, 1.0 + 1e-9);
}

TEST(Trws, BiasedGridMatchesBruteForce) {
  int matched = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto m = biased_potts_grid(seed);
    const auto out = solve_trws(m);
    const auto bf = solve_bruteforce(m);
    EXPECT_LE(out.bound, bf.value + 1e-7);
    if (auto x = out.labeling()) {
      EXPECT_NEAR(energy(m, *x), bf.value, 1e-7);
      ++matched;
    }
  }
  EXPECT_GT(matched, 0);
}

TEST(Contract, FullCommitmentMeansOptimal) {
  int full = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto m = testing::random_model(seed, {.max_nodes = 6});
    const auto bf = solve_bruteforce(m);
    for (SolverKind kind : {SolverKind::ExactLp, SolverKind::Trws}) {
      const auto out = solve(m, kind);
      EXPECT_LE(out.bound, bf.value + 1e-7) << "seed " << seed;
      if (auto x = out.labeling()) {
        ++full;
        EXPECT_NEAR(energy(m, *x), bf.value, 1e-7) << to_string(kind) << " seed " << seed;
      }
    }
  }
  EXPECT_GT(full, 500);
}

TEST(Trws, WeakDualityAgainstRandomLabelings) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto m = testing::random_model(seed, {.max_nodes = 8, .edge_density = 0.7});
    const auto out = solve_trws(m);
    Sampler rng(seed + 99);
    for (int i = 0; i < 100; ++i) EXPECT_LE(out.bound, energy(m, testing::random_labeling(rng, m)) + 1e-9);
  }
}

TEST(Trws, BoundNeverDecreases) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto m = testing::random_model(seed, {.max_nodes = 6, .edge_density = 0.9});
    TrwsTrace trace;
    solve_trws(m, {}, &trace);
    ASSERT_FALSE(trace.bound_history.empty());
    for (std::size_t i = 1; i < trace.bound_history.size(); ++i) {
      EXPECT_GE(trace.bound_history[i], trace.bound_history[i - 1] - 1e-9);
    }
    EXPECT_LE(trace.bound_history.back(), trace.best_primal_energy + 1e-9);
  }
}

TEST(Trws, RejectsHigherOrder) {
  const auto m = testing::random_model(1, {.min_nodes = 3, .ternary = true});
  EXPECT_THROW(solve_trws(m), UnsupportedArityError);
}

TEST(Solve, IsDeterministic) {
  const auto m = biased_potts_grid(7);
  for (SolverKind kind : {SolverKind::ExactLp, SolverKind::Trws}) {
    const auto a = solve(m, kind);
    const auto b = solve(m, kind);
    EXPECT_EQ(a.labels, b.labels);
    EXPECT_EQ(a.bound, b.bound);
    EXPECT_EQ(a.iterations, b.iterations);
  }
}

TEST(OutputMarginals, CommittedAndFractional) {
  GraphicalModel m({2, 3});
  m.add_factor({0, 1}, Eigen::VectorXd::Zero(6));
  SolverOutput out;
  out.labels = {std::nullopt, std::nullopt};
  const auto mu = output_to_marginals(m, out);
  EXPECT_TRUE(mu.node[0].isApprox(vec({0.5, 0.5})));
  EXPECT_TRUE(mu.node[1].isApprox(vec({1.0 / 3, 1.0 / 3, 1.0 / 3})));
  EXPECT_TRUE(is_locally_consistent(m, mu));

  out.labels = {1, std::nullopt};
  const auto mixed = output_to_marginals(m, out);
  EXPECT_TRUE(mixed.factor[0].isApprox(vec({0, 0, 0, 1.0 / 3, 1.0 / 3, 1.0 / 3})));
}

TEST(SolverKind, Parsing) {
  EXPECT_EQ(parse_solver_kind("lp"), SolverKind::ExactLp);
  EXPECT_EQ(parse_solver_kind("trws"), SolverKind::Trws);
  EXPECT_EQ(parse_solver_kind(to_string(SolverKind::BruteForce)), SolverKind::BruteForce);
  EXPECT_THROW(parse_solver_kind("icm"), DomainError);
}

}  // namespace
}  // namespace persist
