#include <omp.h>

#include <gtest/gtest.h>

#include "gsteer/catalog.hpp"
#include "support/oracles.hpp"

using namespace gsteer;

namespace {

class ParallelMatchesSerial : public ::testing::Test {
 protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(4);
  }
  void TearDown() override { omp_set_num_threads(saved_); }

 private:
  int saved_ = 1;
};

void expect_identical(const Verdict& a, const Verdict& b) {
  EXPECT_EQ(a.state, b.state);
  EXPECT_EQ(a.value, b.value);
  ASSERT_EQ(a.witness.has_value(), b.witness.has_value());
  if (a.witness) EXPECT_EQ(*a.witness, *b.witness);
}

}  // namespace

TEST_F(ParallelMatchesSerial, Decide) {
  SolverConfig cfg;
  cfg.samples = 3000;
  cfg.starts = 8;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    cfg.seed = seed;
    const QuantifiedCondition q = oracle::random_condition(seed, -0.3 + 0.05 * static_cast<double>(seed));
    expect_identical(decide(q, cfg), serial::decide(q, cfg));
  }
  const QuantifiedCondition ref = steering_annihilation_condition(catalog::annihilating_not_breaking());
  expect_identical(decide(ref, cfg), serial::decide(ref, cfg));
}

TEST_F(ParallelMatchesSerial, GridSweep) {
  const QuantifiedCondition q = oracle::random_condition(4, -0.1);
  const GridSweep a = grid_sweep(q, 20000);
  const GridSweep b = serial::grid_sweep(q, 20000);
  EXPECT_EQ(a.min_value, b.min_value);
  EXPECT_EQ(a.argmin, b.argmin);
  EXPECT_EQ(a.points, b.points);
}

TEST_F(ParallelMatchesSerial, MonteCarlo) {
  const ModePartition p(1, 1);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const GaussianChannel c = random_channel(p, seed);
    const FalsifierResult a = monte_carlo_sa_oracle(c, 2000, seed);
    const FalsifierResult b = serial::monte_carlo_sa_oracle(c, 2000, seed);
    EXPECT_EQ(a.found(), b.found());
    EXPECT_EQ(a.counterexample_index, b.counterexample_index);
    EXPECT_EQ(a.trials_run, b.trials_run);
    EXPECT_EQ(a.worst_min_eigenvalue, b.worst_min_eigenvalue);
    const FalsifierResult sa = monte_carlo_sb_oracle(c, 500, seed);
    const FalsifierResult sb = serial::monte_carlo_sb_oracle(c, 500, seed);
    EXPECT_EQ(sa.found(), sb.found());
    EXPECT_EQ(sa.counterexample_index, sb.counterexample_index);
    EXPECT_EQ(sa.worst_min_eigenvalue, sb.worst_min_eigenvalue);
  }
}

TEST_F(ParallelMatchesSerial, ThreadCountDoesNotMatter) {
  SolverConfig cfg;
  cfg.samples = 3000;
  cfg.starts = 8;
  cfg.seed = 17;
  const QuantifiedCondition q = oracle::random_condition(17, -0.05);
  omp_set_num_threads(1);
  const Verdict one = decide(q, cfg);
  omp_set_num_threads(3);
  const Verdict three = decide(q, cfg);
  expect_identical(one, three);
}
