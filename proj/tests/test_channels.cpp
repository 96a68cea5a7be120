#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "gsteer/catalog.hpp"
#include "gsteer/errors.hpp"
#include "gsteer/random.hpp"
#include "support/oracles.hpp"

using namespace gsteer;

namespace {

const ModePartition k11(1, 1);

SolverConfig fast_config(std::uint64_t seed = 0) {
  SolverConfig cfg;
  cfg.samples = 4000;
  cfg.starts = 12;
  cfg.seed = seed;
  return cfg;
}

double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Channel, ConstructorChecks) {
  EXPECT_THROW(GaussianChannel(k11, Matrix::Identity(2, 2), Matrix::Zero(4, 4)), DimensionError);
  Matrix m = Matrix::Zero(4, 4);
  m(0, 1) = 1.0;
  EXPECT_THROW(GaussianChannel(k11, Matrix::Identity(4, 4), m), InvalidInputError);
}

TEST(ChannelValidity, Examples) {
  EXPECT_TRUE(is_valid_channel(identity_channel(k11)));
  const GaussianChannel ref = catalog::annihilating_not_breaking();
  const PsdCheck cp = cp_check(ref);
  EXPECT_TRUE(cp.psd);
  EXPECT_NEAR(cp.min_eigenvalue, 0.01, 1e-12);
  const GaussianChannel doubling(k11, 2.0 * Matrix::Identity(4, 4), Matrix::Zero(4, 4));
  const PsdCheck bad = cp_check(doubling);
  EXPECT_FALSE(bad.psd);
  EXPECT_NEAR(bad.min_eigenvalue, -3.0, 1e-12);
}

TEST(Apply, Examples) {
  const GaussianState s = random_state(k11, 3).with_displacement(Vector::Ones(4));
  const GaussianState same = apply(identity_channel(k11), s);
  EXPECT_TRUE(same.cm().isApprox(s.cm()));
  EXPECT_TRUE(same.displacement().isApprox(s.displacement()));

  const double a = 2.0, b = 3.0, c = 1.5, d = -1.2;
  const GaussianState sf = standard_two_mode({a, b, c, d});
  const GaussianState out = apply(catalog::annihilating_not_breaking(), sf);
  Matrix expected{{1.0609 * a + 1, 0, 0.103 * c, 0},
                  {0, 1.0609 * a + 1, 0, 0.103 * d},
                  {0.103 * c, 0, 0.01 * b + 1, 0},
                  {0, 0.103 * d, 0, 0.01 * b + 1}};
  EXPECT_LT(max_abs(out.cm() - expected), 1e-12);

  const GaussianState target = random_state(k11, 4).with_displacement(Vector::Constant(4, 0.5));
  const GaussianState fixed = apply(constant_channel(target), s);
  EXPECT_TRUE(fixed.cm().isApprox(target.cm()));
  EXPECT_TRUE(fixed.displacement().isApprox(target.displacement()));
}

TEST(Apply, Preconditions) {
  const GaussianChannel doubling(k11, 2.0 * Matrix::Identity(4, 4), Matrix::Zero(4, 4));
  EXPECT_THROW(apply(doubling, vacuum(k11)), PreconditionError);
  EXPECT_THROW(apply(identity_channel(k11), vacuum(ModePartition(0, 1))), DimensionError);
  const GaussianState invalid(k11, 0.1 * Matrix::Identity(4, 4));
  EXPECT_THROW(apply(identity_channel(k11), invalid), PreconditionError);
}

TEST(Compose, Examples) {
  const GaussianChannel c = random_channel(k11, 5);
  const GaussianChannel same = compose(identity_channel(k11), c);
  EXPECT_LT(max_abs(same.transfer() - c.transfer()), 1e-15);
  EXPECT_LT(max_abs(same.noise() - c.noise()), 1e-15);

  const GaussianState target = random_state(k11, 6);
  const GaussianChannel absorbed = compose(constant_channel(target), c);
  EXPECT_TRUE(absorbed.transfer().isZero(0));
  EXPECT_TRUE(absorbed.noise().isApprox(target.cm()));

  const double t1 = 0.4, t2 = 1.1;
  const GaussianChannel chain = compose(attenuator(t2, 1.0), attenuator(t1, 1.0));
  const double ct = std::cos(t1) * std::cos(t2);
  const GaussianChannel direct = attenuator(std::acos(ct), 1.0);
  EXPECT_LT(max_abs(chain.transfer() - direct.transfer()), 1e-12);
  EXPECT_LT(max_abs(chain.noise() - direct.noise()), 1e-12);
}

TEST(Compose, Functoriality) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const ModePartition p(static_cast<int>(seed % 2), 1);
    const GaussianChannel c1 = random_channel(p, seed);
    const GaussianChannel c2 = random_channel(p, seed + 7000);
    const GaussianState s = random_state(p, seed);
    const GaussianState lhs = apply(compose(c2, c1), s);
    const GaussianState rhs = apply(c2, apply(c1, s));
    const double scale = 1.0 + max_abs(rhs.cm());
    EXPECT_LT(max_abs(lhs.cm() - rhs.cm()), 1e-10 * scale) << seed;
    EXPECT_LT((lhs.displacement() - rhs.displacement()).cwiseAbs().maxCoeff(), 1e-10 * scale);
  }
}

TEST(Tensor, AttenuatorWithIdentity) {
  const double theta = 0.9;
  const GaussianChannel c = tensor_with_identity(attenuator(theta, 1.0), 1, Side::kA);
  EXPECT_EQ(c.partition(), k11);
  Vector kd(4), md(4);
  kd << std::cos(theta), std::cos(theta), 1, 1;
  md << std::pow(std::sin(theta), 2), std::pow(std::sin(theta), 2), 0, 0;
  EXPECT_LT(max_abs(c.transfer() - Matrix(kd.asDiagonal())), 1e-15);
  EXPECT_LT(max_abs(c.noise() - Matrix(md.asDiagonal())), 1e-15);

  const GaussianChannel ii = tensor_with_identity(identity_channel(ModePartition(0, 1)), 1, Side::kB);
  EXPECT_EQ(ii.transfer(), Matrix::Identity(4, 4));
  EXPECT_TRUE(ii.noise().isZero(0));

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const GaussianChannel r = random_channel(ModePartition(0, 1), seed);
    EXPECT_TRUE(is_valid_channel(tensor_with_identity(r, 1, seed % 2 ? Side::kA : Side::kB)));
  }
}

TEST(Attenuator, Examples) {
  const GaussianChannel id = attenuator(0.0, 1.0);
  EXPECT_EQ(id.transfer(), Matrix::Identity(2, 2));
  EXPECT_TRUE(id.noise().isZero(0));
  const PsdCheck lossy = cp_check(attenuator(0.7, 1.0));
  EXPECT_TRUE(lossy.psd);
  EXPECT_NEAR(lossy.min_eigenvalue, 0.0, 1e-12);
  const GaussianChannel off = attenuator(std::numbers::pi / 2, 2.0);
  EXPECT_LT(max_abs(off.transfer()), 1e-15);
  EXPECT_LT(max_abs(off.noise() - 2.0 * Matrix::Identity(2, 2)), 1e-15);
  EXPECT_THROW(attenuator(0.3, 0.5), InvalidInputError);
}

TEST(Constant, Examples) {
  const GaussianChannel c = constant_channel(vacuum(k11));
  EXPECT_TRUE(c.transfer().isZero(0));
  EXPECT_EQ(c.noise(), Matrix::Identity(4, 4));
  EXPECT_TRUE(is_steering_breaking(catalog::constant_squeezed(2.0)));
  EXPECT_TRUE(is_steering_annihilating(catalog::constant_squeezed(2.0), fast_config()).violated());
  EXPECT_THROW(constant_channel(GaussianState(k11, 0.1 * Matrix::Identity(4, 4))), PreconditionError);
}

TEST(UnsteerableChannel, Examples) {
  const PsdCheck id = unsteerable_check(identity_channel(k11));
  EXPECT_TRUE(id.psd);
  EXPECT_NEAR(id.min_eigenvalue, 0.0, 1e-15);
  const PsdCheck ref = unsteerable_check(catalog::annihilating_not_breaking());
  EXPECT_TRUE(ref.psd);
  EXPECT_NEAR(ref.min_eigenvalue, 0.01, 1e-12);
  EXPECT_TRUE(is_unsteerable_channel(catalog::attenuator_on_a(0.5, 1.0)));
  const GaussianChannel doubling(k11, 2.0 * Matrix::Identity(4, 4), Matrix::Zero(4, 4));
  EXPECT_THROW(is_unsteerable_channel(doubling), PreconditionError);
}

TEST(SaSufficient, Examples) {
  const PsdCheck ref = sa_sufficient_check(catalog::annihilating_not_breaking());
  EXPECT_FALSE(ref.psd);
  EXPECT_NEAR(ref.min_eigenvalue, -0.0609, 1e-9);
  EXPECT_NEAR(ref.witness.tail(2).norm(), 0.0, 1e-9);
  EXPECT_TRUE(sa_sufficient(catalog::attenuator_on_a(0.5, 1.0)));
  EXPECT_TRUE(sa_sufficient(constant_channel(random_unsteerable_state(k11, 2))));
}

TEST(SteeringAnnihilating, Examples) {
  EXPECT_TRUE(is_steering_annihilating(catalog::annihilating_not_breaking()).holds());
  const QuantifiedCondition q = steering_annihilation_condition(identity_channel(k11));
  const Verdict id = decide(q);
  ASSERT_TRUE(id.violated());
  EXPECT_NEAR(id.value, -0.5, 1e-7);
  EXPECT_NEAR(evaluate(q, *id.witness), id.value, 1e-10);
  EXPECT_TRUE(monte_carlo_sa_oracle(identity_channel(k11), 300, 1).found());
}

TEST(MaximalUnsteerable, Examples) {
  EXPECT_TRUE(is_maximal_unsteerable(identity_channel(k11)).holds());
  EXPECT_TRUE(is_maximal_unsteerable(catalog::constant_squeezed(2.0), fast_config()).violated());
}

TEST(SteeringBreaking, Examples) {
  EXPECT_TRUE(is_steering_breaking(constant_channel(random_state(k11, 1))));
  const PsdCheck att = steering_breaking_check(catalog::attenuator_on_a(0.5, 1.0));
  EXPECT_FALSE(att.psd);
  EXPECT_NEAR(att.min_eigenvalue, -1.0, 1e-12);
  EXPECT_NEAR(att.witness.head(2).norm(), 0.0, 1e-9);
  const PsdCheck ref = steering_breaking_check(catalog::annihilating_not_breaking());
  EXPECT_FALSE(ref.psd);
  EXPECT_NEAR(ref.min_eigenvalue, 1.0 - 1.0609, 1e-12);
}

TEST(Choi, Examples) {
  const double r = 0.8;
  const GaussianState id = choi_state(identity_channel(ModePartition(0, 1)), r);
  EXPECT_TRUE(id.cm().isApprox(two_mode_squeezed(r).cm(), 1e-14));
  const GaussianChannel c = random_channel(ModePartition(0, 1), 3);
  const GaussianState product = choi_state(c, 0.0);
  EXPECT_TRUE(product.cm().topRightCorner(2, 2).isZero(0));
  EXPECT_TRUE(is_unsteerable(product));
  const GaussianChannel lossy = attenuator(std::numbers::pi / 4, 1.0);
  EXPECT_EQ(is_unsteerable(choi_state(lossy, 2.0)), is_steering_breaking(lossy));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_TRUE(is_valid_state(choi_state(random_channel(ModePartition(0, 1), seed), 1.5), 1e-8));
  }
}

TEST(Choi, SchurLimit) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GaussianChannel c = random_channel(ModePartition(0, 1), seed);
    const GaussianState choi = choi_state(c, 8.0);
    const CMatrix w = choi.cm().cast<Complex>() + times_i(omega_hat(choi.partition()));
    const CMatrix schur = schur_complement(w, 2).matrix;
    const Matrix om = omega(1);
    const CMatrix direct = c.noise().cast<Complex>() - times_i(c.transfer() * om * c.transfer().transpose());
    EXPECT_LT((schur - direct).cwiseAbs().maxCoeff(), 1e-3) << seed;
  }
}

TEST(Classify, ReferenceChannels) {
  const ClassificationReport ref = classify(catalog::annihilating_not_breaking());
  EXPECT_TRUE(ref.cp.psd);
  EXPECT_FALSE(ref.sa_sufficient.psd);
  EXPECT_TRUE(ref.steering_annihilating.holds());
  EXPECT_FALSE(ref.steering_breaking.psd);
  EXPECT_FALSE(ref.consistency_adjusted);

  const ClassificationReport att = classify(catalog::attenuator_on_a(0.5, 1.0));
  EXPECT_TRUE(att.sa_sufficient.psd);
  EXPECT_FALSE(att.steering_breaking.psd);

  const GaussianChannel sa = catalog::annihilating_not_breaking();
  const GaussianChannel sb = constant_channel(random_state(k11, 9));
  const ClassificationReport both = classify(compose(sa, sb));
  EXPECT_TRUE(both.steering_annihilating.holds());
  EXPECT_TRUE(both.steering_breaking.psd);

  const GaussianChannel doubling(k11, 2.0 * Matrix::Identity(4, 4), Matrix::Zero(4, 4));
  EXPECT_THROW(classify(doubling), PreconditionError);
}

TEST(Classify, ConsistencyAndDisplacementInvariance) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const GaussianChannel c = random_channel(k11, seed);
    const ClassificationReport r = classify(c, fast_config(seed));
    if (r.sa_sufficient.psd) EXPECT_FALSE(r.steering_annihilating.violated());
    if (r.unsteerable.psd) EXPECT_FALSE(r.maximal_unsteerable.violated());
    const ClassificationReport moved = classify(c.with_displacement(Vector::Constant(4, 3.0)), fast_config(seed));
    EXPECT_EQ(r.cp.min_eigenvalue, moved.cp.min_eigenvalue);
    EXPECT_EQ(r.unsteerable.psd, moved.unsteerable.psd);
    EXPECT_EQ(r.sa_sufficient.psd, moved.sa_sufficient.psd);
    EXPECT_EQ(r.steering_breaking.psd, moved.steering_breaking.psd);
    EXPECT_EQ(r.steering_annihilating.state, moved.steering_annihilating.state);
    EXPECT_EQ(r.steering_annihilating.value, moved.steering_annihilating.value);
    EXPECT_EQ(r.maximal_unsteerable.state, moved.maximal_unsteerable.state);
  }
}

TEST(RandomChannel, ValidAndDeterministic) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const ModePartition p(static_cast<int>(seed % 3), 1 + static_cast<int>(seed % 2));
    const PsdCheck cp = cp_check(random_channel(p, seed));
    ASSERT_TRUE(cp.psd) << seed;
    EXPECT_GE(cp.min_eigenvalue, 1e-3 - 1e-9);
  }
  EXPECT_EQ(random_channel(k11, 1).transfer(), random_channel(k11, 1).transfer());
}

TEST(MonteCarlo, Examples) {
  const FalsifierResult ref = monte_carlo_sa_oracle(catalog::annihilating_not_breaking(), 10000, 0);
  EXPECT_FALSE(ref.found());
  EXPECT_EQ(ref.trials_run, 10000u);
  const FalsifierResult id = monte_carlo_sa_oracle(identity_channel(k11), 100, 0);
  ASSERT_TRUE(id.found());
  EXPECT_FALSE(is_unsteerable(*id.counterexample, 1e-8));
  EXPECT_FALSE(monte_carlo_sa_oracle(constant_channel(random_unsteerable_state(k11, 3)), 500, 0).found());
}

TEST(MonteCarlo, SufficientConditionImpliesNoViolation) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const GaussianChannel c = random_channel(k11, seed);
    if (!sa_sufficient(c)) continue;
    ++checked;
    EXPECT_FALSE(monte_carlo_sa_oracle(c, 100, seed).found()) << seed;
  }
  EXPECT_GT(checked, 50);
}

TEST(Closure, BreakingAbsorbsComposition) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const GaussianChannel sb = random_channel(k11, seed);
    if (!is_steering_breaking(sb)) continue;
    const GaussianChannel other = random_channel(k11, seed + 5000);
    EXPECT_TRUE(is_steering_breaking(compose(sb, other), 1e-8)) << seed;
    EXPECT_TRUE(is_steering_breaking(compose(other, sb), 1e-8)) << seed;
  }
}

TEST(Closure, AnnihilationAbsorbsPreComposition) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const GaussianChannel sa = random_channel(k11, seed);
    if (!is_steering_annihilating(sa, fast_config(seed)).holds()) continue;
    ++checked;
    const GaussianChannel other = random_channel(k11, seed + 9000);
    EXPECT_FALSE(is_steering_annihilating(compose(sa, other), fast_config(seed)).violated()) << seed;
  }
  EXPECT_GT(checked, 10);
}

TEST(Inclusions, Samples) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const GaussianChannel c = random_channel(k11, seed);
    const Verdict sa = is_steering_annihilating(c, fast_config(seed));
    const Verdict mus = is_maximal_unsteerable(c, fast_config(seed));
    if (unsteerable_check(c).psd) EXPECT_FALSE(mus.violated()) << seed;
    if (sa_sufficient_check(c).psd) EXPECT_FALSE(sa.violated()) << seed;
  }
}

// The maximal-unsteerability condition takes its infimum over 0 + Q + P with P >= 0 only,
// which admits unphysical inputs. Channel seed 12 annihilates steering (so it is maximally
// unsteerable) yet fails that condition; the exact dual confirms both signs.
TEST(Inclusions, MaximalConditionStricterThanAnnihilation) {
  const GaussianChannel c = random_channel(k11, 12);
  EXPECT_TRUE(is_steering_annihilating(c, fast_config(12)).holds());
  EXPECT_GT(oracle::exact_sphere_minimum(steering_annihilation_condition(c)), 0.0);
  const Verdict mus = is_maximal_unsteerable(c, fast_config(12));
  EXPECT_TRUE(mus.violated());
  EXPECT_LT(oracle::exact_sphere_minimum(maximal_unsteerability_condition(c)), -1e-3);
  EXPECT_FALSE(monte_carlo_sa_oracle(c, 2000, 12).found());
}
