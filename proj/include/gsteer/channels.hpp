#pragma once

// Gaussian channels phi(K, M, d): Gamma -> K Gamma K^T + M, d_rho -> K d_rho + d.

#include <cstdint>
#include <optional>

#include "gsteer/quantifier.hpp"
#include "gsteer/states.hpp"
#include "gsteer/symplectic.hpp"

namespace gsteer {

class GaussianChannel {
 public:
  /// Checks shapes (all 2N x 2N / 2N for the partition), finiteness and
  /// symmetry of the noise matrix; complete positivity is checked separately.
  GaussianChannel(ModePartition partition, Matrix transfer, Matrix noise, Vector displacement);
  GaussianChannel(ModePartition partition, Matrix transfer, Matrix noise);

  const ModePartition& partition() const noexcept { return partition_; }
  /// K
  const Matrix& transfer() const noexcept { return transfer_; }
  /// M
  const Matrix& noise() const noexcept { return noise_; }
  /// d
  const Vector& displacement() const noexcept { return displacement_; }

  GaussianChannel with_displacement(Vector displacement) const;
  GaussianChannel with_partition(ModePartition partition) const;

 private:
  ModePartition partition_;
  Matrix transfer_;
  Matrix noise_;
  Vector displacement_;
};

enum class Side { kA, kB };

GaussianChannel identity_channel(const ModePartition& p);

/// Single-mode attenuator: K = cos(theta) I, M = sin^2(theta) n_th I, on
/// partition (0, 1). Throws InvalidInputError when n_th < 1.
GaussianChannel attenuator(double theta, double thermal_noise);

/// K = 0, M = Gamma_0, d = d_0. Throws PreconditionError for an invalid target.
GaussianChannel constant_channel(const GaussianState& target);

/// c (+) identity on `extra_modes` further modes. `channel_side` selects
/// whether c occupies the A slots (partition (N_c, extra)) or the B slots
/// (partition (extra, N_c)).
GaussianChannel tensor_with_identity(const GaussianChannel& c, int extra_modes, Side channel_side);

/// Completely positive condition M + i Omega - i K Omega K^T >= 0.
PsdCheck cp_check(const GaussianChannel& c, double tol = kDefaultPsdTol);
bool is_valid_channel(const GaussianChannel& c, double tol = kDefaultPsdTol);

/// Gaussian unsteerable channel: M + i Omega^ - K (i Omega^) K^T >= 0.
PsdCheck unsteerable_check(const GaussianChannel& c, double tol = kDefaultPsdTol);
bool is_unsteerable_channel(const GaussianChannel& c, double tol = kDefaultPsdTol);

/// Sufficient condition for steering annihilation:
/// M + i Omega^ - i K Omega K^T >= 0 (full Omega inside the K sandwich).
PsdCheck sa_sufficient_check(const GaussianChannel& c, double tol = kDefaultPsdTol);
bool sa_sufficient(const GaussianChannel& c, double tol = kDefaultPsdTol);

/// Steering-breaking criterion M - i K Omega K^T >= 0.
PsdCheck steering_breaking_check(const GaussianChannel& c, double tol = kDefaultPsdTol);
bool is_steering_breaking(const GaussianChannel& c, double tol = kDefaultPsdTol);

/// for all w: w^dag M w + |w^dag K F K^T w| >= |w^dag Omega^ w|, with F = Omega
/// (steering annihilation) or F = Omega^ (maximal unsteerability).
QuantifiedCondition steering_annihilation_condition(const GaussianChannel& c);
QuantifiedCondition maximal_unsteerability_condition(const GaussianChannel& c);

Verdict is_steering_annihilating(const GaussianChannel& c, const SolverConfig& cfg = {},
                                 double tol = kDefaultPsdTol);
Verdict is_maximal_unsteerable(const GaussianChannel& c, const SolverConfig& cfg = {},
                               double tol = kDefaultPsdTol);

/// Output state. Throws PreconditionError for an invalid channel or state and
/// DimensionError when the partitions differ.
GaussianState apply(const GaussianChannel& c, const GaussianState& s, double tol = kDefaultPsdTol);

/// c2 after c1: K = K2 K1, M = K2 M1 K2^T + M2, d = K2 d1 + d2.
GaussianChannel compose(const GaussianChannel& c2, const GaussianChannel& c1);

/// (c (x) I) applied to a two-mode squeezed reference at squeezing r. The
/// result lives on partition (N, N): the channel output is subsystem A.
GaussianState choi_state(const GaussianChannel& c, double r, double tol = kDefaultPsdTol);

struct ClassificationReport {
  PsdCheck cp;
  PsdCheck unsteerable;
  PsdCheck sa_sufficient;
  Verdict steering_annihilating;
  Verdict maximal_unsteerable;
  PsdCheck steering_breaking;
  /// Set when a solver verdict contradicted a PSD-certified implication and
  /// was downgraded to UNDECIDED.
  bool consistency_adjusted = false;
};

/// Runs every predicate. Throws PreconditionError for a non-CP channel.
ClassificationReport classify(const GaussianChannel& c, const SolverConfig& cfg = {},
                              double tol = kDefaultPsdTol);

/// Random CP-valid channel. Half of the seeds draw K uniform in [-1.5, 1.5]
/// with M0 = G G^T; the other half draw K = t S with S a random symplectic
/// (squeezing <= 0.8), t in [0.3, 1.1], and small noise. In both cases
/// M = M0 + max(0, -lambda_min(M0 + i Omega - i K Omega K^T) + 1e-3) I.
GaussianChannel random_channel(const ModePartition& p, std::uint64_t seed);

struct FalsifierResult {
  std::optional<GaussianState> counterexample;
  std::size_t counterexample_index = 0;
  std::size_t trials_run = 0;
  /// Smallest min-eigenvalue of the unsteerability test over evaluated trials.
  double worst_min_eigenvalue = 0.0;

  bool found() const noexcept { return counterexample.has_value(); }
};

/// Samples `trials` valid input states (a mix of random_state and random pure
/// states with squeezing up to 1 and up to 3), pushes them through c, and
/// reports the first output that is steerable. A falsifier only: no
/// counterexample is not a certificate.
FalsifierResult monte_carlo_sa_oracle(const GaussianChannel& c, std::size_t trials,
                                      std::uint64_t seed, double tol = kDefaultPsdTol);

/// Same sampling over (N + N)-mode inputs sigma, checking (c (x) I)(sigma)
/// for steerability from the channel side to the reference side.
FalsifierResult monte_carlo_sb_oracle(const GaussianChannel& c, std::size_t trials,
                                      std::uint64_t seed, double tol = kDefaultPsdTol);

namespace serial {
FalsifierResult monte_carlo_sa_oracle(const GaussianChannel& c, std::size_t trials,
                                      std::uint64_t seed, double tol = kDefaultPsdTol);
FalsifierResult monte_carlo_sb_oracle(const GaussianChannel& c, std::size_t trials,
                                      std::uint64_t seed, double tol = kDefaultPsdTol);
}  // namespace serial

}  // namespace gsteer
