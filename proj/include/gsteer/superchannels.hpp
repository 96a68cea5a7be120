#pragma once

// Gaussian superchannels Phi(A, E, Y, nu), acting on channels by
//   K' = A K Sigma E^T Sigma,  M' = A M A^T + Y,  d' = A d + nu,
// equivalently Phi(phi) = chi2 o phi o chi1 with chi1 = (Sigma E^T Sigma, 0, 0)
// and chi2 = (A, Y, nu).

#include <cstdint>

#include "gsteer/channels.hpp"
#include "gsteer/quantifier.hpp"
#include "gsteer/symplectic.hpp"

namespace gsteer {

class GaussianSuperchannel {
 public:
  /// Checks shapes, finiteness and symmetry of Y; validity is separate.
  GaussianSuperchannel(ModePartition partition, Matrix output_transfer, Matrix input_rotation,
                       Matrix noise, Vector displacement);

  const ModePartition& partition() const noexcept { return partition_; }
  /// A
  const Matrix& output_transfer() const noexcept { return a_; }
  /// E (orthogonal for a valid superchannel)
  const Matrix& input_rotation() const noexcept { return e_; }
  /// Y
  const Matrix& noise() const noexcept { return y_; }
  /// nu
  const Vector& displacement() const noexcept { return nu_; }

  GaussianSuperchannel with_displacement(Vector displacement) const;

 private:
  ModePartition partition_;
  Matrix a_;
  Matrix e_;
  Matrix y_;
  Vector nu_;
};

struct SuperchannelValidity {
  /// ||E E^T - I||_inf
  double orthogonality_residual = 0.0;
  bool orthogonal = false;
  /// Y + i Omega - i A Omega A^T >= 0
  PsdCheck noise_condition;
  /// i Omega - i E Omega E^T >= 0
  PsdCheck rotation_condition;

  bool valid() const noexcept { return orthogonal && noise_condition.psd && rotation_condition.psd; }
};

SuperchannelValidity superchannel_validity(const GaussianSuperchannel& s, double tol = kDefaultPsdTol);
bool is_valid_superchannel(const GaussianSuperchannel& s, double tol = kDefaultPsdTol);

GaussianSuperchannel identity_superchannel(const ModePartition& p);

/// Throws PreconditionError if either argument is invalid, DimensionError if
/// the partitions differ.
GaussianChannel apply_to_channel(const GaussianSuperchannel& s, const GaussianChannel& c,
                                 double tol = kDefaultPsdTol);

struct Decomposition {
  GaussianChannel pre;   ///< chi1 = (Sigma E^T Sigma, 0, 0)
  GaussianChannel post;  ///< chi2 = (A, Y, nu)
};

Decomposition decompose(const GaussianSuperchannel& s, double tol = kDefaultPsdTol);

struct UsSufficientReport {
  /// Y + i Omega^ - A (i Omega^) A^T >= 0
  PsdCheck noise_condition;
  /// ||(i Omega^) - E (i Omega^) E^T||_inf; the PSD form of this condition is
  /// equivalent to it vanishing (the matrix is Hermitian and traceless).
  double form_residual = 0.0;
  bool form_preserved = false;

  bool holds() const noexcept { return noise_condition.psd && form_preserved; }
};

/// Sufficient condition for an unsteerable superchannel. The form-preservation
/// part is tested as an equality with absolute tolerance 1e-9 (1 + ||E||_inf).
UsSufficientReport us_sufficient_check(const GaussianSuperchannel& s, double tol = kDefaultPsdTol);
bool us_sufficient(const GaussianSuperchannel& s, double tol = kDefaultPsdTol);

/// for all w: w^dag Y w + |w^dag A Omega^ A^T w| >= |w^dag Omega^ w|
QuantifiedCondition mus_noise_condition(const GaussianSuperchannel& s);
/// for all w: |w^dag (Sigma E^T Sigma) Omega^ (Sigma E Sigma) w| >= |w^dag Omega^ w|
QuantifiedCondition mus_rotation_condition(const GaussianSuperchannel& s);

struct MusSufficientReport {
  Verdict noise;
  Verdict rotation;
  Verdict combined;
};

/// Both quantified conditions; HOLDS only if both hold, VIOLATED if either is
/// violated (carrying that witness), UNDECIDED otherwise.
MusSufficientReport mus_sufficient_report(const GaussianSuperchannel& s, const SolverConfig& cfg = {},
                                          double tol = kDefaultPsdTol);
Verdict mus_sufficient(const GaussianSuperchannel& s, const SolverConfig& cfg = {},
                       double tol = kDefaultPsdTol);

enum class ChainMode { kUnsteerable, kMaximalUnsteerable };

struct ChainReport {
  Verdict pre;
  Verdict post;
  Verdict combined;
};

/// Classifies the canonical decomposition's chi1 and chi2: with the
/// unsteerable-channel PSD test (value = min eigenvalue, witness = its
/// eigenvector when violated) or with the maximal-unsteerability verdict.
ChainReport chain_sufficient_report(const GaussianSuperchannel& s, const SolverConfig& cfg,
                                    ChainMode mode, double tol = kDefaultPsdTol);
Verdict chain_sufficient(const GaussianSuperchannel& s, const SolverConfig& cfg, ChainMode mode,
                         double tol = kDefaultPsdTol);

/// Combine two verdicts with AND semantics.
Verdict combine_verdicts(const Verdict& first, const Verdict& second);

/// Random valid superchannel. E is a passive (orthogonal symplectic) matrix,
/// block-diagonal over A and B for half of the seeds; A is drawn like a
/// random channel's K; Y is shifted to satisfy validity with margin 1e-3.
GaussianSuperchannel random_superchannel(const ModePartition& p, std::uint64_t seed);

}  // namespace gsteer
