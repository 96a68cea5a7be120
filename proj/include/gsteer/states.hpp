#pragma once

// Gaussian states at the covariance-matrix level.
//
// Steering is always considered from subsystem A (first m modes) to
// subsystem B (last n modes); use swap_subsystems for the other direction.

#include <cstdint>

#include "gsteer/symplectic.hpp"

namespace gsteer {

/// Covariance matrix and displacement of an (m + n)-mode Gaussian state.
///
/// The constructor checks shapes, finiteness and symmetry (1e-8 relative) and
/// stores the symmetrized covariance matrix. Physical validity is a separate
/// predicate (is_valid_state) so that candidate matrices can be represented.
class GaussianState {
 public:
  GaussianState(ModePartition partition, Matrix cm, Vector displacement);
  GaussianState(ModePartition partition, Matrix cm);

  const ModePartition& partition() const noexcept { return partition_; }
  const Matrix& cm() const noexcept { return cm_; }
  const Vector& displacement() const noexcept { return displacement_; }

  GaussianState with_displacement(Vector displacement) const;

 private:
  ModePartition partition_;
  Matrix cm_;
  Vector displacement_;
};

/// Entries of the two-mode standard form
///   [[a, 0, c, 0], [0, a, 0, d], [c, 0, b, 0], [0, d, 0, b]].
struct StandardFormParams {
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;
  double d = 0.0;
};

/// Gamma + i Omega_N >= 0.
PsdCheck validity_check(const GaussianState& s, double tol = kDefaultPsdTol);
bool is_valid_state(const GaussianState& s, double tol = kDefaultPsdTol);

/// Gamma + (0_{2m} (+) i Omega_n) >= 0, without checking validity first.
PsdCheck unsteerability_check(const GaussianState& s, double tol = kDefaultPsdTol);

/// Gaussian unsteerability from A to B. Throws PreconditionError when s is
/// not a valid state.
bool is_unsteerable(const GaussianState& s, double tol = kDefaultPsdTol);

GaussianState vacuum(const ModePartition& p);

/// Standard-form (1+1)-mode state. Throws InvalidInputError unless a, b >= 1,
/// ab - c^2 >= 1 and ab - d^2 >= 1 (with 1e-9 relative slack).
GaussianState standard_two_mode(const StandardFormParams& params,
                                const Vector& displacement = Vector::Zero(4));

/// Two-mode squeezed vacuum: standard form with a = b = cosh 2r,
/// c = -d = sinh 2r.
GaussianState two_mode_squeezed(double r);

/// Random valid state: Gamma = G^T G + delta I, with delta the smallest shift
/// making Gamma + i Omega >= 0 plus a 1e-3 margin.
GaussianState random_state(const ModePartition& p, std::uint64_t seed);

/// Random valid unsteerable state Gamma = (0_{2m} (+) Q) + P with
/// Q + i Omega_n >= 0 and P >= 0, both with a 1e-3 margin.
GaussianState random_unsteerable_state(const ModePartition& p, std::uint64_t seed);

/// Random pure state S S^T with S = O1 D O2 symplectic, squeezing per mode
/// uniform in [0, max_squeezing].
GaussianState random_pure_state(const ModePartition& p, std::uint64_t seed,
                                double max_squeezing);

/// Reorders modes so that B comes first; the result's partition is (n, m).
GaussianState swap_subsystems(const GaussianState& s);

}  // namespace gsteer
