#pragma once

// Deterministic random generation. Every generator is a pure function of its
// arguments and a 64-bit seed; parallel callers derive one stream per work
// item with derive_seed so results do not depend on scheduling.

#include <cstdint>
#include <random>

#include "gsteer/symplectic.hpp"

namespace gsteer {

using Rng = std::mt19937_64;

/// splitmix64 finalizer over (seed, stream); distinct streams give
/// statistically independent seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return Rng(derive_seed(seed, stream));
}

/// rows x cols matrix of independent standard normals.
Matrix normal_matrix(Rng& rng, Index rows, Index cols);

/// rows x cols matrix with entries uniform in [lo, hi).
Matrix uniform_matrix(Rng& rng, Index rows, Index cols, double lo, double hi);

/// Haar-distributed real orthogonal matrix (QR of a Gaussian matrix with
/// sign-fixed R).
Matrix random_orthogonal(Rng& rng, Index dim);

/// Real 2N x 2N orthogonal symplectic matrix built from a Haar unitary on N
/// modes (a passive linear-optics transformation).
Matrix random_passive(Rng& rng, int modes);

/// O1 * diag(e^{-r1}, e^{r1}, ...) * O2 with passive O1, O2 and squeezing
/// parameters r_k uniform in [0, max_squeezing].
Matrix random_symplectic(Rng& rng, int modes, double max_squeezing);

/// Uniform point on the unit sphere of C^dim.
CVector random_unit_vector(Rng& rng, Index dim);

}  // namespace gsteer
