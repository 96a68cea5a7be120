#pragma once

// Decision engine for universally quantified conditions of the form
//
//   for all w in C^{2N}:  g(w) = w^dag H w + sum_k |w^dag S_k w| - |w^dag T w| >= 0
//
// with H real symmetric and S_k, T real antisymmetric. For antisymmetric S,
// w^dag S w is purely imaginary, so every term of g is real; g is homogeneous
// of degree two and vanishes on antisymmetric forms for real w, so the search
// runs over genuinely complex vectors on the unit sphere.
//
// decide() is a falsifier with a high-confidence HOLDS: random and structured
// candidates first, then multi-start Nelder-Mead on the sphere. It is not a
// certified global optimizer; incompleteness shows up as UNDECIDED.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "gsteer/symplectic.hpp"

namespace gsteer {

class QuantifiedCondition {
 public:
  /// Throws DimensionError on shape mismatch and InvalidInputError when H is
  /// not symmetric or a form is not antisymmetric (1e-8 relative). Stored
  /// matrices are exactly (anti)symmetrized.
  QuantifiedCondition(Matrix hermitian_term, std::vector<Matrix> plus_terms, Matrix minus_term);

  Index dim() const noexcept { return h_.rows(); }
  const Matrix& hermitian_term() const noexcept { return h_; }
  const std::vector<Matrix>& plus_terms() const noexcept { return plus_; }
  const Matrix& minus_term() const noexcept { return minus_; }

 private:
  Matrix h_;
  std::vector<Matrix> plus_;
  Matrix minus_;
};

struct SolverConfig {
  int starts = 32;
  int samples = 20000;
  int max_iters = 500;
  double decision_margin = 1e-7;
  std::uint64_t seed = 0;
  /// Smoothed-gradient polish of VIOLATED witnesses; never changes a verdict.
  bool polish_witness = true;

  /// Throws InvalidInputError unless starts >= 1, samples >= 0,
  /// max_iters >= 1 and decision_margin > 0.
  void validate() const;
};

enum class VerdictState { kHolds, kViolated, kUndecided };

std::string_view to_string(VerdictState state);

struct Verdict {
  VerdictState state = VerdictState::kUndecided;
  /// Best (smallest) gap found on the unit sphere.
  double value = 0.0;
  /// Unit vector with evaluate(q, *witness) == value; present iff VIOLATED.
  std::optional<CVector> witness;

  bool holds() const noexcept { return state == VerdictState::kHolds; }
  bool violated() const noexcept { return state == VerdictState::kViolated; }
  bool undecided() const noexcept { return state == VerdictState::kUndecided; }
};

/// g(w). Throws InvalidInputError for the zero vector and DimensionError on
/// length mismatch.
double evaluate(const QuantifiedCondition& q, const CVector& w);

/// Deterministic candidate vectors injected ahead of random sampling:
/// eigenvectors of the pencils H + i*eta*T - i*t*sum_k S_k (eta = +-1, t on a
/// grid in [-1, 1]) and per-mode circular vectors (e_q +- i e_p)/sqrt(2).
std::vector<CVector> structured_candidates(const QuantifiedCondition& q);

/// OpenMP-parallel decision. The verdict is bit-identical to serial::decide
/// for the same (q, cfg) whatever the thread count.
Verdict decide(const QuantifiedCondition& q, const SolverConfig& cfg = {});

struct GridSweep {
  double min_value = 0.0;
  CVector argmin;
  std::size_t points = 0;
};

/// Brute-force low-discrepancy sweep of the unit sphere (Halton points mapped
/// through Box-Muller). Desk-scale only: throws DimensionError when
/// dim() > 4. Parallel over points.
GridSweep grid_sweep(const QuantifiedCondition& q, std::size_t resolution = 100000);

/// Most negative grid point if the sweep finds any g < 0.
std::optional<CVector> falsify_grid(const QuantifiedCondition& q,
                                    std::size_t resolution = 100000);

namespace serial {

/// Single-threaded reference implementations of the kernels above.
Verdict decide(const QuantifiedCondition& q, const SolverConfig& cfg = {});
GridSweep grid_sweep(const QuantifiedCondition& q, std::size_t resolution = 100000);

}  // namespace serial

}  // namespace gsteer
