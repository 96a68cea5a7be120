#include "gsteer/states.hpp"

#include <cmath>
#include <string>

#include "gsteer/errors.hpp"
#include "gsteer/random.hpp"

namespace gsteer {

namespace {

constexpr double kGeneratorMargin = 1e-3;

// Shift that brings x + i*form to PSD, plus the generator margin.
double psd_shift(const Matrix& x, const Matrix& form) {
  const double lam = min_eigenvalue(x.cast<Complex>() + times_i(form));
  return std::max(0.0, -lam) + kGeneratorMargin;
}

}  // namespace

GaussianState::GaussianState(ModePartition partition, Matrix cm, Vector displacement)
    : partition_(partition), cm_(std::move(cm)), displacement_(std::move(displacement)) {
  const Index dim = partition_.dim();
  require_shape(cm_, dim, dim, "covariance matrix");
  if (displacement_.size() != dim) {
    throw DimensionError("displacement must have length " + std::to_string(dim));
  }
  require_finite(cm_, "covariance matrix");
  require_finite(displacement_, "displacement");
  require_symmetric(cm_, "covariance matrix");
  cm_ = symmetrized(cm_);
}

GaussianState::GaussianState(ModePartition partition, Matrix cm)
    : GaussianState(partition, std::move(cm), Vector::Zero(partition.dim())) {}

GaussianState GaussianState::with_displacement(Vector displacement) const {
  return GaussianState(partition_, cm_, std::move(displacement));
}

PsdCheck validity_check(const GaussianState& s, double tol) {
  return check_psd(s.cm().cast<Complex>() + times_i(omega(s.partition().modes())), tol);
}

bool is_valid_state(const GaussianState& s, double tol) { return validity_check(s, tol).psd; }

PsdCheck unsteerability_check(const GaussianState& s, double tol) {
  return check_psd(s.cm().cast<Complex>() + times_i(omega_hat(s.partition())), tol);
}

bool is_unsteerable(const GaussianState& s, double tol) {
  const PsdCheck valid = validity_check(s, tol);
  if (!valid.psd) {
    throw PreconditionError("state is not a valid covariance matrix", valid.min_eigenvalue);
  }
  return unsteerability_check(s, tol).psd;
}

GaussianState vacuum(const ModePartition& p) {
  return GaussianState(p, Matrix::Identity(p.dim(), p.dim()));
}

GaussianState standard_two_mode(const StandardFormParams& params, const Vector& displacement) {
  const auto [a, b, c, d] = params;
  const Vector entries{{a, b, c, d}};
  require_finite(entries, "standard-form parameters");
  const double slack = 1e-9 * (1.0 + std::abs(a * b));
  if (a < 1.0 - 1e-12 || b < 1.0 - 1e-12 || a * b - c * c < 1.0 - slack ||
      a * b - d * d < 1.0 - slack) {
    throw InvalidInputError("standard form requires a, b >= 1, ab - c^2 >= 1, ab - d^2 >= 1");
  }
  Matrix cm{{a, 0, c, 0}, {0, a, 0, d}, {c, 0, b, 0}, {0, d, 0, b}};
  return GaussianState(ModePartition(1, 1), std::move(cm), displacement);
}

GaussianState two_mode_squeezed(double r) {
  if (!std::isfinite(r)) throw InvalidInputError("squeezing parameter must be finite");
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  return standard_two_mode({ch, ch, sh, -sh});
}

GaussianState random_state(const ModePartition& p, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0x5354415445ULL);
  const Matrix g = normal_matrix(rng, p.dim(), p.dim());
  Matrix cm = g.transpose() * g;
  cm = symmetrized(cm);
  cm.diagonal().array() += psd_shift(cm, omega(p.modes()));
  return GaussianState(p, std::move(cm));
}

GaussianState random_unsteerable_state(const ModePartition& p, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0x5553544154ULL);
  const Index b = 2 * static_cast<Index>(p.n());

  const Matrix gq = normal_matrix(rng, b, b);
  Matrix q = symmetrized(gq.transpose() * gq);
  q.diagonal().array() += psd_shift(q, omega(p.n()));

  const Matrix gp = normal_matrix(rng, p.dim(), p.dim());
  Matrix cm = symmetrized(gp * gp.transpose());
  cm.bottomRightCorner(b, b) += q;
  // Validity is not implied by the decomposition; add the remaining shift to P.
  const double lam = min_eigenvalue(cm.cast<Complex>() + times_i(omega(p.modes())));
  if (lam < kGeneratorMargin) cm.diagonal().array() += kGeneratorMargin - lam;
  return GaussianState(p, std::move(cm));
}

GaussianState random_pure_state(const ModePartition& p, std::uint64_t seed,
                                double max_squeezing) {
  Rng rng = make_rng(seed, 0x50555245ULL);
  const Matrix s = random_symplectic(rng, p.modes(), max_squeezing);
  return GaussianState(p, symmetrized(s * s.transpose()));
}

GaussianState swap_subsystems(const GaussianState& s) {
  const ModePartition target = s.partition().swapped();
  const Index a = 2 * static_cast<Index>(s.partition().m());
  const Index dim = s.partition().dim();
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(dim);
  // New coordinate j takes old coordinate (j + a) mod dim.
  for (Index j = 0; j < dim; ++j) perm.indices()((j + a) % dim) = static_cast<int>(j);
  const Matrix pm = perm.toDenseMatrix().cast<double>();
  // pm maps old index i to new index perm(i); cm' = P cm P^T.
  Matrix cm = pm * s.cm() * pm.transpose();
  Vector d = pm * s.displacement();
  return GaussianState(target, std::move(cm), std::move(d));
}

}  // namespace gsteer
