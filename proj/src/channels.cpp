#include "gsteer/channels.hpp"

#include <cmath>
#include <string>

#include "gsteer/errors.hpp"
#include "gsteer/random.hpp"

namespace gsteer {

GaussianChannel::GaussianChannel(ModePartition partition, Matrix transfer, Matrix noise,
                                 Vector displacement)
    : partition_(partition),
      transfer_(std::move(transfer)),
      noise_(std::move(noise)),
      displacement_(std::move(displacement)) {
  const Index dim = partition_.dim();
  require_shape(transfer_, dim, dim, "K");
  require_shape(noise_, dim, dim, "M");
  if (displacement_.size() != dim) throw DimensionError("d must have length " + std::to_string(dim));
  require_finite(transfer_, "K");
  require_finite(noise_, "M");
  require_finite(displacement_, "d");
  require_symmetric(noise_, "M");
  noise_ = symmetrized(noise_);
}

GaussianChannel::GaussianChannel(ModePartition partition, Matrix transfer, Matrix noise)
    : GaussianChannel(partition, std::move(transfer), std::move(noise), Vector::Zero(partition.dim())) {}

GaussianChannel GaussianChannel::with_displacement(Vector displacement) const {
  return GaussianChannel(partition_, transfer_, noise_, std::move(displacement));
}

GaussianChannel GaussianChannel::with_partition(ModePartition partition) const {
  if (partition.dim() != partition_.dim()) {
    throw DimensionError("repartitioning must keep the total number of modes");
  }
  return GaussianChannel(partition, transfer_, noise_, displacement_);
}

GaussianChannel identity_channel(const ModePartition& p) {
  return GaussianChannel(p, Matrix::Identity(p.dim(), p.dim()), Matrix::Zero(p.dim(), p.dim()));
}

GaussianChannel attenuator(double theta, double thermal_noise) {
  if (!std::isfinite(theta) || !std::isfinite(thermal_noise)) {
    throw InvalidInputError("attenuator parameters must be finite");
  }
  if (thermal_noise < 1.0) throw InvalidInputError("attenuator requires n_th >= 1");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return GaussianChannel(ModePartition(0, 1), c * Matrix::Identity(2, 2),
                         s * s * thermal_noise * Matrix::Identity(2, 2));
}

GaussianChannel constant_channel(const GaussianState& target) {
  const PsdCheck valid = validity_check(target);
  if (!valid.psd) throw PreconditionError("constant channel target is not a valid state", valid.min_eigenvalue);
  const Index dim = target.partition().dim();
  return GaussianChannel(target.partition(), Matrix::Zero(dim, dim), target.cm(), target.displacement());
}

GaussianChannel tensor_with_identity(const GaussianChannel& c, int extra_modes, Side channel_side) {
  if (extra_modes < 1) throw InvalidInputError("tensor_with_identity needs at least one extra mode");
  const int own = c.partition().modes();
  const ModePartition p = channel_side == Side::kA ? ModePartition(own, extra_modes)
                                                   : ModePartition(extra_modes, own);
  const Index dim = p.dim();
  const Index cd = c.partition().dim();
  const Index offset = channel_side == Side::kA ? 0 : dim - cd;

  Matrix k = Matrix::Identity(dim, dim);
  Matrix m = Matrix::Zero(dim, dim);
  Vector d = Vector::Zero(dim);
  k.block(offset, offset, cd, cd) = c.transfer();
  m.block(offset, offset, cd, cd) = c.noise();
  d.segment(offset, cd) = c.displacement();
  return GaussianChannel(p, std::move(k), std::move(m), std::move(d));
}

namespace {

// M + i*outer - K (i*inner) K^T
CMatrix sandwich(const GaussianChannel& c, const Matrix& outer, const Matrix& inner) {
  const Matrix& k = c.transfer();
  return c.noise().cast<Complex>() + times_i(outer) - times_i(k * inner * k.transpose());
}

void require_cp(const GaussianChannel& c, double tol) {
  const PsdCheck cp = cp_check(c, tol);
  if (!cp.psd) {
    throw PreconditionError("completely positive condition violated (min eigenvalue " +
                                std::to_string(cp.min_eigenvalue) + ")",
                            cp.min_eigenvalue);
  }
}

QuantifiedCondition steering_condition(const GaussianChannel& c, const Matrix& inner) {
  const Matrix& k = c.transfer();
  return QuantifiedCondition(c.noise(), {k * inner * k.transpose()}, omega_hat(c.partition()));
}

}  // namespace

PsdCheck cp_check(const GaussianChannel& c, double tol) {
  const Matrix om = omega(c.partition().modes());
  return check_psd(sandwich(c, om, om), tol);
}

bool is_valid_channel(const GaussianChannel& c, double tol) { return cp_check(c, tol).psd; }

PsdCheck unsteerable_check(const GaussianChannel& c, double tol) {
  const Matrix oh = omega_hat(c.partition());
  return check_psd(sandwich(c, oh, oh), tol);
}

bool is_unsteerable_channel(const GaussianChannel& c, double tol) {
  require_cp(c, tol);
  return unsteerable_check(c, tol).psd;
}

PsdCheck sa_sufficient_check(const GaussianChannel& c, double tol) {
  return check_psd(sandwich(c, omega_hat(c.partition()), omega(c.partition().modes())), tol);
}

bool sa_sufficient(const GaussianChannel& c, double tol) {
  require_cp(c, tol);
  return sa_sufficient_check(c, tol).psd;
}

PsdCheck steering_breaking_check(const GaussianChannel& c, double tol) {
  const Index dim = c.partition().dim();
  return check_psd(sandwich(c, Matrix::Zero(dim, dim), omega(c.partition().modes())), tol);
}

bool is_steering_breaking(const GaussianChannel& c, double tol) {
  require_cp(c, tol);
  return steering_breaking_check(c, tol).psd;
}

QuantifiedCondition steering_annihilation_condition(const GaussianChannel& c) {
  return steering_condition(c, omega(c.partition().modes()));
}

QuantifiedCondition maximal_unsteerability_condition(const GaussianChannel& c) {
  return steering_condition(c, omega_hat(c.partition()));
}

Verdict is_steering_annihilating(const GaussianChannel& c, const SolverConfig& cfg, double tol) {
  require_cp(c, tol);
  return decide(steering_annihilation_condition(c), cfg);
}

Verdict is_maximal_unsteerable(const GaussianChannel& c, const SolverConfig& cfg, double tol) {
  require_cp(c, tol);
  return decide(maximal_unsteerability_condition(c), cfg);
}

GaussianState apply(const GaussianChannel& c, const GaussianState& s, double tol) {
  if (c.partition() != s.partition()) throw DimensionError("channel and state partitions differ");
  require_cp(c, tol);
  const PsdCheck valid = validity_check(s, tol);
  if (!valid.psd) throw PreconditionError("input is not a valid state", valid.min_eigenvalue);
  const Matrix& k = c.transfer();
  Matrix cm = k * s.cm() * k.transpose() + c.noise();
  Vector d = k * s.displacement() + c.displacement();
  return GaussianState(s.partition(), symmetrized(cm), std::move(d));
}

GaussianChannel compose(const GaussianChannel& c2, const GaussianChannel& c1) {
  if (c2.partition() != c1.partition()) throw DimensionError("composed channels must share a partition");
  const Matrix& k2 = c2.transfer();
  Matrix k = k2 * c1.transfer();
  Matrix m = symmetrized(k2 * c1.noise() * k2.transpose() + c2.noise());
  Vector d = k2 * c1.displacement() + c2.displacement();
  return GaussianChannel(c2.partition(), std::move(k), std::move(m), std::move(d));
}

GaussianState choi_state(const GaussianChannel& c, double r, double tol) {
  if (!std::isfinite(r)) throw InvalidInputError("squeezing parameter must be finite");
  require_cp(c, tol);
  const int modes = c.partition().modes();
  const Index n = c.partition().dim();
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  const Matrix& k = c.transfer();
  const Matrix sg = sigma(modes);
  Matrix cm(2 * n, 2 * n);
  cm.topLeftCorner(n, n) = ch * (k * k.transpose()) + c.noise();
  cm.topRightCorner(n, n) = sh * (k * sg);
  cm.bottomLeftCorner(n, n) = sh * (sg * k.transpose());
  cm.bottomRightCorner(n, n) = ch * Matrix::Identity(n, n);
  return GaussianState(ModePartition(modes, modes), symmetrized(cm));
}

ClassificationReport classify(const GaussianChannel& c, const SolverConfig& cfg, double tol) {
  ClassificationReport out;
  out.cp = cp_check(c, tol);
  if (!out.cp.psd) {
    throw PreconditionError("completely positive condition violated (min eigenvalue " +
                                std::to_string(out.cp.min_eigenvalue) + ")",
                            out.cp.min_eigenvalue);
  }
  out.unsteerable = unsteerable_check(c, tol);
  out.sa_sufficient = sa_sufficient_check(c, tol);
  out.steering_breaking = steering_breaking_check(c, tol);
  out.steering_annihilating = decide(steering_annihilation_condition(c), cfg);
  out.maximal_unsteerable = decide(maximal_unsteerability_condition(c), cfg);

  auto downgrade = [&](Verdict& v) {
    v.state = VerdictState::kUndecided;
    v.witness.reset();
    out.consistency_adjusted = true;
  };
  if (out.sa_sufficient.psd && out.steering_annihilating.violated()) downgrade(out.steering_annihilating);
  if (out.unsteerable.psd && out.maximal_unsteerable.violated()) downgrade(out.maximal_unsteerable);
  return out;
}

GaussianChannel random_channel(const ModePartition& p, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0x4348414eULL);
  const Index dim = p.dim();
  const int modes = p.modes();
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Matrix k;
  Matrix m0;
  if (unit(rng) < 0.5) {
    k = uniform_matrix(rng, dim, dim, -1.5, 1.5);
    const Matrix g = normal_matrix(rng, dim, dim);
    m0 = g * g.transpose();
  } else {
    const double scale = 0.3 + 0.8 * unit(rng);
    k = scale * random_symplectic(rng, modes, 0.8);
    const Matrix g = (0.3 * unit(rng)) * normal_matrix(rng, dim, dim);
    m0 = g * g.transpose();
  }
  m0 = symmetrized(m0);
  const Matrix om = omega(modes);
  const double lam = min_eigenvalue(m0.cast<Complex>() + times_i(om) - times_i(k * om * k.transpose()));
  m0.diagonal().array() += std::max(0.0, -lam + 1e-3);
  Vector d = normal_matrix(rng, dim, 1).col(0);
  return GaussianChannel(p, std::move(k), std::move(m0), std::move(d));
}

}  // namespace gsteer
