#include "gsteer/superchannels.hpp"

#include <algorithm>
#include <string>

#include "gsteer/errors.hpp"
#include "gsteer/random.hpp"

namespace gsteer {

GaussianSuperchannel::GaussianSuperchannel(ModePartition partition, Matrix output_transfer,
                                           Matrix input_rotation, Matrix noise, Vector displacement)
    : partition_(partition),
      a_(std::move(output_transfer)),
      e_(std::move(input_rotation)),
      y_(std::move(noise)),
      nu_(std::move(displacement)) {
  const Index dim = partition_.dim();
  require_shape(a_, dim, dim, "A");
  require_shape(e_, dim, dim, "E");
  require_shape(y_, dim, dim, "Y");
  if (nu_.size() != dim) throw DimensionError("nu must have length " + std::to_string(dim));
  require_finite(a_, "A");
  require_finite(e_, "E");
  require_finite(y_, "Y");
  require_finite(nu_, "nu");
  require_symmetric(y_, "Y");
  y_ = symmetrized(y_);
}

GaussianSuperchannel GaussianSuperchannel::with_displacement(Vector displacement) const {
  return GaussianSuperchannel(partition_, a_, e_, y_, std::move(displacement));
}

SuperchannelValidity superchannel_validity(const GaussianSuperchannel& s, double tol) {
  const Index dim = s.partition().dim();
  const Matrix om = omega(s.partition().modes());
  const Matrix& a = s.output_transfer();
  const Matrix& e = s.input_rotation();
  SuperchannelValidity out;
  out.orthogonality_residual = (e * e.transpose() - Matrix::Identity(dim, dim)).cwiseAbs().rowwise().sum().maxCoeff();
  out.orthogonal = out.orthogonality_residual <= 1e-8;
  out.noise_condition = check_psd(s.noise().cast<Complex>() + times_i(om) - times_i(a * om * a.transpose()), tol);
  out.rotation_condition = check_psd(times_i(om) - times_i(e * om * e.transpose()), tol);
  return out;
}

bool is_valid_superchannel(const GaussianSuperchannel& s, double tol) {
  return superchannel_validity(s, tol).valid();
}

GaussianSuperchannel identity_superchannel(const ModePartition& p) {
  const Index dim = p.dim();
  return GaussianSuperchannel(p, Matrix::Identity(dim, dim), Matrix::Identity(dim, dim),
                              Matrix::Zero(dim, dim), Vector::Zero(dim));
}

namespace {

void require_valid(const GaussianSuperchannel& s, double tol) {
  const SuperchannelValidity v = superchannel_validity(s, tol);
  if (v.valid()) return;
  if (!v.orthogonal) {
    throw PreconditionError("superchannel E is not orthogonal (||E E^T - I|| = " +
                                std::to_string(v.orthogonality_residual) + ")",
                            -v.orthogonality_residual);
  }
  const PsdCheck& bad = v.noise_condition.psd ? v.rotation_condition : v.noise_condition;
  throw PreconditionError("superchannel positivity condition violated (min eigenvalue " +
                              std::to_string(bad.min_eigenvalue) + ")",
                          bad.min_eigenvalue);
}

Verdict psd_verdict(const PsdCheck& check) {
  Verdict v;
  v.value = check.min_eigenvalue;
  if (check.psd) {
    v.state = VerdictState::kHolds;
  } else {
    v.state = VerdictState::kViolated;
    v.witness = check.witness;
  }
  return v;
}

}  // namespace

GaussianChannel apply_to_channel(const GaussianSuperchannel& s, const GaussianChannel& c, double tol) {
  if (s.partition() != c.partition()) throw DimensionError("superchannel and channel partitions differ");
  require_valid(s, tol);
  const PsdCheck cp = cp_check(c, tol);
  if (!cp.psd) throw PreconditionError("input channel is not completely positive", cp.min_eigenvalue);
  const Matrix sg = sigma(s.partition().modes());
  const Matrix& a = s.output_transfer();
  Matrix k = a * c.transfer() * sg * s.input_rotation().transpose() * sg;
  Matrix m = symmetrized(a * c.noise() * a.transpose() + s.noise());
  Vector d = a * c.displacement() + s.displacement();
  return GaussianChannel(s.partition(), std::move(k), std::move(m), std::move(d));
}

Decomposition decompose(const GaussianSuperchannel& s, double tol) {
  require_valid(s, tol);
  const Index dim = s.partition().dim();
  const Matrix sg = sigma(s.partition().modes());
  return Decomposition{
      GaussianChannel(s.partition(), sg * s.input_rotation().transpose() * sg, Matrix::Zero(dim, dim)),
      GaussianChannel(s.partition(), s.output_transfer(), s.noise(), s.displacement())};
}

UsSufficientReport us_sufficient_check(const GaussianSuperchannel& s, double tol) {
  const Matrix oh = omega_hat(s.partition());
  const Matrix& a = s.output_transfer();
  const Matrix& e = s.input_rotation();
  UsSufficientReport out;
  out.noise_condition = check_psd(s.noise().cast<Complex>() + times_i(oh) - times_i(a * oh * a.transpose()), tol);
  out.form_residual = (oh - e * oh * e.transpose()).cwiseAbs().rowwise().sum().maxCoeff();
  const double e_norm = e.cwiseAbs().rowwise().sum().maxCoeff();
  out.form_preserved = out.form_residual <= 1e-9 * (1.0 + e_norm);
  return out;
}

bool us_sufficient(const GaussianSuperchannel& s, double tol) {
  require_valid(s, tol);
  return us_sufficient_check(s, tol).holds();
}

QuantifiedCondition mus_noise_condition(const GaussianSuperchannel& s) {
  const Matrix oh = omega_hat(s.partition());
  const Matrix& a = s.output_transfer();
  return QuantifiedCondition(s.noise(), {a * oh * a.transpose()}, oh);
}

QuantifiedCondition mus_rotation_condition(const GaussianSuperchannel& s) {
  const Index dim = s.partition().dim();
  const Matrix oh = omega_hat(s.partition());
  const Matrix sg = sigma(s.partition().modes());
  const Matrix pre = sg * s.input_rotation().transpose() * sg;
  return QuantifiedCondition(Matrix::Zero(dim, dim), {pre * oh * pre.transpose()}, oh);
}

Verdict combine_verdicts(const Verdict& first, const Verdict& second) {
  if (first.violated()) return first;
  if (second.violated()) return second;
  Verdict out;
  out.value = std::min(first.value, second.value);
  out.state = first.holds() && second.holds() ? VerdictState::kHolds : VerdictState::kUndecided;
  return out;
}

MusSufficientReport mus_sufficient_report(const GaussianSuperchannel& s, const SolverConfig& cfg, double tol) {
  require_valid(s, tol);
  MusSufficientReport out;
  out.noise = decide(mus_noise_condition(s), cfg);
  out.rotation = decide(mus_rotation_condition(s), cfg);
  out.combined = combine_verdicts(out.noise, out.rotation);
  return out;
}

Verdict mus_sufficient(const GaussianSuperchannel& s, const SolverConfig& cfg, double tol) {
  return mus_sufficient_report(s, cfg, tol).combined;
}

ChainReport chain_sufficient_report(const GaussianSuperchannel& s, const SolverConfig& cfg, ChainMode mode,
                                    double tol) {
  const Decomposition parts = decompose(s, tol);
  ChainReport out;
  if (mode == ChainMode::kUnsteerable) {
    out.pre = psd_verdict(unsteerable_check(parts.pre, tol));
    out.post = psd_verdict(unsteerable_check(parts.post, tol));
  } else {
    out.pre = decide(maximal_unsteerability_condition(parts.pre), cfg);
    out.post = decide(maximal_unsteerability_condition(parts.post), cfg);
  }
  out.combined = combine_verdicts(out.pre, out.post);
  return out;
}

Verdict chain_sufficient(const GaussianSuperchannel& s, const SolverConfig& cfg, ChainMode mode, double tol) {
  return chain_sufficient_report(s, cfg, mode, tol).combined;
}

GaussianSuperchannel random_superchannel(const ModePartition& p, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0x53555045ULL);
  const Index dim = p.dim();
  const int modes = p.modes();
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Matrix e;
  if (unit(rng) < 0.5 && p.m() > 0) {
    e = Matrix::Zero(dim, dim);
    const Index a = 2 * static_cast<Index>(p.m());
    e.topLeftCorner(a, a) = random_passive(rng, p.m());
    e.bottomRightCorner(dim - a, dim - a) = random_passive(rng, p.n());
  } else {
    e = random_passive(rng, modes);
  }

  Matrix a;
  Matrix y;
  if (unit(rng) < 0.5) {
    a = uniform_matrix(rng, dim, dim, -1.5, 1.5);
    const Matrix g = normal_matrix(rng, dim, dim);
    y = g * g.transpose();
  } else {
    a = (0.3 + 0.8 * unit(rng)) * random_symplectic(rng, modes, 0.8);
    const Matrix g = (0.3 * unit(rng)) * normal_matrix(rng, dim, dim);
    y = g * g.transpose();
  }
  y = symmetrized(y);
  const Matrix om = omega(modes);
  const double lam = min_eigenvalue(y.cast<Complex>() + times_i(om) - times_i(a * om * a.transpose()));
  y.diagonal().array() += std::max(0.0, -lam + 1e-3);
  Vector nu = normal_matrix(rng, dim, 1).col(0);
  return GaussianSuperchannel(p, std::move(a), std::move(e), std::move(y), std::move(nu));
}

}  // namespace gsteer
