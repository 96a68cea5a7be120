#include "gsteer/repro.hpp"

#include <cmath>
#include <sstream>

#include "gsteer/catalog.hpp"
#include "gsteer/errors.hpp"

namespace gsteer::repro {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

CMatrix cp_matrix(const GaussianChannel& c) {
  const Matrix om = omega(c.partition().modes());
  const Matrix& k = c.transfer();
  return c.noise().cast<Complex>() + times_i(om) - times_i(k * om * k.transpose());
}

CMatrix sa_matrix(const GaussianChannel& c) {
  const Matrix om = omega(c.partition().modes());
  const Matrix& k = c.transfer();
  return c.noise().cast<Complex>() + times_i(omega_hat(c.partition())) - times_i(k * om * k.transpose());
}

// 2x2 block [[x, -i y], [i y, x]].
CMatrix rotation_block(double x, double y) {
  CMatrix b(2, 2);
  b << Complex(x, 0), Complex(0, -y), Complex(0, y), Complex(x, 0);
  return b;
}

CMatrix block_diag(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

std::string verdict_text(const Verdict& v) { return std::string(to_string(v.state)) + " (gap " + fmt(v.value) + ")"; }

void annihilating_rows(const Options& o, std::vector<Row>& rows) {
  const GaussianChannel c = catalog::annihilating_not_breaking();

  const CMatrix cp = cp_matrix(c);
  const CMatrix cp_expected = block_diag(rotation_block(1.0, 0.0609), rotation_block(1.0, -0.99));
  const double cp_err = max_abs_diff(cp, cp_expected);
  const PsdCheck cp_check_result = check_psd(cp, o.tol);
  rows.push_back({"annihilating.cp_matrix", "CP matrix has entries -+0.0609i, +-0.99i and is PSD",
                  cp_err <= 1e-12 && cp_check_result.psd,
                  "max entry error " + fmt(cp_err) + ", min eigenvalue " + fmt(cp_check_result.min_eigenvalue)});

  const CMatrix sa = sa_matrix(c);
  const CMatrix sa_expected = block_diag(rotation_block(1.0, 1.0609), rotation_block(1.0, -0.99));
  const double sa_err = max_abs_diff(sa, sa_expected);
  const PsdCheck sa_check_result = check_psd(sa, o.tol);
  rows.push_back({"annihilating.sa_sufficient", "PSD sufficient test fails with min eigenvalue -0.0609",
                  sa_err <= 1e-12 && !sa_check_result.psd &&
                      std::abs(sa_check_result.min_eigenvalue + 0.0609) <= 1e-9,
                  "max entry error " + fmt(sa_err) + ", min eigenvalue " + fmt(sa_check_result.min_eigenvalue)});

  const Verdict sa_verdict = is_steering_annihilating(c, o.solver, o.tol);
  rows.push_back({"annihilating.verdict", "steering-annihilating verdict is HOLDS", sa_verdict.holds(),
                  verdict_text(sa_verdict)});

  const FalsifierResult mc = monte_carlo_sa_oracle(c, o.monte_carlo_trials, o.solver.seed, o.tol);
  rows.push_back({"annihilating.monte_carlo", "no steerable output over random input states", !mc.found(),
                  std::to_string(mc.trials_run) + " trials, worst output min eigenvalue " +
                      fmt(mc.worst_min_eigenvalue)});

  const PsdCheck sb = steering_breaking_check(c, o.tol);
  rows.push_back({"annihilating.not_breaking", "not steering-breaking", !sb.psd,
                  "min eigenvalue " + fmt(sb.min_eigenvalue)});
}

void attenuator_rows(const Options& o, std::vector<Row>& rows) {
  const double cos_theta = 0.5;
  const GaussianChannel c = catalog::attenuator_on_a(cos_theta, 1.0);
  const double c2 = cos_theta * cos_theta;
  const double s2 = 1.0 - c2;

  const CMatrix sa = sa_matrix(c);
  const CMatrix expected = block_diag(rotation_block(s2, c2), CMatrix::Zero(2, 2));
  const double err = max_abs_diff(sa, expected);
  const PsdCheck sa_check_result = check_psd(sa, o.tol);
  rows.push_back({"attenuator.sa_sufficient", "PSD sufficient test matrix has the sin^2/cos^2 block form and is PSD",
                  err <= 1e-12 && sa_check_result.psd,
                  "max entry error " + fmt(err) + ", min eigenvalue " + fmt(sa_check_result.min_eigenvalue)});

  const PsdCheck sb = steering_breaking_check(c, o.tol);
  rows.push_back({"attenuator.sb_matrix", "M - iK Omega K^T has min eigenvalue -1",
                  !sb.psd && std::abs(sb.min_eigenvalue + 1.0) <= 1e-9, "min eigenvalue " + fmt(sb.min_eigenvalue)});

  const ClassificationReport r = classify(c, o.solver, o.tol);
  rows.push_back({"attenuator.classification", "steering-annihilating but not steering-breaking",
                  r.steering_annihilating.holds() && !r.steering_breaking.psd,
                  "annihilating " + verdict_text(r.steering_annihilating) + ", breaking " +
                      (r.steering_breaking.psd ? "true" : "false")});
}

void constant_rows(const Options& o, std::vector<Row>& rows) {
  const GaussianChannel steerable = catalog::constant_squeezed(2.0);
  const bool sb = is_steering_breaking(steerable, o.tol);
  const Verdict sa = is_steering_annihilating(steerable, o.solver, o.tol);
  const Verdict mus = is_maximal_unsteerable(steerable, o.solver, o.tol);
  rows.push_back({"constant.steerable_target", "constant channel onto a steerable state: SB, not SA, not MUS",
                  sb && sa.violated() && mus.violated(),
                  std::string("breaking ") + (sb ? "true" : "false") + ", annihilating " + verdict_text(sa) +
                      ", maximal unsteerable " + verdict_text(mus)});

  const GaussianChannel unsteerable = constant_channel(standard_two_mode({2.0, 2.0, 1.0, -1.0}));
  const bool sb2 = is_steering_breaking(unsteerable, o.tol);
  const Verdict sa2 = is_steering_annihilating(unsteerable, o.solver, o.tol);
  const Verdict mus2 = is_maximal_unsteerable(unsteerable, o.solver, o.tol);
  rows.push_back({"constant.unsteerable_target", "constant channel onto an unsteerable state: SB, SA and MUS",
                  sb2 && sa2.holds() && mus2.holds(),
                  std::string("breaking ") + (sb2 ? "true" : "false") + ", annihilating " + verdict_text(sa2) +
                      ", maximal unsteerable " + verdict_text(mus2)});
}

void superchannel_rows(const Options& o, std::vector<Row>& rows) {
  const GaussianSuperchannel s = catalog::mus_not_us_superchannel();
  const SuperchannelValidity v = superchannel_validity(s, o.tol);
  rows.push_back({"superchannel.valid", "superchannel is valid", v.valid(),
                  "noise condition min eigenvalue " + fmt(v.noise_condition.min_eigenvalue)});

  bool all_hold = true;
  std::string evidence;
  for (std::uint64_t seed : {1, 2, 3}) {
    SolverConfig cfg = o.solver;
    cfg.seed = seed;
    const Verdict m = mus_sufficient(s, cfg, o.tol);
    all_hold = all_hold && m.holds();
    evidence += (evidence.empty() ? "" : "; ") + std::string("seed ") + std::to_string(seed) + ": " + verdict_text(m);
  }
  rows.push_back({"superchannel.mus_sufficient", "maximal-unsteerable sufficient conditions hold (seeds 1, 2, 3)",
                  all_hold, evidence});

  const UsSufficientReport us = us_sufficient_check(s, o.tol);
  rows.push_back({"superchannel.us_sufficient", "unsteerable sufficient condition fails (negative min eigenvalue)",
                  !us.holds() && us.noise_condition.min_eigenvalue < 0.0,
                  "min eigenvalue " + fmt(us.noise_condition.min_eigenvalue)});

  const ChainReport chain = chain_sufficient_report(s, o.solver, ChainMode::kUnsteerable, o.tol);
  rows.push_back({"superchannel.chain_us", "unsteerable chain check fails on the post-processing channel",
                  chain.combined.violated() && chain.post.violated() && chain.pre.holds(),
                  "pre " + verdict_text(chain.pre) + ", post " + verdict_text(chain.post)});
}

void choi_rows(const Options& o, std::vector<Row>& rows) {
  const double r = 8.0;
  for (const auto& [id, c] : {std::pair<std::string, GaussianChannel>{"choi.limit_annihilating",
                                                                      catalog::annihilating_not_breaking()},
                              std::pair<std::string, GaussianChannel>{"choi.limit_attenuator",
                                                                      catalog::attenuator_on_a(0.5, 1.0)}}) {
    const GaussianState choi = choi_state(c, r, o.tol);
    const Index n = c.partition().dim();
    CMatrix w = choi.cm().cast<Complex>() + times_i(omega_hat(choi.partition()));
    const SchurComplement schur = schur_complement(w, n);
    const double lam_schur = min_eigenvalue(schur.matrix);
    const double lam_sb = steering_breaking_check(c, o.tol).min_eigenvalue;
    const double diff = std::abs(lam_schur - lam_sb);
    rows.push_back({id, "Choi-state Schur complement at r = 8 matches M - iK Omega K^T", diff <= 1e-3,
                    "Schur min eigenvalue " + fmt(lam_schur) + ", direct " + fmt(lam_sb)});
  }
}

}  // namespace

std::vector<Row> run(const Options& options) {
  options.solver.validate();
  std::vector<Row> rows;
  annihilating_rows(options, rows);
  attenuator_rows(options, rows);
  constant_rows(options, rows);
  superchannel_rows(options, rows);
  choi_rows(options, rows);
  return rows;
}

}  // namespace gsteer::repro
