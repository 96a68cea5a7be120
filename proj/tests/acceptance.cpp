// Acceptance criteria 1-9: one PASS/FAIL line each, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gsteer/catalog.hpp"
#include "gsteer/random.hpp"
#include "support/oracles.hpp"

using namespace gsteer;

namespace {

constexpr double kTol = 1e-8;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [failed: " << what << "]";
    }
  }
};

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

CMatrix sandwich(const GaussianChannel& c, const Matrix& outer, const Matrix& inner) {
  const Matrix& k = c.transfer();
  return c.noise().cast<Complex>() + times_i(outer) - times_i(k * inner * k.transpose());
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
  return a.cwiseAbs().maxCoeff();
}

Outcome criterion1() {
  Outcome o;
  const GaussianChannel c = catalog::annihilating_not_breaking();
  const Matrix om = omega(2);
  const CMatrix cp = sandwich(c, om, om);
  const double cp_err = max_abs(cp - block_diag(rotation_block(1.0, 0.0609), rotation_block(1.0, -0.99)));
  o.require(cp_err <= 1e-12 && is_psd(cp, kTol), "CP matrix entries / PSD");
  const CMatrix sa = sandwich(c, omega_hat(c.partition()), om);
  const double sa_err = max_abs(sa - block_diag(rotation_block(1.0, 1.0609), rotation_block(1.0, -0.99)));
  const PsdCheck sa_check = check_psd(sa, kTol);
  o.require(sa_err <= 1e-12 && !sa_check.psd && std::abs(sa_check.min_eigenvalue + 0.0609) <= 1e-9,
            "sufficient-test matrix");
  const Verdict v = is_steering_annihilating(c, {}, kTol);
  o.require(v.holds(), "annihilation verdict");
  const FalsifierResult mc = monte_carlo_sa_oracle(c, 10000, 0, kTol);
  o.require(!mc.found(), "Monte-Carlo oracle");
  o.require(!is_steering_breaking(c, kTol), "not steering-breaking");
  o.detail << "CP err " << cp_err << ", sufficient-test min eig " << sa_check.min_eigenvalue << ", verdict "
           << to_string(v.state) << " gap " << v.value << ", MC worst " << mc.worst_min_eigenvalue;
  return o;
}

Outcome criterion2() {
  Outcome o;
  const GaussianChannel c = catalog::attenuator_on_a(0.5, 1.0);
  const Matrix om = omega(2);
  const CMatrix sa = sandwich(c, omega_hat(c.partition()), om);
  const double err = max_abs(sa - block_diag(rotation_block(0.75, 0.25), CMatrix::Zero(2, 2)));
  o.require(err <= 1e-12 && is_psd(sa, kTol), "sufficient-test matrix");
  const PsdCheck sb = steering_breaking_check(c, kTol);
  o.require(!sb.psd && std::abs(sb.min_eigenvalue + 1.0) <= 1e-9, "breaking matrix min eigenvalue");
  const ClassificationReport r = classify(c, {}, kTol);
  o.require(r.steering_annihilating.holds() && !r.steering_breaking.psd, "SA but not SB");
  o.detail << "matrix err " << err << ", breaking min eig " << sb.min_eigenvalue << ", annihilation "
           << to_string(r.steering_annihilating.state);
  return o;
}

Outcome criterion3() {
  Outcome o;
  const GaussianChannel steerable = catalog::constant_squeezed(2.0);
  const Verdict sa = is_steering_annihilating(steerable, {}, kTol);
  const Verdict mus = is_maximal_unsteerable(steerable, {}, kTol);
  o.require(is_steering_breaking(steerable, kTol), "steerable target: SB");
  o.require(sa.violated(), "steerable target: SA violated");
  o.require(mus.violated(), "steerable target: MUS violated");
  o.detail << "steerable target SA " << sa.value << " MUS " << mus.value;
  std::vector<GaussianState> targets{standard_two_mode({2.0, 2.0, 1.0, -1.0})};
  for (std::uint64_t seed = 0; seed < 5; ++seed) targets.push_back(random_unsteerable_state(ModePartition(1, 1), seed));
  for (const GaussianState& t : targets) {
    const GaussianChannel c = constant_channel(t);
    const Verdict a = is_steering_annihilating(c, {}, kTol);
    const Verdict m = is_maximal_unsteerable(c, {}, kTol);
    o.require(is_steering_breaking(c, kTol) && a.holds() && m.holds(), "unsteerable target verdicts");
  }
  o.detail << "; " << targets.size() << " unsteerable targets checked";
  return o;
}

Outcome criterion4() {
  Outcome o;
  const GaussianSuperchannel s = catalog::mus_not_us_superchannel();
  o.require(is_valid_superchannel(s, kTol), "valid");
  for (std::uint64_t seed : {1, 2, 3}) {
    SolverConfig cfg;
    cfg.seed = seed;
    const Verdict v = mus_sufficient(s, cfg, kTol);
    o.require(v.holds(), "MUS sufficient, seed " + std::to_string(seed));
  }
  const UsSufficientReport us = us_sufficient_check(s, kTol);
  o.require(!us.noise_condition.psd && us.noise_condition.min_eigenvalue < 0.0, "US condition fails");
  o.detail << "US condition min eigenvalue " << us.noise_condition.min_eigenvalue;
  return o;
}

Outcome criterion5() {
  Outcome o;
  int used = 0;
  int excluded = 0;
  double worst_schur = 0.0;
  int mc_found = 0;
  int not_breaking = 0;
  for (std::uint64_t seed = 0; used < 50; ++seed) {
    const GaussianChannel c = random_channel(ModePartition(0, 1), 5000 + seed);
    const PsdCheck sb = steering_breaking_check(c, kTol);
    if (std::abs(sb.min_eigenvalue) < 1e-5) {
      ++excluded;
      continue;
    }
    ++used;
    const GaussianState choi = choi_state(c, 8.0, kTol);
    const bool choi_unsteerable = unsteerability_check(choi, 1e-14).psd;
    const CMatrix w = choi.cm().cast<Complex>() + times_i(omega_hat(choi.partition()));
    const double schur = min_eigenvalue(schur_complement(w, 2).matrix);
    worst_schur = std::max(worst_schur, std::abs(schur - sb.min_eigenvalue));
    const FalsifierResult mc = monte_carlo_sb_oracle(c, 100, seed, kTol);
    o.require(choi_unsteerable == sb.psd, "Choi verdict, seed " + std::to_string(seed));
    o.require(std::abs(schur - sb.min_eigenvalue) <= 1e-3, "Schur evidence, seed " + std::to_string(seed));
    if (sb.psd) {
      o.require(!mc.found(), "falsifier contradicts SB, seed " + std::to_string(seed));
    } else {
      ++not_breaking;
      mc_found += mc.found();
      o.require(mc.found(), "falsifier missed non-SB channel, seed " + std::to_string(seed));
    }
  }
  o.detail << used << " channels (" << excluded << " boundary excluded), " << not_breaking
           << " not SB, falsifier found " << mc_found << ", max Schur deviation " << worst_schur;
  return o;
}

Outcome criterion6() {
  Outcome o;
  int holds = 0;
  int violated = 0;
  int undecided = 0;
  int mc_checked = 0;
  int grid_negative_misses = 0;
  double worst_escalated = -std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const GaussianChannel c = random_channel(ModePartition(1, 1), 6000 + seed);
    for (int which = 0; which < 2; ++which) {
      const QuantifiedCondition q =
          which == 0 ? steering_annihilation_condition(c) : maximal_unsteerability_condition(c);
      SolverConfig cfg;
      cfg.seed = seed;
      const Verdict v = decide(q, cfg);
      GridSweep grid = grid_sweep(q, 100000);
      holds += v.holds();
      violated += v.violated();
      undecided += v.undecided();
      if (v.holds()) {
        o.require(grid.min_value >= -cfg.decision_margin, "grid counterexample to HOLDS, seed " + std::to_string(seed));
      }
      if (v.violated()) {
        o.require(v.value <= grid.min_value + 1e-12, "grid below witness, seed " + std::to_string(seed));
        if (grid.min_value >= 0.0) {
          ++grid_negative_misses;
          for (std::size_t res = 1000000; res <= 10000000 && grid.min_value >= 0.0; res *= 10) {
            grid = grid_sweep(q, res);
          }
          worst_escalated = std::max(worst_escalated, grid.min_value);
        }
        o.require(grid.min_value < 0.0, "grid gap sign contradicts VIOLATED, seed " + std::to_string(seed));
      }
      if (which == 0 && std::abs(v.value) >= 1e-6 && !v.undecided()) {
        ++mc_checked;
        const FalsifierResult mc = monte_carlo_sa_oracle(c, 10000, seed, kTol);
        o.require(mc.found() == v.violated(), "Monte-Carlo disagreement, seed " + std::to_string(seed));
      }
    }
  }
  o.detail << "HOLDS " << holds << ", VIOLATED " << violated << ", UNDECIDED " << undecided << ", grid misses "
           << grid_negative_misses << " at 1e5 points";
  if (grid_negative_misses > 0) o.detail << " (worst refined grid minimum " << worst_escalated << ")";
  o.detail << ", MC comparisons " << mc_checked;
  return o;
}

Outcome criterion7() {
  Outcome o;
  int sa_suff = 0, us = 0, sa_holds = 0, sb = 0, sa_closure = 0, sa_not_mus = 0;
  std::uint64_t first_seed = 0;
  double first_gap_sa = 0.0, first_gap_mus = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const GaussianChannel c = random_channel(ModePartition(1, 1), 7000 + seed);
    SolverConfig cfg;
    cfg.seed = seed;
    const Verdict sa = is_steering_annihilating(c, cfg, kTol);
    const Verdict mus = is_maximal_unsteerable(c, cfg, kTol);
    if (sa_sufficient_check(c, kTol).psd) {
      ++sa_suff;
      o.require(!sa.violated(), "sufficient test => SA, seed " + std::to_string(seed));
    }
    if (unsteerable_check(c, kTol).psd) {
      ++us;
      o.require(!mus.violated(), "US => MUS, seed " + std::to_string(seed));
    }
    if (sa.holds()) {
      ++sa_holds;
      if (mus.violated()) {
        if (sa_not_mus == 0) {
          first_gap_sa = oracle::exact_sphere_minimum(steering_annihilation_condition(c));
          first_gap_mus = oracle::exact_sphere_minimum(maximal_unsteerability_condition(c));
          first_seed = seed;
        }
        ++sa_not_mus;
      }
    }
    const GaussianChannel other = random_channel(ModePartition(1, 1), 17000 + seed);
    if (steering_breaking_check(c, kTol).psd) {
      ++sb;
      o.require(is_steering_breaking(compose(c, other), kTol) && is_steering_breaking(compose(other, c), kTol),
                "SB closure, seed " + std::to_string(seed));
    }
    if (sa.holds() && seed % 4 == 0) {
      ++sa_closure;
      o.require(!is_steering_annihilating(compose(c, other), cfg, kTol).violated(),
                "SA pre-composition closure, seed " + std::to_string(seed));
    }
  }
  if (sa_not_mus > 0) {
    std::ostringstream what;
    what << "SA HOLDS but MUS VIOLATED on " << sa_not_mus << " of " << sa_holds << " channels; first seed "
         << first_seed << " exact SA gap " << first_gap_sa << ", exact MUS gap " << first_gap_mus;
    o.require(false, what.str());
  }
  o.detail << " sufficient " << sa_suff << ", US " << us << ", SA HOLDS " << sa_holds << ", SB " << sb
           << ", SA closures " << sa_closure;
  return o;
}

Outcome criterion8() {
  Outcome o;
  Rng rng = make_rng(8);
  int zero = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const ModePartition p(1 + trial % 2, 1 + (trial / 2) % 2);
    const Index dim = p.dim();
    const Index a = 2 * static_cast<Index>(p.m());
    Matrix e;
    if (trial % 3 == 0) {
      e = Matrix::Zero(dim, dim);
      e.topLeftCorner(a, a) = random_orthogonal(rng, a);
      e.bottomRightCorner(dim - a, dim - a) = random_passive(rng, p.n());
    } else {
      Eigen::HouseholderQR<Matrix> qr(normal_matrix(rng, dim, dim));
      e = qr.householderQ();
    }
    const Matrix oh = omega_hat(p);
    const CMatrix h = times_i(oh) - times_i(e * oh * e.transpose());
    const bool is_zero = max_abs(h) < 1e-10;
    zero += is_zero;
    o.require(is_psd(h) == is_zero, "trial " + std::to_string(trial));
  }
  o.detail << "200 orthogonal E, " << zero << " preserve the form";
  return o;
}

Outcome criterion9() {
  Outcome o;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const ModePartition p(1, 1 + static_cast<int>(seed % 2));
    const GaussianSuperchannel s = random_superchannel(p, 9000 + seed);
    const GaussianChannel c = random_channel(p, 19000 + seed);
    const GaussianChannel direct = apply_to_channel(s, c, kTol);
    const Decomposition parts = decompose(s, kTol);
    const GaussianChannel chained = compose(parts.post, compose(c, parts.pre));
    const double err = std::max({max_abs(direct.transfer() - chained.transfer()),
                                 max_abs(direct.noise() - chained.noise()),
                                 (direct.displacement() - chained.displacement()).cwiseAbs().maxCoeff()});
    worst = std::max(worst, err);
    o.require(err <= 1e-10, "decomposition mismatch, seed " + std::to_string(seed));
    o.require(is_valid_channel(direct, kTol), "output not CP, seed " + std::to_string(seed));
  }
  o.detail << "max deviation " << worst;
  return o;
}

}  // namespace

// Usage: gsteer_acceptance [--known-failures 7,...]
// Exit status is 0 when the failing criteria are exactly the listed ones.
int main(int argc, char** argv) {
  std::set<std::size_t> known;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) != "--known-failures") continue;
    std::stringstream list(argv[i + 1]);
    for (std::string item; std::getline(list, item, ',');) known.insert(std::strtoul(item.c_str(), nullptr, 10));
  }
  using Criterion = Outcome (*)();
  const std::vector<std::pair<const char*, Criterion>> criteria{
      {"reference annihilating channel", criterion1},
      {"attenuator with identity", criterion2},
      {"constant channels", criterion3},
      {"MUS-but-not-US superchannel", criterion4},
      {"Choi-state breaking equivalence", criterion5},
      {"solver vs grid and Monte-Carlo oracles", criterion6},
      {"implications and closures", criterion7},
      {"form-preservation equality", criterion8},
      {"superchannel algebra", criterion9},
  };
  int failures = 0;
  std::set<std::size_t> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = criteria[i].second();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu %s  %s: %s (%.1fs)\n", i + 1, o.passed ? "PASS" : "FAIL", criteria[i].first,
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
    if (!o.passed) {
      ++failures;
      failed.insert(i + 1);
    }
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  if (!known.empty()) {
    std::printf("known failures %s\n", failed == known ? "match" : "DO NOT match");
  }
  return failed == known ? 0 : 1;
}
