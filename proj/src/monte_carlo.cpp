#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "gsteer/channels.hpp"
#include "gsteer/errors.hpp"
#include "gsteer/random.hpp"
#include "quantifier_kernels.hpp"

namespace gsteer {

namespace {

constexpr std::size_t kChunk = 256;

Matrix sample_input(const ModePartition& p, std::uint64_t seed, std::size_t index) {
  const std::uint64_t s = derive_seed(seed, index);
  switch (index % 3) {
    case 0:
      return random_state(p, s).cm();
    case 1:
      return random_pure_state(p, s, 1.0).cm();
    default:
      return random_pure_state(p, s, 3.0).cm();
  }
}

struct Trial {
  bool steerable = false;
  double min_eigenvalue = 0.0;
};

// Runs trials chunk by chunk and stops after the first chunk that holds a
// counterexample; the serial and parallel paths therefore evaluate exactly
// the same trials.
template <bool Parallel, class Body>
FalsifierResult run_trials(const ModePartition& input_partition, std::size_t trials, std::uint64_t seed,
                           Body&& body) {
  FalsifierResult out;
  out.worst_min_eigenvalue = std::numeric_limits<double>::infinity();
  std::vector<Trial> results(kChunk);
  std::vector<Matrix> inputs(kChunk);
  for (std::size_t start = 0; start < trials; start += kChunk) {
    const std::size_t count = std::min(kChunk, trials - start);
    detail::for_each_index<Parallel>(static_cast<std::ptrdiff_t>(count), [&](std::ptrdiff_t ii) {
      const auto i = static_cast<std::size_t>(ii);
      inputs[i] = sample_input(input_partition, seed, start + i);
      results[i] = body(inputs[i]);
    });
    out.trials_run = start + count;
    for (std::size_t i = 0; i < count; ++i) {
      out.worst_min_eigenvalue = std::min(out.worst_min_eigenvalue, results[i].min_eigenvalue);
      if (results[i].steerable && !out.counterexample) {
        out.counterexample = GaussianState(input_partition, inputs[i]);
        out.counterexample_index = start + i;
      }
    }
    if (out.counterexample) break;
  }
  if (trials == 0) out.worst_min_eigenvalue = 0.0;
  return out;
}

void require_cp(const GaussianChannel& c, double tol) {
  const PsdCheck cp = cp_check(c, tol);
  if (!cp.psd) {
    throw PreconditionError("completely positive condition violated (min eigenvalue " +
                                std::to_string(cp.min_eigenvalue) + ")",
                            cp.min_eigenvalue);
  }
}

template <bool Parallel>
FalsifierResult sa_oracle(const GaussianChannel& c, std::size_t trials, std::uint64_t seed, double tol) {
  require_cp(c, tol);
  const Matrix& k = c.transfer();
  const Matrix& m = c.noise();
  const CMatrix form = times_i(omega_hat(c.partition()));
  return run_trials<Parallel>(c.partition(), trials, seed, [&](const Matrix& cm) {
    const Matrix out = symmetrized(k * cm * k.transpose() + m);
    const PsdCheck check = check_psd(out.cast<Complex>() + form, tol);
    return Trial{!check.psd, check.min_eigenvalue};
  });
}

template <bool Parallel>
FalsifierResult sb_oracle(const GaussianChannel& c, std::size_t trials, std::uint64_t seed, double tol) {
  require_cp(c, tol);
  const int modes = c.partition().modes();
  const Index n = c.partition().dim();
  const ModePartition joint(modes, modes);
  Matrix k = Matrix::Identity(2 * n, 2 * n);
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  k.topLeftCorner(n, n) = c.transfer();
  m.topLeftCorner(n, n) = c.noise();
  const CMatrix form = times_i(omega_hat(joint));
  return run_trials<Parallel>(joint, trials, seed, [&](const Matrix& cm) {
    const Matrix out = symmetrized(k * cm * k.transpose() + m);
    const PsdCheck check = check_psd(out.cast<Complex>() + form, tol);
    return Trial{!check.psd, check.min_eigenvalue};
  });
}

}  // namespace

FalsifierResult monte_carlo_sa_oracle(const GaussianChannel& c, std::size_t trials, std::uint64_t seed,
                                      double tol) {
  return sa_oracle<true>(c, trials, seed, tol);
}

FalsifierResult monte_carlo_sb_oracle(const GaussianChannel& c, std::size_t trials, std::uint64_t seed,
                                      double tol) {
  return sb_oracle<true>(c, trials, seed, tol);
}

namespace serial {

FalsifierResult monte_carlo_sa_oracle(const GaussianChannel& c, std::size_t trials, std::uint64_t seed,
                                      double tol) {
  return sa_oracle<false>(c, trials, seed, tol);
}

FalsifierResult monte_carlo_sb_oracle(const GaussianChannel& c, std::size_t trials, std::uint64_t seed,
                                      double tol) {
  return sb_oracle<false>(c, trials, seed, tol);
}

}  // namespace serial

}  // namespace gsteer
