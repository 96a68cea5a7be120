#include "gsteer/quantifier.hpp"

#include <cmath>
#include <string>

#include "quantifier_kernels.hpp"

namespace gsteer {

namespace {

Matrix antisymmetrized(const Matrix& s, const char* what) {
  const double scale = s.cwiseAbs().rowwise().sum().maxCoeff();
  const double sym = (s + s.transpose()).cwiseAbs().rowwise().sum().maxCoeff();
  if (sym > 2.0 * kSymmetryTol * scale) {
    throw InvalidInputError(std::string(what) + " is not antisymmetric");
  }
  return 0.5 * (s - s.transpose());
}

constexpr int kPencilGrid = 21;

}  // namespace

QuantifiedCondition::QuantifiedCondition(Matrix hermitian_term, std::vector<Matrix> plus_terms,
                                         Matrix minus_term) {
  const Index dim = hermitian_term.rows();
  if (dim < 1) throw DimensionError("quantified condition needs a non-empty H");
  require_shape(hermitian_term, dim, dim, "H");
  require_shape(minus_term, dim, dim, "minus term");
  require_finite(hermitian_term, "H");
  require_finite(minus_term, "minus term");
  require_symmetric(hermitian_term, "H");
  h_ = symmetrized(hermitian_term);
  minus_ = antisymmetrized(minus_term, "minus term");
  plus_.reserve(plus_terms.size());
  for (const Matrix& s : plus_terms) {
    require_shape(s, dim, dim, "plus term");
    require_finite(s, "plus term");
    plus_.push_back(antisymmetrized(s, "plus term"));
  }
}

void SolverConfig::validate() const {
  if (starts < 1) throw InvalidInputError("solver needs starts >= 1");
  if (samples < 0) throw InvalidInputError("solver needs samples >= 0");
  if (max_iters < 1) throw InvalidInputError("solver needs max_iters >= 1");
  if (!(decision_margin > 0.0) || !std::isfinite(decision_margin)) {
    throw InvalidInputError("solver needs a finite decision_margin > 0");
  }
}

std::string_view to_string(VerdictState state) {
  switch (state) {
    case VerdictState::kHolds:
      return "HOLDS";
    case VerdictState::kViolated:
      return "VIOLATED";
    case VerdictState::kUndecided:
      return "UNDECIDED";
  }
  return "UNDECIDED";
}

double evaluate(const QuantifiedCondition& q, const CVector& w) {
  if (w.size() != q.dim()) {
    throw DimensionError("vector length " + std::to_string(w.size()) + " does not match condition dimension " +
                         std::to_string(q.dim()));
  }
  if (w.squaredNorm() == 0.0) throw InvalidInputError("cannot evaluate the gap at the zero vector");
  const detail::GapFunction f(q);
  return f.raw(w.real(), w.imag());
}

std::vector<CVector> structured_candidates(const QuantifiedCondition& q) {
  const Index dim = q.dim();
  std::vector<CVector> out;

  Matrix plus_sum = Matrix::Zero(dim, dim);
  for (const Matrix& s : q.plus_terms()) plus_sum += s;

  auto push_eigvecs = [&](const CMatrix& pencil) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(pencil);
    for (Index k = 0; k < dim; ++k) out.emplace_back(es.eigenvectors().col(k));
  };

  const CMatrix h = q.hermitian_term().cast<Complex>();
  for (double eta : {1.0, -1.0}) {
    const CMatrix base = h + eta * times_i(q.minus_term());
    if (q.plus_terms().empty()) {
      push_eigvecs(base);
      continue;
    }
    for (int j = 0; j < kPencilGrid; ++j) {
      const double t = -1.0 + 2.0 * j / (kPencilGrid - 1);
      push_eigvecs(base - t * times_i(plus_sum));
    }
    const std::size_t k = q.plus_terms().size();
    if (k >= 2 && k <= 4) {
      for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        Matrix combo = Matrix::Zero(dim, dim);
        for (std::size_t i = 0; i < k; ++i) combo += ((mask >> i) & 1U ? 1.0 : -1.0) * q.plus_terms()[i];
        push_eigvecs(base - times_i(combo));
      }
    }
  }

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Index mode = 0; 2 * mode + 1 < dim; ++mode) {
    for (double sign : {1.0, -1.0}) {
      CVector w = CVector::Zero(dim);
      w(2 * mode) = inv_sqrt2;
      w(2 * mode + 1) = Complex(0.0, sign * inv_sqrt2);
      out.push_back(std::move(w));
    }
  }
  return out;
}

Verdict decide(const QuantifiedCondition& q, const SolverConfig& cfg) {
  return detail::decide_impl<true>(q, cfg);
}

GridSweep grid_sweep(const QuantifiedCondition& q, std::size_t resolution) {
  return detail::grid_sweep_impl<true>(q, resolution);
}

std::optional<CVector> falsify_grid(const QuantifiedCondition& q, std::size_t resolution) {
  GridSweep sweep = grid_sweep(q, resolution);
  if (sweep.min_value < 0.0) return std::move(sweep.argmin);
  return std::nullopt;
}

}  // namespace gsteer
