#include "gsteer/symplectic.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "gsteer/errors.hpp"

namespace gsteer {

ModePartition::ModePartition(int m, int n) : m_(m), n_(n) {
  if (m < 0 || n < 1) {
    throw InvalidInputError("mode partition requires m >= 0 and n >= 1, got (" +
                            std::to_string(m) + ", " + std::to_string(n) + ")");
  }
}

ModePartition ModePartition::swapped() const {
  if (m_ < 1) throw InvalidInputError("cannot swap a partition with an empty A side");
  return ModePartition(n_, m_);
}

Matrix omega(int modes) {
  if (modes < 1) throw InvalidInputError("omega requires at least one mode");
  Matrix out = Matrix::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    out(2 * k, 2 * k + 1) = 1.0;
    out(2 * k + 1, 2 * k) = -1.0;
  }
  return out;
}

Matrix omega_hat(const ModePartition& p) {
  Matrix out = Matrix::Zero(p.dim(), p.dim());
  const Index a = 2 * static_cast<Index>(p.m());
  out.bottomRightCorner(p.dim() - a, p.dim() - a) = omega(p.n());
  return out;
}

Matrix sigma(int modes) {
  if (modes < 1) throw InvalidInputError("sigma requires at least one mode");
  Vector diag(2 * modes);
  for (int k = 0; k < modes; ++k) {
    diag(2 * k) = 1.0;
    diag(2 * k + 1) = -1.0;
  }
  return diag.asDiagonal();
}

CMatrix times_i(const Matrix& s) { return Complex(0.0, 1.0) * s.cast<Complex>(); }

double norm_inf(const CMatrix& h) {
  if (h.size() == 0) return 0.0;
  return h.cwiseAbs().rowwise().sum().maxCoeff();
}

namespace {

CMatrix hermitian_part(const CMatrix& h) {
  if (h.rows() != h.cols()) {
    throw DimensionError("expected a square matrix, got " + std::to_string(h.rows()) + "x" +
                         std::to_string(h.cols()));
  }
  if (!h.allFinite()) throw InvalidInputError("matrix has non-finite entries");
  const double asym = norm_inf(h - h.adjoint());
  if (asym > kHermitianTol * (1.0 + norm_inf(h))) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian (||H - H^dagger||_inf = " << asym << ")";
    throw InvalidInputError(msg.str());
  }
  return 0.5 * (h + h.adjoint());
}

}  // namespace

double min_eigenvalue(const CMatrix& h) {
  const CMatrix herm = hermitian_part(h);
  if (herm.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

PsdCheck check_psd(const CMatrix& h, double tol) {
  const CMatrix herm = hermitian_part(h);
  PsdCheck out;
  out.threshold = -tol * (1.0 + norm_inf(herm));
  if (herm.size() == 0) {
    out.psd = true;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
  out.min_eigenvalue = es.eigenvalues()(0);
  out.psd = out.min_eigenvalue >= out.threshold;
  if (!out.psd) out.witness = es.eigenvectors().col(0);
  return out;
}

SchurComplement schur_complement(const CMatrix& w, Index leading, bool allow_pseudo_inverse) {
  if (w.rows() != w.cols()) throw DimensionError("schur_complement expects a square matrix");
  if (leading < 0 || leading > w.rows()) {
    throw DimensionError("schur_complement split " + std::to_string(leading) +
                         " is outside [0, " + std::to_string(w.rows()) + "]");
  }
  const Index trailing = w.rows() - leading;
  const CMatrix w11 = w.topLeftCorner(leading, leading);
  const CMatrix w12 = w.topRightCorner(leading, trailing);
  const CMatrix w22 = w.bottomRightCorner(trailing, trailing);

  SchurComplement out;
  if (trailing == 0) {
    out.matrix = w11;
    return out;
  }
  Eigen::FullPivLU<CMatrix> lu(w22);
  lu.setThreshold(1e-12);
  if (lu.isInvertible()) {
    out.matrix = w11 - w12 * lu.solve(w12.adjoint());
    return out;
  }
  if (!allow_pseudo_inverse) {
    throw SingularityError("trailing block of the Schur complement is singular");
  }
  Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(w22);
  out.matrix = w11 - w12 * cod.pseudoInverse() * w12.adjoint();
  out.used_pseudo_inverse = true;
  return out;
}

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) throw InvalidInputError(std::string(what) + " has non-finite entries");
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw InvalidInputError(std::string(what) + " has non-finite entries");
}

void require_shape(const Matrix& a, Index rows, Index cols, const char* what) {
  if (a.rows() != rows || a.cols() != cols) {
    throw DimensionError(std::string(what) + " must be " + std::to_string(rows) + "x" +
                         std::to_string(cols) + ", got " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  }
}

void require_symmetric(const Matrix& a, const char* what) {
  const double scale = a.cwiseAbs().rowwise().sum().maxCoeff();
  const double asym = (a - a.transpose()).cwiseAbs().rowwise().sum().maxCoeff();
  if (asym > kSymmetryTol * scale) {
    throw InvalidInputError(std::string(what) + " is not symmetric");
  }
}

}  // namespace gsteer
