#pragma once

// Dense real/complex matrix helpers for the covariance-matrix calculus.
//
// Mode ordering is fixed to (q1, p1, q2, p2, ..., qN, pN) throughout the
// library: an N-mode object is described by 2N x 2N matrices whose k-th
// 2 x 2 diagonal block belongs to mode k.

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace gsteer {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kDefaultPsdTol = 1e-9;
inline constexpr double kHermitianTol = 1e-8;
inline constexpr double kSymmetryTol = 1e-8;

/// (m, n) bipartition of an N = m + n mode system. Subsystem A holds the
/// first m modes, subsystem B the last n.
class ModePartition {
 public:
  /// Throws InvalidInputError unless m >= 0 and n >= 1.
  ModePartition(int m, int n);

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }
  int modes() const noexcept { return m_ + n_; }
  /// Side length 2N of every matrix built on this partition.
  Index dim() const noexcept { return 2 * static_cast<Index>(m_ + n_); }

  /// Same modes with the roles of A and B exchanged; requires m >= 1.
  ModePartition swapped() const;

  friend bool operator==(const ModePartition&, const ModePartition&) = default;

 private:
  int m_;
  int n_;
};

/// Symplectic form: N copies of [[0, 1], [-1, 0]] on the diagonal.
Matrix omega(int modes);

/// Partial symplectic form 0_{2m} (+) omega(n).
Matrix omega_hat(const ModePartition& p);

/// diag(1, -1, 1, -1, ...) on 2N coordinates.
Matrix sigma(int modes);

/// i * S for a real matrix S.
CMatrix times_i(const Matrix& s);

/// Infinity norm (max absolute row sum).
double norm_inf(const CMatrix& h);

/// Smallest eigenvalue of the Hermitian part (H + H^dagger) / 2.
///
/// Throws DimensionError for non-square input and InvalidInputError when
/// ||H - H^dagger||_inf exceeds 1e-8 * ||H||_inf.
double min_eigenvalue(const CMatrix& h);

/// Outcome of a positive-semidefiniteness test.
struct PsdCheck {
  bool psd = false;
  double min_eigenvalue = 0.0;
  /// Acceptance threshold actually used: -tol * (1 + ||H||_inf).
  double threshold = 0.0;
  /// Unit eigenvector of the smallest eigenvalue; set only when !psd.
  CVector witness;

  explicit operator bool() const noexcept { return psd; }
};

/// H >= 0 up to the relative tolerance tol * (1 + ||H||_inf).
PsdCheck check_psd(const CMatrix& h, double tol = kDefaultPsdTol);

inline bool is_psd(const CMatrix& h, double tol = kDefaultPsdTol) {
  return check_psd(h, tol).psd;
}

struct SchurComplement {
  CMatrix matrix;
  bool used_pseudo_inverse = false;
};

/// W11 - W12 W22^{-1} W12^dagger for the split W = [[W11, W12], [W12^dagger, W22]]
/// where W11 is leading x leading.
///
/// A singular W22 raises SingularityError unless allow_pseudo_inverse is set,
/// in which case the Moore-Penrose inverse is used and flagged in the result.
SchurComplement schur_complement(const CMatrix& w, Index leading,
                                 bool allow_pseudo_inverse = false);

/// Throws InvalidInputError if any entry is NaN or infinite.
void require_finite(const Matrix& a, const char* what);
void require_finite(const Vector& v, const char* what);

/// Throws DimensionError unless a is rows x cols.
void require_shape(const Matrix& a, Index rows, Index cols, const char* what);

/// Throws InvalidInputError unless a is symmetric to 1e-8 relative.
void require_symmetric(const Matrix& a, const char* what);

/// Symmetric part (A + A^T) / 2.
inline Matrix symmetrized(const Matrix& a) { return 0.5 * (a + a.transpose()); }

}  // namespace gsteer
