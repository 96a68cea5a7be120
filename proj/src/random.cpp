#include "gsteer/random.hpp"

#include <cmath>

namespace gsteer {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix normal_matrix(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix out(rows, cols);
  // Column-major fill order is part of the determinism contract.
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) out(i, j) = dist(rng);
  return out;
}

Matrix uniform_matrix(Rng& rng, Index rows, Index cols, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) out(i, j) = dist(rng);
  return out;
}

Matrix random_orthogonal(Rng& rng, Index dim) {
  const Matrix g = normal_matrix(rng, dim, dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < dim; ++k) {
    if (r(k, k) < 0) q.col(k) *= -1.0;
  }
  return q;
}

Matrix random_passive(Rng& rng, int modes) {
  const Index n = modes;
  CMatrix z(n, n);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      const double re = dist(rng);
      const double im = dist(rng);
      z(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix u = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0) u.col(k) *= r(k, k) / mag;
  }
  // a' = U a with a = (q + i p)/sqrt(2) gives q' = X q - Y p, p' = Y q + X p.
  Matrix o(2 * n, 2 * n);
  for (Index k = 0; k < n; ++k)
    for (Index l = 0; l < n; ++l) {
      const double x = u(k, l).real();
      const double y = u(k, l).imag();
      o(2 * k, 2 * l) = x;
      o(2 * k, 2 * l + 1) = -y;
      o(2 * k + 1, 2 * l) = y;
      o(2 * k + 1, 2 * l + 1) = x;
    }
  return o;
}

Matrix random_symplectic(Rng& rng, int modes, double max_squeezing) {
  const Matrix left = random_passive(rng, modes);
  std::uniform_real_distribution<double> sq(0.0, max_squeezing);
  Vector diag(2 * modes);
  for (int k = 0; k < modes; ++k) {
    const double r = sq(rng);
    diag(2 * k) = std::exp(-r);
    diag(2 * k + 1) = std::exp(r);
  }
  const Matrix right = random_passive(rng, modes);
  return left * diag.asDiagonal() * right;
}

CVector random_unit_vector(Rng& rng, Index dim) {
  std::normal_distribution<double> dist(0.0, 1.0);
  CVector w(dim);
  for (Index i = 0; i < dim; ++i) {
    const double re = dist(rng);
    const double im = dist(rng);
    w(i) = Complex(re, im);
  }
  const double nrm = w.norm();
  if (nrm == 0.0) {
    w.setZero();
    w(0) = 1.0;
    return w;
  }
  return w / nrm;
}

}  // namespace gsteer
