#pragma once

// Reference constructions for the tests. Everything here is built from
// explicit index loops over kets and bras, never through the library's own
// helpers, so a shared bug cannot hide on both sides of a comparison.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "schmidt_forge/tensor_core.hpp"

namespace oracle {

using schmidt_forge::BipartiteOperator;
using schmidt_forge::Complex;
using schmidt_forge::Matrix;
using schmidt_forge::PureState;
using schmidt_forge::Vector;

inline Eigen::Index idx(int d, int i, int j) { return static_cast<Eigen::Index>(i) * d + j; }

/// |i,j> with 0-based labels.
inline Vector ket(int d, int i, int j) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  v(idx(d, i, j)) = 1.0;
  return v;
}

/// Partial transpose straight from <i,j|X^G|k,l> = <i,l|X|k,j>.
inline Matrix partial_transpose(const Matrix& m, int d) {
  Matrix out(m.rows(), m.cols());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) out(idx(d, i, j), idx(d, k, l)) = m(idx(d, i, l), idx(d, k, j));
  return out;
}

/// sum_ij |j,i><i,j| as a sum of dyads.
inline Matrix swap(int d) {
  Matrix v = Matrix::Zero(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v += ket(d, j, i) * ket(d, i, j).adjoint();
  return v;
}

inline Matrix identity(int d) {
  return Matrix::Identity(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
}

/// sum_k |k,k> / sqrt d
inline Vector max_entangled(int d) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int k = 0; k < d; ++k) v += ket(d, k, k);
  return v / std::sqrt(static_cast<double>(d));
}

/// sum_{k} c_k (|2k,2k+1> - |2k+1,2k>), 0-based levels.
inline Vector antisym_pairs(int d, const std::vector<double>& c) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (std::size_t k = 0; k < c.size(); ++k) {
    const int a = 2 * static_cast<int>(k);
    v += c[k] * (ket(d, a, a + 1) - ket(d, a + 1, a));
  }
  return v;
}

/// p |psi_0A><psi_0A| + (1-p) P_S / d_S written out from the definitions.
inline Matrix sigma_0(int d, double p) {
  const Vector psi = antisym_pairs(d, std::vector<double>(d / 2, 1.0 / std::sqrt(double(d))));
  const Matrix ps = (identity(d) + swap(d)) / 2.0;
  return p * psi * psi.adjoint() + (1.0 - p) * ps / (d * (d + 1) / 2.0);
}

/// A (x) B
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

inline Matrix gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = Complex(g(rng), g(rng));
  return m;
}

inline Matrix random_unitary(int n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(n, n, rng));
  return qr.householderQ() * Matrix::Identity(n, n);
}

/// Hermitian with entries in [-1, 1] (real and imaginary parts).
inline Matrix random_hermitian(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    m(r, r) = u(rng);
    for (int c = r + 1; c < n; ++c) {
      m(r, c) = Complex(u(rng), u(rng));
      m(c, r) = std::conj(m(r, c));
    }
  }
  return m;
}

inline Matrix random_psd(int n, std::mt19937_64& rng) {
  const Matrix g = gaussian(n, n, rng);
  return g * g.adjoint();
}

/// Unit-trace density matrix on d x d.
inline BipartiteOperator random_density(int d, std::mt19937_64& rng) {
  Matrix m = random_psd(d * d, rng);
  m /= m.trace().real();
  return {d, m};
}

inline Vector random_vector(int n, std::mt19937_64& rng) {
  Vector v = gaussian(n, 1, rng).col(0);
  return v / v.norm();
}

/// Random pure state with Schmidt rank exactly r (generic).
inline PureState random_rank_state(int d, int r, std::mt19937_64& rng) {
  const Matrix a = gaussian(d, r, rng) * gaussian(r, d, rng);
  Vector v(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v(idx(d, i, j)) = a(i, j);
  return PureState::normalized(d, v);
}

/// Normalized antisymmetric state with prescribed Schmidt rank 2m (m pairs),
/// rotated by a random local unitary.
inline PureState random_antisym_rank(int d, int pairs, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.2, 1.0);
  std::vector<double> c(static_cast<std::size_t>(pairs));
  for (auto& x : c) x = u(rng);
  Vector v = antisym_pairs(d, c);
  const Matrix w = random_unitary(d, rng);
  v = kron(w, w) * v;
  return PureState::normalized(d, v);
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

/// Eigenvalues of a Hermitian matrix, ascending.
inline Eigen::VectorXd eigenvalues(const Matrix& m) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

/// Numerical rank from singular values above tol * largest.
inline int rank(const Matrix& m, double tol = 1e-9) {
  const Eigen::VectorXd s = Eigen::JacobiSVD<Matrix>(m).singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) r += s(k) > tol * s(0) ? 1 : 0;
  return r;
}

/// Amplitude matrix of a d^2 vector, A(i, j) = <i,j|v>.
inline Matrix amplitudes(const Vector& v, int d) {
  Matrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = v(idx(d, i, j));
  return a;
}

}  // namespace oracle
