#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "schmidt_forge/errors.hpp"

namespace schmidt_forge {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Numerical thresholds shared by the eigenvalue and PSD checks.
struct Tolerances {
  double hermitian = 1e-10;  // max |M - M^dagger| accepted as Hermitian
  double psd = 1e-9;         // min eigenvalue >= -psd counts as PSD
};

/// Storage index of the basis ket |i,j> of a d x d system.
///
/// Indices i and j are 1-based, as in the usual |i,j> notation; the ket is
/// stored at the 0-based position (i-1)*d + (j-1). The first factor is the
/// slow index.
std::size_t basis_index(int d, int i, int j);

/// Dense operator on C^d (x) C^d, stored as a d^2 x d^2 matrix.
class BipartiteOperator {
 public:
  BipartiteOperator(int local_dim, Matrix entries);

  static BipartiteOperator zero(int local_dim);
  static BipartiteOperator identity(int local_dim);
  /// |i,j><k,l| with 1-based indices.
  static BipartiteOperator dyad(int local_dim, int i, int j, int k, int l);

  int local_dim() const noexcept { return local_dim_; }
  std::size_t total_dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const Matrix& matrix() const noexcept { return entries_; }

  /// Entry <i,j| op |k,l>, 1-based.
  Complex element(int i, int j, int k, int l) const;

  /// max_{rc} |M_rc - conj(M_cr)|
  double hermitian_deviation() const;
  bool is_hermitian(double tol = Tolerances{}.hermitian) const;
  Complex trace() const { return entries_.trace(); }

  BipartiteOperator adjoint() const;

  friend BipartiteOperator operator+(const BipartiteOperator& a, const BipartiteOperator& b);
  friend BipartiteOperator operator-(const BipartiteOperator& a, const BipartiteOperator& b);
  friend BipartiteOperator operator*(const BipartiteOperator& a, const BipartiteOperator& b);
  friend BipartiteOperator operator*(Complex s, const BipartiteOperator& a);

 private:
  int local_dim_;
  Matrix entries_;
};

/// Vector in C^d (x) C^d. Amplitude (i,j) sits at basis_index(d, i, j).
class PureState {
 public:
  PureState(int local_dim, Vector amplitudes);

  /// Rescales `amplitudes` to unit norm; throws on the zero vector.
  static PureState normalized(int local_dim, Vector amplitudes);
  /// |i,j>, 1-based.
  static PureState basis(int local_dim, int i, int j);

  int local_dim() const noexcept { return local_dim_; }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  double norm() const { return amplitudes_.norm(); }

  /// d x d matrix A with A(i-1, j-1) = <i,j|state>.
  Matrix amplitude_matrix() const;
  static PureState from_amplitude_matrix(const Matrix& a);

  /// |state><state|
  BipartiteOperator projector() const;

 private:
  int local_dim_;
  Vector amplitudes_;
};

Vector apply(const BipartiteOperator& op, const PureState& state);

/// Row-major flattening of a d x d amplitude matrix (no normalization).
Vector flatten_amplitudes(const Matrix& a);

/// Eigenpairs of a Hermitian operator, eigenvalues ascending.
struct SpectrumResult {
  RealVector eigenvalues;
  Matrix eigenvectors;  // column k pairs with eigenvalues[k]
  double residual = 0;  // max_k |M v_k - lambda_k v_k|
};

/// Transpose on the second tensor factor: <i,l|op^G|k,j> = <i,j|op|k,l>.
BipartiteOperator partial_transpose(const BipartiteOperator& op);

/// (I + V) / 2, of trace d(d+1)/2.
BipartiteOperator symmetric_projector(int d);
/// (I - V) / 2, of trace d(d-1)/2.
BipartiteOperator antisymmetric_projector(int d);
/// V = sum_{ij} |j,i><i,j|.
BipartiteOperator swap_operator(int d);

int symmetric_dim(int d);
int antisymmetric_dim(int d);

SpectrumResult hermitian_eig(const BipartiteOperator& op, const Tolerances& tol = {});
double min_eigenvalue(const BipartiteOperator& op, const Tolerances& tol = {});

/// min_eigenvalue(op^G) >= -tol.psd
bool is_ppt(const BipartiteOperator& state, const Tolerances& tol = {});

/// (W (x) W) op (W (x) W)^dagger for a d x d matrix W.
BipartiteOperator local_conjugate(const BipartiteOperator& op, const Matrix& w);
/// (W (x) W) |state>
PureState apply_local(const PureState& state, const Matrix& w);

/// Embeds op into the larger space of local dimension `target_dim`; the
/// added basis vectors carry zero weight.
BipartiteOperator embed(const BipartiteOperator& op, int target_dim);

/// max_{rc} |a_rc - b_rc|
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace schmidt_forge
