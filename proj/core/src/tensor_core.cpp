#include "schmidt_forge/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

namespace schmidt_forge {
namespace {

void require_dim(int d, int min_dim, const char* what) {
  if (d < min_dim) {
    std::ostringstream msg;
    msg << what << ": local dimension must be >= " << min_dim << ", got " << d;
    throw DomainError(msg.str());
  }
}

Eigen::Index idx(int d, int i, int j) {
  return static_cast<Eigen::Index>(basis_index(d, i, j));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

}  // namespace

std::size_t basis_index(int d, int i, int j) {
  if (i < 1 || i > d || j < 1 || j > d) {
    std::ostringstream msg;
    msg << "basis ket |" << i << "," << j << "> out of range for d=" << d;
    throw DomainError(msg.str());
  }
  return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(d) +
         static_cast<std::size_t>(j - 1);
}

// ---------------------------------------------------------------------------
// BipartiteOperator

BipartiteOperator::BipartiteOperator(int local_dim, Matrix entries)
    : local_dim_(local_dim), entries_(std::move(entries)) {
  if (local_dim_ < 1) {
    throw StructuralError("BipartiteOperator: local dimension must be positive");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(local_dim_) * local_dim_;
  if (entries_.rows() != n || entries_.cols() != n) {
    std::ostringstream msg;
    msg << "BipartiteOperator: expected " << n << "x" << n << " matrix for d=" << local_dim_
        << ", got " << entries_.rows() << "x" << entries_.cols();
    throw StructuralError(msg.str());
  }
}

BipartiteOperator BipartiteOperator::zero(int local_dim) {
  const Eigen::Index n = static_cast<Eigen::Index>(local_dim) * local_dim;
  return {local_dim, Matrix::Zero(n, n)};
}

BipartiteOperator BipartiteOperator::identity(int local_dim) {
  const Eigen::Index n = static_cast<Eigen::Index>(local_dim) * local_dim;
  return {local_dim, Matrix::Identity(n, n)};
}

BipartiteOperator BipartiteOperator::dyad(int local_dim, int i, int j, int k, int l) {
  auto out = zero(local_dim);
  out.entries_(idx(local_dim, i, j), idx(local_dim, k, l)) = 1.0;
  return out;
}

Complex BipartiteOperator::element(int i, int j, int k, int l) const {
  return entries_(idx(local_dim_, i, j), idx(local_dim_, k, l));
}

double BipartiteOperator::hermitian_deviation() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

bool BipartiteOperator::is_hermitian(double tol) const { return hermitian_deviation() <= tol; }

BipartiteOperator BipartiteOperator::adjoint() const {
  return {local_dim_, entries_.adjoint()};
}

namespace {
void require_same_dim(const BipartiteOperator& a, const BipartiteOperator& b) {
  if (a.local_dim() != b.local_dim()) {
    throw StructuralError("operator local dimensions differ");
  }
}
}  // namespace

BipartiteOperator operator+(const BipartiteOperator& a, const BipartiteOperator& b) {
  require_same_dim(a, b);
  return {a.local_dim_, a.entries_ + b.entries_};
}

BipartiteOperator operator-(const BipartiteOperator& a, const BipartiteOperator& b) {
  require_same_dim(a, b);
  return {a.local_dim_, a.entries_ - b.entries_};
}

BipartiteOperator operator*(const BipartiteOperator& a, const BipartiteOperator& b) {
  require_same_dim(a, b);
  return {a.local_dim_, a.entries_ * b.entries_};
}

BipartiteOperator operator*(Complex s, const BipartiteOperator& a) {
  return {a.local_dim_, s * a.entries_};
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(int local_dim, Vector amplitudes)
    : local_dim_(local_dim), amplitudes_(std::move(amplitudes)) {
  if (local_dim_ < 1) {
    throw StructuralError("PureState: local dimension must be positive");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(local_dim_) * local_dim_;
  if (amplitudes_.size() != n) {
    std::ostringstream msg;
    msg << "PureState: expected " << n << " amplitudes for d=" << local_dim_ << ", got "
        << amplitudes_.size();
    throw StructuralError(msg.str());
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "PureState: amplitudes must have unit norm, got " << norm;
    throw DomainError(msg.str(), norm);
  }
  amplitudes_ /= norm;
}

PureState PureState::normalized(int local_dim, Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DomainError("PureState: cannot normalize a zero or non-finite vector", norm);
  }
  amplitudes /= norm;
  return {local_dim, std::move(amplitudes)};
}

PureState PureState::basis(int local_dim, int i, int j) {
  const Eigen::Index n = static_cast<Eigen::Index>(local_dim) * local_dim;
  Vector v = Vector::Zero(n);
  v(idx(local_dim, i, j)) = 1.0;
  return {local_dim, std::move(v)};
}

Matrix PureState::amplitude_matrix() const {
  const int d = local_dim_;
  Matrix a(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      a(r, c) = amplitudes_(static_cast<Eigen::Index>(r) * d + c);
    }
  }
  return a;
}

Vector flatten_amplitudes(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw StructuralError("amplitude matrix must be square");
  }
  const Eigen::Index d = a.rows();
  Vector v(d * d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) v(r * d + c) = a(r, c);
  }
  return v;
}

PureState PureState::from_amplitude_matrix(const Matrix& a) {
  return {static_cast<int>(a.rows()), flatten_amplitudes(a)};
}

BipartiteOperator PureState::projector() const {
  return {local_dim_, amplitudes_ * amplitudes_.adjoint()};
}

Vector apply(const BipartiteOperator& op, const PureState& state) {
  if (op.local_dim() != state.local_dim()) {
    throw StructuralError("apply: operator and state dimensions differ");
  }
  return op.matrix() * state.amplitudes();
}

// ---------------------------------------------------------------------------
// Operators

BipartiteOperator partial_transpose(const BipartiteOperator& op) {
  const int d = op.local_dim();
  const Matrix& m = op.matrix();
  Matrix out(m.rows(), m.cols());
  // <i,l|out|k,j> = <i,j|m|k,l>
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Eigen::Index row = static_cast<Eigen::Index>(i) * d + j;
      for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
          const Eigen::Index col = static_cast<Eigen::Index>(k) * d + l;
          out(static_cast<Eigen::Index>(i) * d + l, static_cast<Eigen::Index>(k) * d + j) =
              m(row, col);
        }
      }
    }
  }
  return {d, std::move(out)};
}

int symmetric_dim(int d) { return d * (d + 1) / 2; }
int antisymmetric_dim(int d) { return d * (d - 1) / 2; }

BipartiteOperator swap_operator(int d) {
  require_dim(d, 2, "swap_operator");
  auto v = BipartiteOperator::zero(d);
  Matrix m = v.matrix();
  for (int i = 1; i <= d; ++i) {
    for (int j = 1; j <= d; ++j) {
      m(idx(d, j, i), idx(d, i, j)) = 1.0;
    }
  }
  return {d, std::move(m)};
}

BipartiteOperator symmetric_projector(int d) {
  require_dim(d, 2, "symmetric_projector");
  const auto n = static_cast<Eigen::Index>(d) * d;
  return {d, 0.5 * (Matrix::Identity(n, n) + swap_operator(d).matrix())};
}

BipartiteOperator antisymmetric_projector(int d) {
  require_dim(d, 2, "antisymmetric_projector");
  const auto n = static_cast<Eigen::Index>(d) * d;
  return {d, 0.5 * (Matrix::Identity(n, n) - swap_operator(d).matrix())};
}

// ---------------------------------------------------------------------------
// Spectra

SpectrumResult hermitian_eig(const BipartiteOperator& op, const Tolerances& tol) {
  const double asym = op.hermitian_deviation();
  if (asym > tol.hermitian) {
    std::ostringstream msg;
    msg << "hermitian_eig: operator is not Hermitian (max |M - M^dagger| = " << asym << ")";
    throw DomainError(msg.str(), asym);
  }
  const Matrix herm = 0.5 * (op.matrix() + op.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
  if (solver.info() != Eigen::Success) {
    throw DomainError("hermitian_eig: eigen decomposition did not converge");
  }
  SpectrumResult out;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  double residual = 0.0;
  for (Eigen::Index k = 0; k < out.eigenvalues.size(); ++k) {
    const Vector v = out.eigenvectors.col(k);
    residual = std::max(residual, (op.matrix() * v - out.eigenvalues(k) * v).norm());
  }
  out.residual = residual;
  return out;
}

double min_eigenvalue(const BipartiteOperator& op, const Tolerances& tol) {
  const double asym = op.hermitian_deviation();
  if (asym > tol.hermitian) {
    std::ostringstream msg;
    msg << "min_eigenvalue: operator is not Hermitian (max |M - M^dagger| = " << asym << ")";
    throw DomainError(msg.str(), asym);
  }
  const Matrix herm = 0.5 * (op.matrix() + op.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

bool is_ppt(const BipartiteOperator& state, const Tolerances& tol) {
  return min_eigenvalue(partial_transpose(state), tol) >= -tol.psd;
}

// ---------------------------------------------------------------------------
// Local maps

BipartiteOperator local_conjugate(const BipartiteOperator& op, const Matrix& w) {
  if (w.rows() != op.local_dim() || w.cols() != op.local_dim()) {
    throw StructuralError("local_conjugate: local matrix has the wrong shape");
  }
  const Matrix ww = kron(w, w);
  return {op.local_dim(), ww * op.matrix() * ww.adjoint()};
}

PureState apply_local(const PureState& state, const Matrix& w) {
  if (w.rows() != state.local_dim() || w.cols() != state.local_dim()) {
    throw StructuralError("apply_local: local matrix has the wrong shape");
  }
  // (W (x) W) |a> has amplitude matrix W A W^T.
  return PureState::normalized(state.local_dim(),
                               flatten_amplitudes(w * state.amplitude_matrix() * w.transpose()));
}

BipartiteOperator embed(const BipartiteOperator& op, int target_dim) {
  const int d = op.local_dim();
  if (target_dim < d) {
    throw DomainError("embed: target dimension smaller than source dimension");
  }
  auto out = BipartiteOperator::zero(target_dim);
  Matrix m = out.matrix();
  for (int i = 1; i <= d; ++i) {
    for (int j = 1; j <= d; ++j) {
      for (int k = 1; k <= d; ++k) {
        for (int l = 1; l <= d; ++l) {
          m(idx(target_dim, i, j), idx(target_dim, k, l)) = op.element(i, j, k, l);
        }
      }
    }
  }
  return {target_dim, std::move(m)};
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw StructuralError("max_abs_diff: shapes differ");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace schmidt_forge
