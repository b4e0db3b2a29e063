#include "schmidt_forge/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

namespace schmidt_forge {
namespace {

constexpr double kNormTolerance = 1e-9;
constexpr double kAntisymmetryTolerance = 1e-9;
// Singular values closer than this (relative to the largest) are treated as
// one cluster.
constexpr double kClusterTolerance = 1e-10;
// Seed candidates with less remaining weight than this are already spanned.
constexpr double kSpannedTolerance = 1e-6;

void require_normalized(const PureState& state, const char* what) {
  const double norm = state.norm();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg << what << ": state is not normalized (norm " << norm << ")";
    throw DomainError(msg.str(), norm);
  }
}

void require_antisymmetric(const PureState& state, const char* what) {
  const double res = antisymmetry_residual(state);
  if (res > kAntisymmetryTolerance) {
    std::ostringstream msg;
    msg << what << ": state is not antisymmetric (||V phi + phi|| = " << res << ")";
    throw DomainError(msg.str(), res);
  }
}

Vector swapped(const PureState& state) {
  return flatten_amplitudes(state.amplitude_matrix().transpose());
}

// Projects `v` onto the orthogonal complement of the first `count` columns
// of `basis`, twice for stability.
Vector project_out(Vector v, const Matrix& basis, Eigen::Index count) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index k = 0; k < count; ++k) {
      v -= basis.col(k) * basis.col(k).dot(v);
    }
  }
  return v;
}

// Picks the seed vector inside the cluster spanned by `cluster`.
// Returns false when the cluster is already covered by the chosen columns.
bool pick_seed(const Matrix& cluster, const Matrix& chosen, Eigen::Index n_chosen, Vector& seed) {
  const Eigen::Index d = cluster.rows();
  std::vector<Vector> candidates;
  std::vector<double> weights;
  candidates.reserve(static_cast<std::size_t>(d));
  double best = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    // Projection of e_i onto the cluster, then away from chosen columns.
    Vector v = cluster * cluster.row(i).adjoint();
    v = project_out(std::move(v), chosen, n_chosen);
    const double w = v.norm();
    best = std::max(best, w);
    candidates.push_back(std::move(v));
    weights.push_back(w);
  }
  if (best < kSpannedTolerance) return false;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (weights[static_cast<std::size_t>(i)] >= 0.5 * best) {
      seed = candidates[static_cast<std::size_t>(i)] / weights[static_cast<std::size_t>(i)];
      return true;
    }
  }
  return false;
}

}  // namespace

SchmidtDecomposition schmidt_decompose(const PureState& state, double tol) {
  require_normalized(state, "schmidt_decompose");
  if (!(tol > 0.0)) throw DomainError("schmidt_decompose: tolerance must be positive", tol);

  Eigen::JacobiSVD<Matrix> svd(state.amplitude_matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  const double threshold = tol * (s.size() > 0 ? s(0) : 0.0);
  int rank = 0;
  while (rank < s.size() && s(rank) > threshold) ++rank;

  SchmidtDecomposition out;
  out.rank = rank;
  out.coefficients = s.head(rank);
  out.left_vectors = svd.matrixU().leftCols(rank);
  // A = U S V^dagger, so |phi> = sum_k s_k |u_k> (x) |conj(v_k)>.
  out.right_vectors = svd.matrixV().leftCols(rank).conjugate();
  return out;
}

int schmidt_rank(const PureState& state, double tol) { return schmidt_decompose(state, tol).rank; }

double antisymmetry_residual(const PureState& state) {
  return (swapped(state) + state.amplitudes()).norm();
}

double symmetry_residual(const PureState& state) {
  return (swapped(state) - state.amplitudes()).norm();
}

Matrix normal_form_matrix(int d, const std::vector<double>& coefficients) {
  if (coefficients.size() > static_cast<std::size_t>(d / 2)) {
    throw StructuralError("normal_form_matrix: too many coefficients");
  }
  Matrix n = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    const auto r = static_cast<Eigen::Index>(2 * k);
    n(r, r + 1) = coefficients[k];
    n(r + 1, r) = -coefficients[k];
  }
  return n;
}

NormalFormResult youla_normal_form(const PureState& state, double tol) {
  require_antisymmetric(state, "youla_normal_form");
  if (!(tol > 0.0)) throw DomainError("youla_normal_form: tolerance must be positive", tol);

  const int d = state.local_dim();
  Matrix a = state.amplitude_matrix();
  a = 0.5 * (a - a.transpose()).eval();

  // Right singular vectors of A are the eigenvectors of A^dagger A; taking
  // them from the SVD keeps small c accurate to machine precision instead of
  // its square root.
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const RealVector& sigma = svd.singularValues();  // descending
  const Matrix& vecs = svd.matrixV();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  const double zero_threshold = tol * sigma_max;
  const double cluster_tol = kClusterTolerance * std::max(sigma_max, 1e-300);

  Matrix u = Matrix::Zero(d, d);
  Eigen::Index n_chosen = 0;
  std::vector<double> coeffs;

  Eigen::Index start = 0;
  while (start < d) {
    Eigen::Index end = start + 1;
    while (end < d && sigma(end - 1) - sigma(end) <= cluster_tol) ++end;
    const bool kernel = sigma(start) <= zero_threshold;
    if (kernel) end = d;  // everything below the threshold is one cluster
    const Matrix cluster = vecs.middleCols(start, end - start);

    Vector seed;
    while (n_chosen < d && pick_seed(cluster, u, n_chosen, seed)) {
      if (kernel) {
        u.col(n_chosen++) = seed;
        continue;
      }
      const Vector image = a * seed;
      const double c = image.norm();
      if (n_chosen + 2 > d) break;
      u.col(n_chosen) = seed;
      u.col(n_chosen + 1) = -image.conjugate() / c;
      n_chosen += 2;
      coeffs.push_back(c);
    }
    start = end;
  }

  if (n_chosen < d) {
    // Numerical leftovers; complete with the remaining basis directions.
    for (Eigen::Index i = 0; i < d && n_chosen < d; ++i) {
      Vector e = Vector::Zero(d);
      e(i) = 1.0;
      e = project_out(std::move(e), u, n_chosen);
      const double w = e.norm();
      if (w > kSpannedTolerance) u.col(n_chosen++) = e / w;
    }
  }

  while (coeffs.size() < static_cast<std::size_t>(d / 2)) coeffs.push_back(0.0);

  NormalFormResult out;
  out.unitary = std::move(u);
  out.coefficients = std::move(coeffs);
  out.residual =
      max_abs_diff(out.unitary.transpose() * a * out.unitary, normal_form_matrix(d, out.coefficients));
  return out;
}

DoublingBound doubling_bound_check(const PureState& state, double tol) {
  DoublingBound out;
  out.rank_before = schmidt_rank(state, tol);
  const Vector projected = 0.5 * (state.amplitudes() - swapped(state));
  const double norm = projected.norm();
  if (norm <= kNormTolerance) {
    out.rank_after = 0;
    return out;
  }
  out.rank_after = schmidt_rank(PureState::normalized(state.local_dim(), projected), tol);
  return out;
}

int antisymmetric_rank_parity(const PureState& state, double tol) {
  require_antisymmetric(state, "antisymmetric_rank_parity");
  const int rank = schmidt_rank(state, tol);
  if (rank % 2 != 0) {
    std::ostringstream msg;
    msg << "antisymmetric_rank_parity: numerical Schmidt rank " << rank
        << " is odd; the rank tolerance " << tol << " is misconfigured for this state";
    throw ToleranceError(msg.str());
  }
  return rank;
}

}  // namespace schmidt_forge
