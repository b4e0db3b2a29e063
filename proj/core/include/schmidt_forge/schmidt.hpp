#pragma once

#include <vector>

#include "schmidt_forge/tensor_core.hpp"

namespace schmidt_forge {

/// |phi> = sum_k coefficients[k] |left_k> (x) |right_k>, coefficients
/// descending and strictly above the rank threshold.
struct SchmidtDecomposition {
  RealVector coefficients;  // sqrt(pi_k)
  Matrix left_vectors;      // d x rank, orthonormal columns
  Matrix right_vectors;     // d x rank, orthonormal columns
  int rank = 0;
};

/// Result of bringing an antisymmetric amplitude matrix A to the block form
/// U^T A U = diag([[0, c_1], [-c_1, 0]], [[0, c_3], [-c_3, 0]], ..., [0]).
struct NormalFormResult {
  Matrix unitary;                  // U, d x d
  std::vector<double> coefficients;  // c_mu >= 0 descending, floor(d/2) entries
  double residual = 0;             // max |U^T A U - normal form|
};

inline constexpr double kDefaultRankTolerance = 1e-9;

/// Singular value decomposition of the amplitude matrix. Singular values at
/// or below tol * (largest singular value) are dropped.
SchmidtDecomposition schmidt_decompose(const PureState& state,
                                       double tol = kDefaultRankTolerance);

int schmidt_rank(const PureState& state, double tol = kDefaultRankTolerance);

/// Skew-symmetric normal form of an antisymmetric pure state.
///
/// Works on the Hermitian matrix A^dagger A: each nonzero eigenvalue c^2
/// occurs with even multiplicity, and for a unit eigenvector u the vector
/// -conj(A u) / c is a second eigenvector orthogonal to u that completes a
/// 2x2 block. Eigenvalue clusters are processed in descending order; inside
/// a cluster the seed vector is the projection of the lowest-index basis
/// vector that still carries at least half of the largest remaining weight,
/// so equal coefficients come out in basis order. The upper-right entry of
/// every block equals c_mu and is therefore real and non-negative.
///
/// Changing both local bases to |i'> = U^* |i> writes the state as
/// psi_a(coefficients); equivalently (U^T (x) U^T)|phi> = psi_a(coefficients).
NormalFormResult youla_normal_form(const PureState& state, double tol = kDefaultRankTolerance);

/// Normal form matrix with the given coefficients, d x d.
Matrix normal_form_matrix(int d, const std::vector<double>& coefficients);

/// ||V|phi> + |phi>||
double antisymmetry_residual(const PureState& state);
/// ||V|phi> - |phi>||
double symmetry_residual(const PureState& state);

struct DoublingBound {
  int rank_before = 0;
  int rank_after = 0;  // 0 when the antisymmetric projection vanishes
};

/// Schmidt rank of |phi> and of its normalized antisymmetric projection.
DoublingBound doubling_bound_check(const PureState& state, double tol = kDefaultRankTolerance);

/// Schmidt rank of an antisymmetric state. Throws ToleranceError when the
/// numerical rank comes out odd.
int antisymmetric_rank_parity(const PureState& state, double tol = kDefaultRankTolerance);

}  // namespace schmidt_forge
