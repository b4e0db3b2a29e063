#pragma once

// Small dense primal-dual interior-point method for block-diagonal complex
// Hermitian SDPs in the pair
//
//   (P)  min <C, X>   s.t. <A_i, X> = b_i,  X >= 0
//   (D)  max b^T y    s.t. S = C - sum_i y_i A_i >= 0
//
// with <A, X> = Re tr(A X). The method starts from a strictly feasible dual
// point and keeps S = C - A^*(y) exact, so every iterate y is dual feasible
// and b^T y is a valid objective value of (D). Search directions use the
// HKM scaling with Mehrotra's predictor-corrector.

#include <string>
#include <vector>

#include "schmidt_forge/tensor_core.hpp"

namespace schmidt_forge::detail {

struct SparseEntry {
  int row = 0;
  int col = 0;
  Complex value;
};

// One constraint matrix restricted to one block. Hermitian; all nonzero
// entries are listed (both triangles). Dense storage is used when the
// entry list would be large.
struct ConstraintBlock {
  std::vector<SparseEntry> entries;
  bool dense = false;
  Matrix dense_matrix;

  bool empty() const { return !dense && entries.empty(); }
};

struct BlockSdp {
  std::vector<int> block_sizes;
  std::vector<Matrix> c;                          // c[block]
  std::vector<std::vector<ConstraintBlock>> a;    // a[constraint][block]
  RealVector b;

  int num_constraints() const { return static_cast<int>(a.size()); }
};

struct IpmOptions {
  double tolerance = 1e-7;
  int max_iterations = 200;
  double step_fraction = 0.95;
};

struct IpmResult {
  RealVector y;
  std::vector<Matrix> x;
  std::vector<Matrix> s;
  double primal_objective = 0;
  double dual_objective = 0;
  double primal_infeasibility = 0;
  double relative_gap = 0;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

// Converts a dense Hermitian matrix into a ConstraintBlock, choosing sparse
// storage when at most `sparse_limit` entries are nonzero.
ConstraintBlock make_constraint_block(const Matrix& m, std::size_t sparse_limit);

// S = C - sum_i y_i A_i, per block.
std::vector<Matrix> dual_slack(const BlockSdp& sdp, const RealVector& y);

// Requires C - A^*(y0) to be positive definite.
IpmResult solve_sdp(const BlockSdp& sdp, const RealVector& y0, const IpmOptions& options);

}  // namespace schmidt_forge::detail
