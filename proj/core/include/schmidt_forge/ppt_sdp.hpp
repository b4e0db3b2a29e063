#pragma once

#include <string>
#include <vector>

#include "schmidt_forge/tensor_core.hpp"

namespace schmidt_forge {

/// Maximize p over states sigma = p rho_A + X with X PSD, supported on the
/// symmetric subspace, tr X = 1 - p, and sigma^G PSD.
struct PpptProblem {
  BipartiteOperator rho_a;
  double tolerance = 1e-7;
  int max_iterations = 50000;

  explicit PpptProblem(BipartiteOperator rho, double tol = 1e-7, int max_iter = 50000)
      : rho_a(std::move(rho)), tolerance(tol), max_iterations(max_iter) {}

  int local_dim() const { return rho_a.local_dim(); }
};

enum class PpptStatus { Optimal, MaxIterations, Infeasible };

const char* to_string(PpptStatus status);

struct PpptResiduals {
  double psd_min = 0;           // min eigenvalue of sigma
  double ppt_min = 0;           // min eigenvalue of sigma^G
  double projection_error = 0;  // max |P_A sigma P_A - p rho_A|
  double trace_error = 0;       // |tr sigma - 1|
};

struct PpptResult {
  double p_value = 0;      // achieved by sigma_opt
  double upper_bound = 0;  // objective of the dual certificate
  BipartiteOperator sigma_opt = BipartiteOperator::zero(1);
  BipartiteOperator rho_s_opt = BipartiteOperator::zero(1);  // symmetric part, normalized
  PpptResiduals residuals;
  int iterations = 0;
  PpptStatus status = PpptStatus::Infeasible;
  std::string message;
};

/// Checks the PpptProblem invariants; returns an empty string when valid.
std::string validate_problem(const PpptProblem& problem);

/// Solves the problem with a primal-dual interior-point method.
///
/// The unknowns are p and the symmetric block X, written in the orthonormal
/// basis {|i,i>, (|i,j> + |j,i>)/sqrt2} of the symmetric subspace; the
/// antisymmetric block is pinned to p rho_A so the projection constraint
/// holds by construction. The only coupling between the two blocks is the
/// partial transpose constraint on the full d^2 x d^2 matrix, which is also
/// what dominates the cost. For real rho_A the search is restricted to real
/// X (complex conjugation maps optimal points to optimal points).
///
/// Iterates stay strictly inside the feasible set, so sigma_opt is an exact
/// PPT state for the returned p_value, and upper_bound comes from the primal
/// side of the pair. The Schur complement has roughly d_S^2 rows and is
/// factorized densely; problems with more than 8000 unknowns are rejected.
PpptResult solve_pppt(const PpptProblem& problem);

struct VerificationCheck {
  std::string name;
  double value = 0;
  double threshold = 0;
  bool passed = false;
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;

  bool passed() const;
  const VerificationCheck* find(const std::string& name) const;
};

/// Recomputes every residual of `result` from its matrices alone.
VerificationReport verify_pppt_result(const PpptResult& result, const PpptProblem& problem);

/// Builds the result record for a hand-made sigma (p = tr(P_A sigma)).
PpptResult result_from_state(const BipartiteOperator& sigma);

struct MonotonicityReport {
  double p_first = 0;
  double p_second = 0;
  double p_combined = 0;
  bool holds = false;
};

/// p^PPT(lambda rho1 + (1-lambda) rho2) >= min(p^PPT(rho1), p^PPT(rho2)) - tol
MonotonicityReport mixing_monotonicity_report(const BipartiteOperator& rho1,
                                              const BipartiteOperator& rho2, double lambda,
                                              double tol, double solver_tol = 1e-8);
bool mixing_monotonicity_check(const BipartiteOperator& rho1, const BipartiteOperator& rho2,
                               double lambda, double tol);

/// p^PPT(rho embedded in d_target) >= p^PPT(rho) - tol.
/// p_first is the original value, p_combined the embedded one.
MonotonicityReport embedding_monotonicity_report(const BipartiteOperator& rho, int d_target,
                                                 double tol, double solver_tol = 1e-8);
bool embedding_monotonicity_check(const BipartiteOperator& rho, int d_target, double tol);

}  // namespace schmidt_forge
