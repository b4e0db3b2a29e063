#include "schmidt_forge/ppt_sdp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>

#include "sdp_ipm.hpp"

namespace schmidt_forge {
namespace {

constexpr int kMaxLocalDim = 20;
constexpr int kMaxUnknowns = 8000;
constexpr std::size_t kSparseLimit = 64;

// Orthonormal basis of the symmetric subspace: |i,i> and (|i,j>+|j,i>)/sqrt2.
struct SymmetricBasis {
  int d = 0;
  // Column k has entries (storage index, weight).
  std::vector<std::vector<std::pair<int, double>>> columns;

  explicit SymmetricBasis(int local_dim) : d(local_dim) {
    const double w = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j) {
        if (i == j) {
          columns.push_back({{i * d + i, 1.0}});
        } else {
          columns.push_back({{i * d + j, w}, {j * d + i, w}});
        }
      }
    }
  }

  int size() const { return static_cast<int>(columns.size()); }

  Matrix isometry() const {
    Matrix s = Matrix::Zero(static_cast<Eigen::Index>(d) * d, size());
    for (int k = 0; k < size(); ++k) {
      for (const auto& [row, weight] : columns[static_cast<std::size_t>(k)]) s(row, k) = weight;
    }
    return s;
  }
};

struct Entry {
  int a, b;
  Complex v;
};

// -(S B S^dagger)^G for B = sum of `entries`, as a sparse block.
detail::ConstraintBlock lifted_constraint(const SymmetricBasis& basis,
                                          const std::vector<Entry>& entries) {
  const int d = basis.d;
  std::map<std::pair<int, int>, Complex> acc;
  for (const auto& e : entries) {
    for (const auto& [r, wr] : basis.columns[static_cast<std::size_t>(e.a)]) {
      for (const auto& [c, wc] : basis.columns[static_cast<std::size_t>(e.b)]) {
        // partial transpose: (i*d+j, k*d+l) -> (i*d+l, k*d+j)
        const int i = r / d, j = r % d, k = c / d, l = c % d;
        acc[{i * d + l, k * d + j}] -= e.v * wr * wc;
      }
    }
  }
  detail::ConstraintBlock out;
  for (const auto& [rc, v] : acc) {
    if (std::abs(v) > 0.0) out.entries.push_back({rc.first, rc.second, v});
  }
  return out;
}

detail::ConstraintBlock plain_constraint(const std::vector<Entry>& entries) {
  detail::ConstraintBlock out;
  for (const auto& e : entries) out.entries.push_back({e.a, e.b, -e.v});
  return out;
}

bool is_real(const Matrix& m) { return m.imag().cwiseAbs().maxCoeff() <= 1e-14; }

double min_eig(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0);
}

}  // namespace

const char* to_string(PpptStatus status) {
  switch (status) {
    case PpptStatus::Optimal:
      return "Optimal";
    case PpptStatus::MaxIterations:
      return "MaxIterations";
    case PpptStatus::Infeasible:
      return "Infeasible";
  }
  return "Unknown";
}

std::string validate_problem(const PpptProblem& problem) {
  const auto& rho = problem.rho_a;
  const int d = rho.local_dim();
  std::ostringstream msg;
  if (d < 2 || d > kMaxLocalDim) {
    msg << "local dimension must lie in [2, " << kMaxLocalDim << "], got " << d;
    return msg.str();
  }
  if (!(problem.tolerance > 0.0)) return "tolerance must be positive";
  if (problem.max_iterations < 1) return "max_iterations must be positive";
  const double herm = rho.hermitian_deviation();
  if (herm > 1e-10) {
    msg << "rho_A is not Hermitian (deviation " << herm << ")";
    return msg.str();
  }
  const Matrix pa = antisymmetric_projector(d).matrix();
  const double proj = max_abs_diff(pa * rho.matrix() * pa, rho.matrix());
  if (proj > 1e-10) {
    msg << "rho_A is not supported on the antisymmetric subspace (deviation " << proj << ")";
    return msg.str();
  }
  const double tr_err = std::abs(rho.trace() - Complex(1.0));
  if (tr_err > 1e-9) {
    msg << "rho_A must have unit trace (error " << tr_err << ")";
    return msg.str();
  }
  const double lmin = min_eig(rho.matrix());
  if (lmin < -1e-9) {
    msg << "rho_A is not positive semidefinite (min eigenvalue " << lmin << ")";
    return msg.str();
  }
  return {};
}

PpptResult solve_pppt(const PpptProblem& problem) {
  PpptResult result;
  if (auto err = validate_problem(problem); !err.empty()) {
    result.status = PpptStatus::Infeasible;
    result.message = err;
    return result;
  }

  const int d = problem.local_dim();
  const SymmetricBasis basis(d);
  const int ds = basis.size();
  const Matrix& rho = problem.rho_a.matrix();
  const bool real_mode = is_real(rho);

  // Hermitian, traceless directions of X.
  std::vector<std::vector<Entry>> directions;
  for (int a = 0; a + 1 < ds; ++a) {
    directions.push_back({{a, a, 1.0}, {ds - 1, ds - 1, -1.0}});
  }
  const double w = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < ds; ++a) {
    for (int b = a + 1; b < ds; ++b) {
      directions.push_back({{a, b, w}, {b, a, w}});
      if (!real_mode) directions.push_back({{a, b, Complex(0, w)}, {b, a, Complex(0, -w)}});
    }
  }
  const int m = 1 + static_cast<int>(directions.size());
  if (m > kMaxUnknowns) {
    std::ostringstream msg;
    msg << "solve_pppt: " << m << " unknowns exceed the dense solver limit of " << kMaxUnknowns;
    throw DomainError(msg.str(), m);
  }

  const auto n = static_cast<Eigen::Index>(d) * d;
  const Matrix ps_norm = symmetric_projector(d).matrix() / static_cast<double>(ds);

  detail::BlockSdp sdp;
  sdp.block_sizes = {ds, static_cast<int>(n)};
  sdp.c = {Matrix::Identity(ds, ds) / static_cast<double>(ds),
           partial_transpose(BipartiteOperator(d, ps_norm)).matrix()};
  sdp.b = RealVector::Zero(m);
  sdp.b(0) = 1.0;

  // S(y) = C - p A_p - sum_k x_k A_k:
  //   block 0: X = (1-p) I/d_S + sum_k x_k B_k
  //   block 1: sigma^G = (P_S/d_S)^G + p (rho_A - P_S/d_S)^G + sum_k x_k (S B_k S^dagger)^G
  sdp.a.reserve(static_cast<std::size_t>(m));
  sdp.a.push_back({detail::make_constraint_block(Matrix::Identity(ds, ds) / static_cast<double>(ds),
                                                 kSparseLimit),
                   detail::make_constraint_block(
                       partial_transpose(BipartiteOperator(d, ps_norm - rho)).matrix(),
                       kSparseLimit)});
  for (const auto& dir : directions) {
    sdp.a.push_back({plain_constraint(dir), lifted_constraint(basis, dir)});
  }

  detail::IpmOptions options;
  options.tolerance = problem.tolerance;
  options.max_iterations = problem.max_iterations;
  const detail::IpmResult ipm = detail::solve_sdp(sdp, RealVector::Zero(m), options);

  const double p = ipm.y(0);
  const Matrix x = ipm.s[0];
  const Matrix iso = basis.isometry();
  const Matrix sym = iso * x * iso.adjoint();
  const Matrix sigma = p * rho + sym;

  result.p_value = p;
  result.upper_bound = ipm.primal_objective;
  result.sigma_opt = BipartiteOperator(d, sigma);
  result.rho_s_opt = BipartiteOperator(d, p < 1.0 ? Matrix(sym / (1.0 - p)) : sym);
  result.iterations = ipm.iterations;
  result.message = ipm.message;

  const Matrix pa = antisymmetric_projector(d).matrix();
  result.residuals.psd_min = min_eig(sigma);
  result.residuals.ppt_min = min_eig(partial_transpose(result.sigma_opt).matrix());
  result.residuals.projection_error = max_abs_diff(pa * sigma * pa, p * rho);
  result.residuals.trace_error = std::abs(sigma.trace() - Complex(1.0));

  result.status = ipm.converged ? PpptStatus::Optimal : PpptStatus::MaxIterations;
  return result;
}

// ---------------------------------------------------------------------------
// Verification

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const VerificationCheck* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

VerificationReport verify_pppt_result(const PpptResult& result, const PpptProblem& problem) {
  VerificationReport report;
  const double tol = problem.tolerance;
  auto upper = [&](const std::string& name, double value, double threshold) {
    report.checks.push_back({name, value, threshold, value <= threshold});
  };
  auto lower = [&](const std::string& name, double value, double threshold) {
    report.checks.push_back({name, value, threshold, value >= threshold});
  };

  const auto& sigma = result.sigma_opt;
  const int d = problem.local_dim();
  if (sigma.local_dim() != d || result.rho_s_opt.local_dim() != d) {
    report.checks.push_back({"dimensions", 0.0, 0.0, false});
    return report;
  }
  const double p = result.p_value;
  const Tolerances loose{1e-6, tol};

  lower("p_lower", p, -tol);
  upper("p_upper", p, 0.5 + tol);
  upper("hermitian", sigma.hermitian_deviation(), tol);
  upper("trace", std::abs(sigma.trace() - Complex(1.0)), tol);
  lower("psd", hermitian_eig(sigma, loose).eigenvalues(0), -tol);
  lower("ppt", hermitian_eig(partial_transpose(sigma), loose).eigenvalues(0), -tol);

  const auto pa = antisymmetric_projector(d);
  const auto ps = symmetric_projector(d);
  const auto projected = pa * sigma * pa;
  upper("projection", max_abs_diff(projected.matrix(), p * problem.rho_a.matrix()), tol);
  upper("overlap", std::abs((pa * sigma).trace() - Complex(p)), tol);

  const auto& rho_s = result.rho_s_opt;
  upper("symmetric_support", max_abs_diff((ps * rho_s * ps).matrix(), rho_s.matrix()), tol);
  lower("symmetric_psd", hermitian_eig(rho_s, loose).eigenvalues(0), -tol);
  upper("decomposition",
        max_abs_diff(sigma.matrix(), p * problem.rho_a.matrix() + (1.0 - p) * rho_s.matrix()), tol);
  return report;
}

PpptResult result_from_state(const BipartiteOperator& sigma) {
  const int d = sigma.local_dim();
  const auto pa = antisymmetric_projector(d);
  const auto ps = symmetric_projector(d);
  PpptResult out;
  out.p_value = (pa * sigma).trace().real();
  out.upper_bound = out.p_value;
  out.sigma_opt = sigma;
  const Matrix sym = (ps * sigma * ps).matrix();
  out.rho_s_opt = BipartiteOperator(d, out.p_value < 1.0 ? Matrix(sym / (1.0 - out.p_value)) : sym);
  out.residuals.psd_min = min_eig(sigma.matrix());
  out.residuals.ppt_min = min_eig(partial_transpose(sigma).matrix());
  out.residuals.trace_error = std::abs(sigma.trace() - Complex(1.0));
  out.status = PpptStatus::Optimal;
  out.message = "constructed";
  return out;
}

// ---------------------------------------------------------------------------
// Monotonicity

namespace {

double solve_value(const BipartiteOperator& rho, double solver_tol) {
  const auto result = solve_pppt(PpptProblem(rho, solver_tol));
  if (result.status != PpptStatus::Optimal) {
    throw DomainError("p^PPT solve failed: " + result.message);
  }
  return result.p_value;
}

}  // namespace

MonotonicityReport mixing_monotonicity_report(const BipartiteOperator& rho1,
                                              const BipartiteOperator& rho2, double lambda,
                                              double tol, double solver_tol) {
  if (rho1.local_dim() != rho2.local_dim()) {
    throw StructuralError("mixing_monotonicity_check: dimensions differ");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("mixing_monotonicity_check: lambda must lie in [0, 1]", lambda);
  }
  MonotonicityReport out;
  out.p_first = solve_value(rho1, solver_tol);
  out.p_second = solve_value(rho2, solver_tol);
  const BipartiteOperator mix(rho1.local_dim(),
                              lambda * rho1.matrix() + (1.0 - lambda) * rho2.matrix());
  out.p_combined = solve_value(mix, solver_tol);
  out.holds = out.p_combined >= std::min(out.p_first, out.p_second) - tol;
  return out;
}

bool mixing_monotonicity_check(const BipartiteOperator& rho1, const BipartiteOperator& rho2,
                               double lambda, double tol) {
  return mixing_monotonicity_report(rho1, rho2, lambda, tol).holds;
}

MonotonicityReport embedding_monotonicity_report(const BipartiteOperator& rho, int d_target,
                                                 double tol, double solver_tol) {
  if (d_target <= rho.local_dim() || d_target > kMaxLocalDim) {
    throw DomainError("embedding_monotonicity_check: target dimension must exceed the source "
                      "dimension and be at most 20");
  }
  MonotonicityReport out;
  out.p_first = solve_value(rho, solver_tol);
  out.p_second = out.p_first;
  out.p_combined = solve_value(embed(rho, d_target), solver_tol);
  out.holds = out.p_combined >= out.p_first - tol;
  return out;
}

bool embedding_monotonicity_check(const BipartiteOperator& rho, int d_target, double tol) {
  return embedding_monotonicity_report(rho, d_target, tol).holds;
}

}  // namespace schmidt_forge
