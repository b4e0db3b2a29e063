#include "sdp_ipm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace schmidt_forge::detail {
namespace {

using Blocks = std::vector<Matrix>;

double inner(const ConstraintBlock& a, const Matrix& y) {
  if (a.dense) return (a.dense_matrix.cwiseProduct(y.transpose())).sum().real();
  double s = 0.0;
  for (const auto& e : a.entries) s += (e.value * y(e.col, e.row)).real();
  return s;
}

void add_scaled(Matrix& out, const ConstraintBlock& a, double scale) {
  if (a.dense) {
    out += scale * a.dense_matrix;
    return;
  }
  for (const auto& e : a.entries) out(e.row, e.col) += scale * e.value;
}

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k].cwiseProduct(b[k].transpose())).sum().real();
  return s;
}

RealVector apply_a(const BlockSdp& sdp, const Blocks& y) {
  RealVector out(sdp.num_constraints());
  for (int i = 0; i < sdp.num_constraints(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
      const auto& blk = sdp.a[static_cast<std::size_t>(i)][k];
      if (!blk.empty()) s += inner(blk, y[k]);
    }
    out(i) = s;
  }
  return out;
}

Blocks apply_a_adjoint(const BlockSdp& sdp, const RealVector& y) {
  Blocks out;
  out.reserve(sdp.block_sizes.size());
  for (int n : sdp.block_sizes) out.push_back(Matrix::Zero(n, n));
  for (int i = 0; i < sdp.num_constraints(); ++i) {
    if (y(i) == 0.0) continue;
    for (std::size_t k = 0; k < out.size(); ++k) {
      const auto& blk = sdp.a[static_cast<std::size_t>(i)][k];
      if (!blk.empty()) add_scaled(out[k], blk, y(i));
    }
  }
  return out;
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

bool inverse_pd(const Matrix& m, Matrix& inv) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) return false;
  inv = llt.solve(Matrix::Identity(m.rows(), m.cols()));
  inv = hermitian_part(inv);
  return true;
}

bool is_pd(const Blocks& blocks) {
  for (const auto& m : blocks) {
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success) return false;
  }
  return true;
}

// Largest alpha with m + alpha * dm PSD (infinity if unbounded).
double max_step(const Matrix& m, const Matrix& dm) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) return 0.0;
  const auto l = llt.matrixL();
  const Matrix half = l.solve(dm);
  const Matrix w = l.solve(half.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(hermitian_part(w), Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues()(0);
  if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

double step_length(const Blocks& m, const Blocks& dm, double fraction) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < m.size(); ++k) alpha = std::min(alpha, max_step(m[k], dm[k]));
  return std::min(1.0, fraction * alpha);
}

// M_ij = sum_blocks Re tr(A_i X A_j S^{-1})
Eigen::MatrixXd schur_complement(const BlockSdp& sdp, const Blocks& x, const Blocks& s_inv) {
  const int m = sdp.num_constraints();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Matrix& xb = x[k];
    const Matrix& sb = s_inv[k];
    std::vector<int> active;
    std::vector<Matrix> h(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      const auto& blk = sdp.a[static_cast<std::size_t>(i)][k];
      if (blk.empty()) continue;
      active.push_back(i);
      if (blk.dense) h[static_cast<std::size_t>(i)] = sb * blk.dense_matrix * xb;
    }
    for (std::size_t ii = 0; ii < active.size(); ++ii) {
      const int i = active[ii];
      const auto& ai = sdp.a[static_cast<std::size_t>(i)][k];
      for (std::size_t jj = ii; jj < active.size(); ++jj) {
        const int j = active[jj];
        const auto& aj = sdp.a[static_cast<std::size_t>(j)][k];
        double v = 0.0;
        if (ai.dense) {
          // tr(A_i X A_j S^-1) = tr(A_j H_i), H_i = S^-1 A_i X
          v = inner(aj, h[static_cast<std::size_t>(i)]);
        } else if (aj.dense) {
          v = inner(ai, h[static_cast<std::size_t>(j)]);
        } else {
          Complex acc = 0.0;
          for (const auto& e : ai.entries) {
            Complex part = 0.0;
            for (const auto& f : aj.entries) {
              part += xb(e.col, f.row) * f.value * sb(f.col, e.row);
            }
            acc += e.value * part;
          }
          v = acc.real();
        }
        out(i, j) += v;
        if (i != j) out(j, i) += v;
      }
    }
  }
  return out;
}

class SchurSolver {
 public:
  explicit SchurSolver(const Eigen::MatrixXd& m) : llt_(m) {
    if (llt_.info() != Eigen::Success) {
      use_ldlt_ = true;
      const double shift = 1e-14 * std::max(1.0, m.diagonal().cwiseAbs().maxCoeff());
      ldlt_.compute(m + shift * Eigen::MatrixXd::Identity(m.rows(), m.cols()));
    }
  }
  bool ok() const { return use_ldlt_ ? ldlt_.info() == Eigen::Success : true; }
  RealVector solve(const RealVector& rhs) const {
    return use_ldlt_ ? RealVector(ldlt_.solve(rhs)) : RealVector(llt_.solve(rhs));
  }

 private:
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::LDLT<Eigen::MatrixXd> ldlt_;
  bool use_ldlt_ = false;
};

}  // namespace

ConstraintBlock make_constraint_block(const Matrix& m, std::size_t sparse_limit) {
  ConstraintBlock out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (m(r, c) != Complex(0.0)) {
        out.entries.push_back({static_cast<int>(r), static_cast<int>(c), m(r, c)});
      }
    }
  }
  if (out.entries.size() > sparse_limit) {
    out.entries.clear();
    out.dense = true;
    out.dense_matrix = m;
  }
  return out;
}

std::vector<Matrix> dual_slack(const BlockSdp& sdp, const RealVector& y) {
  Blocks s = apply_a_adjoint(sdp, y);
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = hermitian_part(sdp.c[k] - s[k]);
  return s;
}

IpmResult solve_sdp(const BlockSdp& sdp, const RealVector& y0, const IpmOptions& options) {
  IpmResult out;
  out.y = y0;
  Blocks s = dual_slack(sdp, out.y);
  if (!is_pd(s)) {
    out.message = "initial dual point is not strictly feasible";
    return out;
  }

  int n_total = 0;
  Blocks x;
  for (int n : sdp.block_sizes) {
    x.push_back(Matrix::Identity(n, n));
    n_total += n;
  }
  const double b_norm = sdp.b.norm();

  int stalled = 0;
  for (int iter = 0;; ++iter) {
    Blocks s_inv(s.size());
    bool slack_ok = true;
    for (std::size_t k = 0; k < s.size() && slack_ok; ++k) slack_ok = inverse_pd(s[k], s_inv[k]);
    if (!slack_ok) {
      out.message = "dual slack lost positive definiteness";
      break;
    }
    const RealVector rp = sdp.b - apply_a(sdp, x);
    out.primal_objective = inner(sdp.c, x);
    out.dual_objective = sdp.b.dot(out.y);
    out.primal_infeasibility = rp.norm() / (1.0 + b_norm);
    out.relative_gap = std::abs(out.primal_objective - out.dual_objective) /
                       (1.0 + std::abs(out.primal_objective) + std::abs(out.dual_objective));
    out.iterations = iter;
    if (out.relative_gap <= options.tolerance && out.primal_infeasibility <= options.tolerance) {
      out.converged = true;
      out.message = "converged";
      break;
    }
    if (iter >= options.max_iterations) {
      out.message = "iteration limit reached";
      break;
    }
    const double mu = inner(x, s) / n_total;

    const SchurSolver schur(schur_complement(sdp, x, s_inv));
    if (!schur.ok()) {
      out.message = "Schur complement factorization failed";
      break;
    }

    auto direction = [&](double target_mu, const Blocks* corr, RealVector& dy, Blocks& dx,
                         Blocks& ds) {
      Blocks base(x.size());
      for (std::size_t k = 0; k < x.size(); ++k) {
        base[k] = target_mu * s_inv[k] - x[k];
        if (corr) base[k] -= (*corr)[k];
      }
      dy = schur.solve(rp - apply_a(sdp, base));
      ds = apply_a_adjoint(sdp, dy);
      for (auto& blk : ds) blk = -blk;
      dx.resize(x.size());
      for (std::size_t k = 0; k < x.size(); ++k) {
        dx[k] = hermitian_part(base[k] - x[k] * ds[k] * s_inv[k]);
      }
    };

    RealVector dy;
    Blocks dx, ds;
    direction(0.0, nullptr, dy, dx, ds);
    const double ap_aff = step_length(x, dx, 1.0);
    const double ad_aff = step_length(s, ds, 1.0);
    Blocks xa(x.size()), sa(s.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      xa[k] = x[k] + ap_aff * dx[k];
      sa[k] = s[k] + ad_aff * ds[k];
    }
    const double mu_aff = std::max(inner(xa, sa), 0.0) / n_total;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    Blocks corr(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) corr[k] = dx[k] * ds[k] * s_inv[k];
    direction(sigma * mu, &corr, dy, dx, ds);

    const double ap = step_length(x, dx, options.step_fraction);
    double ad = step_length(s, ds, options.step_fraction);

    for (std::size_t k = 0; k < x.size(); ++k) x[k] = hermitian_part(x[k] + ap * dx[k]);
    RealVector y_next = out.y + ad * dy;
    Blocks s_next = dual_slack(sdp, y_next);
    while (!is_pd(s_next) && ad > 1e-14) {
      ad *= 0.5;
      y_next = out.y + ad * dy;
      s_next = dual_slack(sdp, y_next);
    }
    if (is_pd(s_next)) {
      out.y = std::move(y_next);
      s = std::move(s_next);
    } else {
      ad = 0.0;
    }

    stalled = (ap < 1e-10 && ad < 1e-10) ? stalled + 1 : 0;
    if (stalled >= 3) {
      out.message = "step lengths collapsed";
      out.iterations = iter + 1;
      break;
    }
  }
  out.x = std::move(x);
  out.s = std::move(s);
  return out;
}

}  // namespace schmidt_forge::detail
