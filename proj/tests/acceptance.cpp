// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "schmidt_forge/certify.hpp"
#include "schmidt_forge/ppt_sdp.hpp"
#include "schmidt_forge/schmidt.hpp"
#include "schmidt_forge/spectral_analytic.hpp"
#include "schmidt_forge/states.hpp"
#include "test_support.hpp"

using namespace schmidt_forge;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  std::function<Outcome()> body;
};

double rel_err(double x, double y) {
  const double scale = std::max({std::abs(x), std::abs(y), 1e-300});
  return std::abs(x - y) / scale;
}

std::string format(const char* fmt, double a = 0, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

Outcome thresholds() {
  Outcome o;
  double worst_at = 0, worst_above = -1;
  for (int d : {2, 4, 6, 8}) {
    const double t = ppt_threshold_analytic(d);
    const double expected = d == 2 ? 0.5 : 1.0 / (d + 2);
    o.ok = o.ok && std::abs(t - expected) < 1e-15;
    const double at = min_eigenvalue(partial_transpose(sigma_0(d, t)));
    const double above = min_eigenvalue(partial_transpose(sigma_0(d, t + 0.01)));
    worst_at = std::min(worst_at, at);
    worst_above = std::max(worst_above, above);
    o.ok = o.ok && at >= -1e-10 && above < -1e-4;
  }
  o.detail = format("min eig at threshold >= %.2e, above threshold <= %.2e", worst_at, worst_above);
  return o;
}

Outcome spectra() {
  Outcome o;
  double worst = 0;
  for (int d : {4, 6, 8}) {
    for (double p : {0.0, 0.05, 1.0 / (d + 2), 0.3}) {
      const auto spec = closed_form_spectrum(d, p);
      const auto& fam = spec.families;
      o.ok = o.ok && fam[0].multiplicity == d * (d + 1) / 2 &&
             fam[1].multiplicity == (d + 1) * (d - 2) / 2 && fam[2].multiplicity == 1;
      const auto closed = spec.expanded();
      const auto numeric = oracle::eigenvalues(oracle::partial_transpose(oracle::sigma_0(d, p), d));
      for (std::size_t k = 0; k < closed.size(); ++k) {
        worst = std::max(worst, std::abs(closed[k] - numeric(static_cast<Eigen::Index>(k))));
      }
    }
  }
  o.ok = o.ok && worst <= 1e-9;
  o.detail = format("max eigenvalue deviation %.2e over 12 (d, p) pairs", worst);
  return o;
}

Outcome determinants() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_int_distribution<int> half(1, 6);
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    const int d = 2 * half(rng);
    const double a = u(rng), b = u(rng), c = u(rng);
    const double direct = determinant_direct(d, a, b, c);
    const double rec = determinant_recurrence(d, a, b, c);
    const double closed = determinant_closed_form(d, a, b, c);
    worst = std::max({worst, rel_err(direct, rec), rel_err(direct, closed), rel_err(rec, closed)});
  }
  o.ok = worst <= 1e-8;
  o.detail = format("max relative disagreement %.2e over 100 instances", worst);
  return o;
}

Outcome sdp_soundness() {
  Outcome o;
  const auto singlet = solve_pppt(PpptProblem(psi_0a(2).projector()));
  o.ok = singlet.status == PpptStatus::Optimal && std::abs(singlet.p_value - 0.5) <= 1e-5;
  std::string conj;
  for (int d : {4, 6}) {
    const PpptProblem problem(psi_0a(d).projector());
    const auto r = solve_pppt(problem);
    const double target = 1.0 / (d + 2);
    o.ok = o.ok && r.status == PpptStatus::Optimal && r.p_value >= target - 1e-5 &&
           verify_pppt_result(r, problem).passed();
    const bool eq = std::abs(r.p_value - target) <= 1e-4;
    conj += format(" d=%.0f p=%.9f ", d, r.p_value) + (eq ? "equal" : "differs");
  }
  o.detail = format("singlet p=%.9f;", singlet.p_value) + conj;
  // The equality is a conjecture and reported, not gated.
  std::printf("INFO  criterion 4 conjecture check p(psi_0A) = 1/(d+2):%s\n", conj.c_str());
  return o;
}

Outcome doubling() {
  Outcome o;
  std::mt19937_64 rng(7);
  int violations = 0;
  for (int k = 0; k < 200; ++k) {
    const int d = 2 + k % 7;
    const int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(d));
    const auto res = doubling_bound_check(oracle::random_rank_state(d, r, rng));
    if (res.rank_before != r || res.rank_after > 2 * res.rank_before) ++violations;
  }
  o.ok = violations == 0;
  o.detail = format("%.0f violations in 200 states", violations);
  return o;
}

Outcome youla() {
  Outcome o;
  std::mt19937_64 rng(11);
  double worst_unitary = 0, worst_res = 0, worst_coeff = 0;
  int odd = 0;
  for (int k = 0; k < 100; ++k) {
    const int d = 2 + k % 8;
    const auto s = random_antisymmetric_state(d, rng);
    const auto nf = youla_normal_form(s);
    const Matrix& u = nf.unitary;
    worst_unitary = std::max(worst_unitary,
                             oracle::max_abs(u.adjoint() * u - Matrix::Identity(d, d)));
    worst_res = std::max(worst_res, nf.residual);
    if (antisymmetric_rank_parity(s) % 2 != 0) ++odd;
    const Eigen::VectorXd sv =
        Eigen::JacobiSVD<Matrix>(oracle::amplitudes(s.amplitudes(), d)).singularValues();
    for (std::size_t m = 0; m < nf.coefficients.size(); ++m) {
      worst_coeff = std::max({worst_coeff, std::abs(nf.coefficients[m] - sv(2 * m)),
                              std::abs(nf.coefficients[m] - sv(2 * m + 1))});
    }
  }
  o.ok = worst_unitary <= 1e-10 && worst_res <= 1e-9 && odd == 0 && worst_coeff <= 1e-9;
  o.detail = format("unitarity %.1e, residual %.1e, coefficient mismatch %.1e", worst_unitary,
                    worst_res, worst_coeff);
  if (odd) o.detail += ", odd ranks found";
  return o;
}

Outcome monotonicity() {
  Outcome o;
  std::mt19937_64 rng(13);
  int failures = 0;
  double worst_slack = 1;
  for (int k = 0; k < 10; ++k) {
    const auto rho1 = random_antisymmetric_state(4, rng).projector();
    const auto rho2 = random_antisymmetric_state(4, rng).projector();
    for (double lambda : {0.25, 0.5, 0.75}) {
      const auto rep = mixing_monotonicity_report(rho1, rho2, lambda, 1e-4);
      worst_slack = std::min(worst_slack, rep.p_combined - std::min(rep.p_first, rep.p_second));
      if (!rep.holds) ++failures;
    }
  }
  const bool e1 = embedding_monotonicity_check(psi_0a(2).projector(), 3, 1e-4);
  const bool e2 = embedding_monotonicity_check(psi_0a(4).projector(), 5, 1e-4);
  const bool e3 = embedding_monotonicity_check(psi_0a(4).projector(), 6, 1e-4);
  o.ok = failures == 0 && e1 && e2 && e3;
  o.detail = format("%.0f mixing failures (min slack %.2e); embeddings ", failures, worst_slack) +
             (e1 && e2 && e3 ? "hold" : "fail");
  return o;
}

Outcome certification() {
  Outcome o;
  const auto c6 = construct_half_d_state(6);
  const auto c8 = construct_half_d_state(8);
  double worst = 0;
  for (const auto* c : {&c6, &c8}) {
    const int d = c->state.local_dim();
    const Matrix m = c->state.matrix();
    worst = std::min({worst, oracle::eigenvalues(m)(0),
                      oracle::eigenvalues(oracle::partial_transpose(m, d))(0)});
    o.ok = o.ok && std::abs(m.trace().real() - 1.0) <= 1e-12 &&
           oracle::max_abs(m - m.adjoint()) <= 1e-12;
  }
  o.ok = o.ok && worst >= -1e-10 && c6.certificate.schmidt_lower_bound == 3 &&
         c8.certificate.schmidt_lower_bound == 4;
  o.detail = format("bounds d=6 -> %.0f, d=8 -> %.0f; min eigenvalue (state and PT) %.2e",
                    c6.certificate.schmidt_lower_bound, c8.certificate.schmidt_lower_bound, worst);
  return o;
}

Outcome tau() {
  Outcome o;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  double worst_map = 0, worst_sum = 0, worst_psd = 0, worst_comm = 0;
  for (int d : {4, 6}) {
    for (int k = 0; k < 10; ++k) {
      std::vector<double> raw(static_cast<std::size_t>(d / 2));
      for (auto& x : raw) x = u(rng);
      const auto c = PsiACoefficients::normalized(d, raw);
      const Vector mapped = tau_operator(c).matrix() * psi_0a(d).amplitudes();
      worst_map = std::max(worst_map, oracle::max_abs(mapped - psi_a(c).amplitudes()));
      worst_sum = std::max(worst_sum, std::abs(tau_factors(c).array().pow(4).sum() - d));
    }
  }
  for (int k = 0; k < 20; ++k) {
    std::vector<double> raw = {u(rng), u(rng)};
    const auto c = PsiACoefficients::normalized(4, raw);
    const BipartiteOperator r(4, oracle::random_psd(16, rng) / 16.0);
    const auto conj = tau_conjugate(r, c);
    worst_psd = std::max(worst_psd, -oracle::eigenvalues(conj.matrix())(0));
    worst_comm = std::max(worst_comm, oracle::max_abs(oracle::partial_transpose(conj.matrix(), 4) -
                                                      tau_conjugate(partial_transpose(r), c).matrix()));
  }
  o.ok = worst_map <= 1e-12 && worst_sum <= 1e-12 && worst_psd <= 1e-10 && worst_comm <= 1e-10;
  o.detail = format("map %.1e, sum t^4 %.1e, commutation %.1e", worst_map, worst_sum, worst_comm) +
             format(", negativity %.1e", worst_psd);
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "analytic PPT thresholds", 1.0, thresholds},
      {2, "closed-form spectrum equivalence", 2.0, spectra},
      {3, "determinant three-path agreement", 2.0, determinants},
      {4, "p^PPT soundness", 60.0, sdp_soundness},
      {5, "doubling bound", 5.0, doubling},
      {6, "skew-symmetric normal form", 5.0, youla},
      {7, "monotonicity", 120.0, monotonicity},
      {8, "half-dimension certification", 1.0, certification},
      {9, "tau operator", 1.0, tau},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.time_limit_s;
    const bool pass = o.ok && in_time;
    if (!pass) ++failed;
    std::printf("%s  criterion %d  %-34s %7.3fs (limit %.0fs)  %s%s\n", pass ? "PASS" : "FAIL", c.id,
                c.name, secs, c.time_limit_s, o.detail.c_str(), in_time ? "" : " [too slow]");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
