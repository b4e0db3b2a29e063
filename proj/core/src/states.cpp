#include "schmidt_forge/states.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace schmidt_forge {
namespace {

void require_even(int d, const char* what) {
  if (d < 2 || d % 2 != 0) {
    std::ostringstream msg;
    msg << what << ": local dimension must be even and >= 2, got " << d;
    throw DomainError(msg.str());
  }
}

void require_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream msg;
    msg << what << ": parameter must lie in [0, 1], got " << x;
    throw DomainError(msg.str(), x);
  }
}

double sum_squares(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0, [](double acc, double x) { return acc + x * x; });
}

}  // namespace

PsiACoefficients::PsiACoefficients(int local_dim, std::vector<double> values)
    : local_dim_(local_dim), values_(std::move(values)) {
  if (local_dim_ < 2) {
    throw DomainError("PsiACoefficients: local dimension must be >= 2");
  }
  if (values_.size() != static_cast<std::size_t>(local_dim_ / 2)) {
    std::ostringstream msg;
    msg << "PsiACoefficients: expected " << local_dim_ / 2 << " coefficients for d=" << local_dim_
        << ", got " << values_.size();
    throw StructuralError(msg.str());
  }
  for (double c : values_) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw DomainError("PsiACoefficients: coefficients must be finite and non-negative", c);
    }
  }
  const double s = sum_squares(values_);
  if (std::abs(s - 0.5) > 1e-9) {
    std::ostringstream msg;
    msg << "PsiACoefficients: sum of squared coefficients must be 1/2, got " << s;
    throw DomainError(msg.str(), s);
  }
}

PsiACoefficients PsiACoefficients::normalized(int local_dim, std::vector<double> values) {
  const double s = sum_squares(values);
  if (!(s > 0.0)) {
    throw DomainError("PsiACoefficients: cannot normalize all-zero coefficients");
  }
  const double scale = std::sqrt(0.5 / s);
  for (double& c : values) c *= scale;
  return {local_dim, std::move(values)};
}

PsiACoefficients PsiACoefficients::uniform(int local_dim) {
  const int pairs = local_dim / 2;
  if (pairs < 1) {
    throw DomainError("PsiACoefficients: local dimension must be >= 2");
  }
  return {local_dim, std::vector<double>(static_cast<std::size_t>(pairs),
                                         std::sqrt(0.5 / pairs))};
}

double PsiACoefficients::at(int mu) const {
  if (mu < 1 || mu % 2 == 0 || mu + 1 > local_dim_) {
    throw DomainError("PsiACoefficients: index must be odd with mu+1 <= d");
  }
  return values_[static_cast<std::size_t>((mu - 1) / 2)];
}

PureState max_entangled(int d) {
  if (d < 2) throw DomainError("max_entangled: local dimension must be >= 2");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 1; k <= d; ++k) {
    v(static_cast<Eigen::Index>(basis_index(d, k, k))) = amp;
  }
  return {d, std::move(v)};
}

BipartiteOperator isotropic_state(int d, double fraction) {
  if (d < 2) throw DomainError("isotropic_state: local dimension must be >= 2");
  require_unit_interval(fraction, "isotropic_state");
  const auto n = static_cast<Eigen::Index>(d) * d;
  const Matrix proj = max_entangled(d).projector().matrix();
  const Matrix rest = (Matrix::Identity(n, n) - proj) / static_cast<double>(n - 1);
  return {d, fraction * proj + (1.0 - fraction) * rest};
}

PureState psi_a(const PsiACoefficients& coeffs) {
  const int d = coeffs.local_dim();
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int mu = 1; mu + 1 <= d; mu += 2) {
    const double c = coeffs.at(mu);
    v(static_cast<Eigen::Index>(basis_index(d, mu, mu + 1))) = c;
    v(static_cast<Eigen::Index>(basis_index(d, mu + 1, mu))) = -c;
  }
  return PureState::normalized(d, std::move(v));
}

PureState psi_0a(int d) {
  require_even(d, "psi_0a");
  return psi_a(PsiACoefficients::uniform(d));
}

BipartiteOperator sigma_0(int d, double p) {
  require_even(d, "sigma_0");
  require_unit_interval(p, "sigma_0");
  const Matrix anti = psi_0a(d).projector().matrix();
  const Matrix sym = symmetric_projector(d).matrix() / static_cast<double>(symmetric_dim(d));
  return {d, p * anti + (1.0 - p) * sym};
}

RealVector tau_factors(const PsiACoefficients& coeffs) {
  const int d = coeffs.local_dim();
  require_even(d, "tau_operator");
  RealVector t(d);
  const double scale = std::pow(static_cast<double>(d), 0.25);
  for (int mu = 1; mu < d; mu += 2) {
    const double value = std::sqrt(coeffs.at(mu)) * scale;
    t(mu - 1) = value;
    t(mu) = value;
  }
  return t;
}

BipartiteOperator tau_operator(const PsiACoefficients& coeffs) {
  const int d = coeffs.local_dim();
  const RealVector t = tau_factors(coeffs);
  auto out = BipartiteOperator::zero(d);
  Matrix m = out.matrix();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Eigen::Index k = static_cast<Eigen::Index>(i) * d + j;
      m(k, k) = t(i) * t(j);
    }
  }
  return {d, std::move(m)};
}

BipartiteOperator tau_conjugate(const BipartiteOperator& op, const PsiACoefficients& coeffs) {
  if (op.local_dim() != coeffs.local_dim()) {
    throw StructuralError("tau_conjugate: operator and coefficient dimensions differ");
  }
  const int d = op.local_dim();
  const RealVector t = tau_factors(coeffs);
  RealVector diag(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) diag(static_cast<Eigen::Index>(i) * d + j) = t(i) * t(j);
  }
  Matrix m = op.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) *= diag(r) * diag(c);
  }
  return {d, std::move(m)};
}

PureState random_pure_state(int d, std::mt19937_64& rng) {
  if (d < 1) throw DomainError("random_pure_state: local dimension must be positive");
  std::normal_distribution<double> normal;
  Vector v(static_cast<Eigen::Index>(d) * d);
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = Complex(normal(rng), normal(rng));
  return PureState::normalized(d, std::move(v));
}

PureState random_antisymmetric_state(int d, std::mt19937_64& rng) {
  if (d < 2) throw DomainError("random_antisymmetric_state: local dimension must be >= 2");
  const Matrix a = random_pure_state(d, rng).amplitude_matrix();
  return PureState::normalized(d, flatten_amplitudes(a - a.transpose()));
}

}  // namespace schmidt_forge
