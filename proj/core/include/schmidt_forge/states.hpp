#pragma once

#include <random>
#include <vector>

#include "schmidt_forge/tensor_core.hpp"

namespace schmidt_forge {

/// Pair coefficients c_mu of the two-level antisymmetric state
///   sum_{mu odd} c_mu (|mu,mu+1> - |mu+1,mu>).
///
/// Entry k of values() is c_{2k+1}. There are floor(d/2) of them; for odd d
/// the last basis level is unused. The coefficients are validated
/// (non-negative, sum of squares 1/2 within 1e-9), never rescaled behind
/// the caller's back; use normalized() to rescale explicitly.
class PsiACoefficients {
 public:
  PsiACoefficients(int local_dim, std::vector<double> values);

  static PsiACoefficients normalized(int local_dim, std::vector<double> values);
  static PsiACoefficients uniform(int local_dim);

  int local_dim() const noexcept { return local_dim_; }
  const std::vector<double>& values() const noexcept { return values_; }
  /// c_mu for odd 1-based mu.
  double at(int mu) const;

 private:
  int local_dim_;
  std::vector<double> values_;
};

/// (1/sqrt d) sum_k |k,k>
PureState max_entangled(int d);

/// F |Psi+><Psi+| + (1-F) (I - |Psi+><Psi+|) / (d^2 - 1)
BipartiteOperator isotropic_state(int d, double fraction);

PureState psi_a(const PsiACoefficients& coeffs);

/// psi_a with all coefficients equal; d even.
PureState psi_0a(int d);

/// p |psi_0A><psi_0A| + (1-p) P_S / d_S; d even.
BipartiteOperator sigma_0(int d, double p);

/// Diagonal filter tau = sum_ij t_i t_j |i,j><i,j| with
/// t_mu = t_{mu+1} = sqrt(c_mu) d^{1/4}. Maps psi_0a(d) onto psi_a(coeffs).
BipartiteOperator tau_operator(const PsiACoefficients& coeffs);

/// The local factors t_1..t_d of tau_operator.
RealVector tau_factors(const PsiACoefficients& coeffs);

/// tau op tau
BipartiteOperator tau_conjugate(const BipartiteOperator& op, const PsiACoefficients& coeffs);

/// Haar-random pure state (normalized complex Gaussian vector).
PureState random_pure_state(int d, std::mt19937_64& rng);

/// Normalized antisymmetric projection of a random pure state.
PureState random_antisymmetric_state(int d, std::mt19937_64& rng);

}  // namespace schmidt_forge
