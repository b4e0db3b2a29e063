#pragma once

#include <string>
#include <vector>

#include "schmidt_forge/tensor_core.hpp"

namespace schmidt_forge {

inline constexpr int kCertificateSchemaVersion = 1;

enum class CertificateMethod { PpptThreshold, IsotropicFraction, AntisymProjection };

// Each step of an inference chain applies exactly one of these.
enum class InferenceRule {
  // Schmidt number of a pure state equals its Schmidt rank.
  PureStateRank,
  // Antisymmetric states have even Schmidt number, and at least 2.
  AntisymmetricEven,
  // p^PPT(rho_A) >= L(r) when rho_A has Schmidt number r; contrapositive.
  PpptLowerBound,
  // Antisymmetric projection at most doubles the Schmidt number.
  ProjectionDoubling,
  // sigma_0(d, 1/(d+2)) has a PSD partial transpose.
  PptAtThreshold,
  // Isotropic state with F >= (r-1)/d has Schmidt number >= r.
  IsotropicFraction,
};

const char* to_string(CertificateMethod method);
const char* to_string(InferenceRule rule);

struct InferenceStep {
  InferenceRule rule;
  std::string statement;
};

struct SchmidtCertificate {
  std::string input_digest;  // SHA-256 of the state, may be empty
  CertificateMethod method = CertificateMethod::PpptThreshold;
  double measured_value = 0;  // p^PPT, F or the admixture weight
  double threshold_used = 0;
  int schmidt_lower_bound = 1;
  // Lower bound for any PPT state whose antisymmetric projection is
  // proportional to the certified state (PpptThreshold only, else 0).
  int ppt_extension_bound = 0;
  std::vector<InferenceStep> inference_chain;
  double tolerance = 0;
};

/// L(2) = L(3) = 1/2, L(d) = 1/(d+2) for even d >= 4, 1/(d+1) for odd d >= 5.
double l_threshold(int d);

/// Schmidt number lower bound for an antisymmetric state from its measured
/// p^PPT. Tests the hypotheses r = 2, 4, ... <= d; p < L(r) - tol rules out
/// Schmidt number r, so the bound is two above the largest excluded r (and
/// 2 if none is excluded). Noise in p can only weaken the result.
SchmidtCertificate infer_from_pppt(int d, double p_measured, double tol,
                                   std::string input_digest = {});

/// Largest r in 1..d with F >= (r-1)/d.
SchmidtCertificate isotropic_witness(int d, double fraction, std::string input_digest = {});

/// <Psi+| rho |Psi+>
double entanglement_fraction(const BipartiteOperator& rho);

struct HalfDimensionConstruction {
  BipartiteOperator state;
  SchmidtCertificate certificate;
  double ppt_min = 0;  // measured min eigenvalue of state^G
};

/// sigma_0(d, 1/(d+2)) with a Schmidt number >= d/2 certificate. The PPT
/// property is re-checked numerically (min eigenvalue >= -1e-10).
HalfDimensionConstruction construct_half_d_state(int d);

/// Hex SHA-256 over the local dimension and the raw entries.
std::string state_digest(const BipartiteOperator& op);
std::string state_digest(const PureState& state);

}  // namespace schmidt_forge
