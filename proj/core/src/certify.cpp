#include "schmidt_forge/certify.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <iomanip>
#include <memory>
#include <sstream>

#include <openssl/evp.h>

#include "schmidt_forge/schmidt.hpp"
#include "schmidt_forge/spectral_analytic.hpp"
#include "schmidt_forge/states.hpp"

namespace schmidt_forge {
namespace {

std::string fmt(double x) {
  std::ostringstream out;
  out << std::setprecision(10) << x;
  return out.str();
}

void append_bytes(std::vector<unsigned char>& buf, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  buf.insert(buf.end(), p, p + n);
}

std::string sha256_hex(const std::vector<unsigned char>& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) {
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return out.str();
}

template <class Derived>
std::string digest_entries(int d, const char* kind, const Eigen::MatrixBase<Derived>& m) {
  std::vector<unsigned char> buf;
  append_bytes(buf, kind, std::strlen(kind));
  const auto dim = static_cast<std::int64_t>(d);
  append_bytes(buf, &dim, sizeof dim);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double re = m(r, c).real();
      const double im = m(r, c).imag();
      append_bytes(buf, &re, sizeof re);
      append_bytes(buf, &im, sizeof im);
    }
  }
  return sha256_hex(buf);
}

}  // namespace

const char* to_string(CertificateMethod method) {
  switch (method) {
    case CertificateMethod::PpptThreshold:
      return "PpptThreshold";
    case CertificateMethod::IsotropicFraction:
      return "IsotropicFraction";
    case CertificateMethod::AntisymProjection:
      return "AntisymProjection";
  }
  return "Unknown";
}

const char* to_string(InferenceRule rule) {
  switch (rule) {
    case InferenceRule::PureStateRank:
      return "PureStateRank";
    case InferenceRule::AntisymmetricEven:
      return "AntisymmetricEven";
    case InferenceRule::PpptLowerBound:
      return "PpptLowerBound";
    case InferenceRule::ProjectionDoubling:
      return "ProjectionDoubling";
    case InferenceRule::PptAtThreshold:
      return "PptAtThreshold";
    case InferenceRule::IsotropicFraction:
      return "IsotropicFraction";
  }
  return "Unknown";
}

double l_threshold(int d) {
  if (d < 2) throw DomainError("l_threshold: dimension must be >= 2");
  if (d <= 3) return 0.5;
  if (d % 2 == 0) return 1.0 / (d + 2);
  return 1.0 / (d + 1);
}

SchmidtCertificate infer_from_pppt(int d, double p_measured, double tol, std::string input_digest) {
  if (d < 2) throw DomainError("infer_from_pppt: dimension must be >= 2");
  if (!(tol >= 0.0)) throw DomainError("infer_from_pppt: tolerance must be non-negative", tol);
  if (!(p_measured >= 0.0 && p_measured <= 0.5 + tol)) {
    throw DomainError("infer_from_pppt: p^PPT must lie in [0, 1/2 + tol]", p_measured);
  }

  SchmidtCertificate cert;
  cert.input_digest = std::move(input_digest);
  cert.method = CertificateMethod::PpptThreshold;
  cert.measured_value = p_measured;
  cert.tolerance = tol;
  cert.inference_chain.push_back(
      {InferenceRule::AntisymmetricEven,
       "every antisymmetric state has an even Schmidt number of at least 2"});

  int excluded = 0;
  for (int r = 2; r <= d; r += 2) {
    const double bound = l_threshold(r);
    if (!(p_measured < bound - tol)) break;
    excluded = r;
    cert.inference_chain.push_back(
        {InferenceRule::PpptLowerBound,
         "p^PPT = " + fmt(p_measured) + " < L(" + std::to_string(r) + ") - tol = " +
             fmt(bound - tol) + ", so the Schmidt number exceeds " + std::to_string(r)});
  }

  cert.schmidt_lower_bound = excluded + 2;
  cert.threshold_used = l_threshold(excluded > 0 ? excluded : 2);
  if (excluded > 0) {
    cert.inference_chain.push_back(
        {InferenceRule::AntisymmetricEven,
         "the next admissible even value gives Schmidt number >= " +
             std::to_string(cert.schmidt_lower_bound)});
  } else {
    cert.inference_chain.push_back(
        {InferenceRule::PpptLowerBound,
         "p^PPT = " + fmt(p_measured) + " is not below L(2) - tol = " + fmt(0.5 - tol) +
             "; no hypothesis is excluded"});
  }
  cert.ppt_extension_bound = (cert.schmidt_lower_bound + 1) / 2;
  cert.inference_chain.push_back(
      {InferenceRule::ProjectionDoubling,
       "any PPT state whose antisymmetric projection is proportional to this state has Schmidt "
       "number >= " +
           std::to_string(cert.schmidt_lower_bound) + "/2 = " +
           std::to_string(cert.ppt_extension_bound)});
  return cert;
}

SchmidtCertificate isotropic_witness(int d, double fraction, std::string input_digest) {
  if (d < 2) throw DomainError("isotropic_witness: dimension must be >= 2");
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw DomainError("isotropic_witness: F must lie in [0, 1]", fraction);
  }
  int bound = 1;
  for (int r = d; r >= 1; --r) {
    if (fraction >= static_cast<double>(r - 1) / d) {
      bound = r;
      break;
    }
  }
  SchmidtCertificate cert;
  cert.input_digest = std::move(input_digest);
  cert.method = CertificateMethod::IsotropicFraction;
  cert.measured_value = fraction;
  cert.threshold_used = static_cast<double>(bound - 1) / d;
  cert.schmidt_lower_bound = bound;
  cert.inference_chain.push_back(
      {InferenceRule::IsotropicFraction,
       "F = " + fmt(fraction) + " >= (" + std::to_string(bound) + " - 1)/" + std::to_string(d) +
           " = " + fmt(cert.threshold_used) + ", so the Schmidt number is >= " +
           std::to_string(bound)});
  return cert;
}

double entanglement_fraction(const BipartiteOperator& rho) {
  const Vector psi = max_entangled(rho.local_dim()).amplitudes();
  return (psi.adjoint() * rho.matrix() * psi)(0, 0).real();
}

HalfDimensionConstruction construct_half_d_state(int d) {
  if (d < 4 || d % 2 != 0) {
    throw DomainError("construct_half_d_state: dimension must be even and >= 4");
  }
  const double p = ppt_threshold_analytic(d);
  auto state = sigma_0(d, p);
  const double ppt_min = min_eigenvalue(partial_transpose(state));
  if (ppt_min < -1e-10) {
    std::ostringstream msg;
    msg << "construct_half_d_state: partial transpose has eigenvalue " << ppt_min;
    throw ToleranceError(msg.str());
  }
  const int rank = schmidt_rank(psi_0a(d));

  SchmidtCertificate cert;
  cert.input_digest = state_digest(state);
  cert.method = CertificateMethod::AntisymProjection;
  cert.measured_value = p;
  cert.threshold_used = p;
  cert.schmidt_lower_bound = rank / 2;
  cert.tolerance = 1e-10;
  cert.inference_chain.push_back(
      {InferenceRule::PureStateRank,
       "the equal-coefficient antisymmetric state has Schmidt rank " + std::to_string(rank) +
           ", hence Schmidt number " + std::to_string(rank)});
  cert.inference_chain.push_back(
      {InferenceRule::ProjectionDoubling,
       "the antisymmetric projection of the mixture is proportional to that state, so the "
       "mixture has Schmidt number >= " +
           std::to_string(rank) + "/2 = " + std::to_string(rank / 2)});
  cert.inference_chain.push_back(
      {InferenceRule::PptAtThreshold,
       "admixture weight p = 1/(d+2) = " + fmt(p) +
           " keeps the partial transpose PSD (measured min eigenvalue " + fmt(ppt_min) + ")"});
  return {std::move(state), std::move(cert), ppt_min};
}

std::string state_digest(const BipartiteOperator& op) {
  return digest_entries(op.local_dim(), "operator", op.matrix());
}

std::string state_digest(const PureState& state) {
  return digest_entries(state.local_dim(), "pure", state.amplitudes());
}

}  // namespace schmidt_forge
