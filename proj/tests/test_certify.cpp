#include "doctest.h"

#include "schmidt_forge/certify.hpp"
#include "schmidt_forge/ppt_sdp.hpp"
#include "schmidt_forge/states.hpp"
#include "test_support.hpp"

using namespace schmidt_forge;

TEST_CASE("L threshold values") {
  CHECK(l_threshold(2) == 0.5);
  CHECK(l_threshold(3) == 0.5);
  CHECK(l_threshold(4) == doctest::Approx(1.0 / 6));
  CHECK(l_threshold(5) == doctest::Approx(1.0 / 6));
  CHECK(l_threshold(6) == doctest::Approx(1.0 / 8));
  CHECK(l_threshold(7) == doctest::Approx(1.0 / 8));
  CHECK_THROWS_AS(l_threshold(1), DomainError);
}

TEST_CASE("property: L is non-increasing") {
  for (int d = 2; d < 20; ++d) CHECK(l_threshold(d + 1) <= l_threshold(d));
}

TEST_CASE("inference from p^PPT") {
  auto cert = infer_from_pppt(4, 0.4, 1e-7);
  CHECK(cert.schmidt_lower_bound == 4);
  CHECK(cert.ppt_extension_bound == 2);
  CHECK(cert.method == CertificateMethod::PpptThreshold);

  cert = infer_from_pppt(8, 0.1, 1e-7);
  CHECK(cert.schmidt_lower_bound == 8);
  CHECK(cert.ppt_extension_bound == 4);

  cert = infer_from_pppt(8, 0.13, 1e-7);
  CHECK(cert.schmidt_lower_bound == 6);
  CHECK(cert.ppt_extension_bound == 3);

  cert = infer_from_pppt(4, 0.1, 1e-7);
  CHECK(cert.schmidt_lower_bound == 6);

  cert = infer_from_pppt(6, 0.5, 1e-7);
  CHECK(cert.schmidt_lower_bound == 2);
  CHECK(cert.ppt_extension_bound == 1);

  // Just below a threshold but within tolerance: not excluded.
  cert = infer_from_pppt(6, 1.0 / 6 - 1e-9, 1e-7);
  CHECK(cert.schmidt_lower_bound == 4);

  CHECK_THROWS_AS(infer_from_pppt(4, 0.7, 1e-7), DomainError);
  CHECK_THROWS_AS(infer_from_pppt(4, -0.1, 1e-7), DomainError);
  CHECK_THROWS_AS(infer_from_pppt(4, 0.2, -1.0), DomainError);
}

TEST_CASE("property: inferred bounds are even and the chain names its rules") {
  for (int d = 2; d <= 12; ++d) {
    for (int k = 0; k <= 50; ++k) {
      const auto cert = infer_from_pppt(d, 0.01 * k, 1e-7);
      CHECK(cert.schmidt_lower_bound % 2 == 0);
      CHECK(cert.schmidt_lower_bound >= 2);
      CHECK(cert.ppt_extension_bound * 2 >= cert.schmidt_lower_bound);
      REQUIRE_FALSE(cert.inference_chain.empty());
      CHECK(cert.inference_chain.back().rule == InferenceRule::ProjectionDoubling);
    }
  }
}

TEST_CASE("property: certificates never exceed the true rank of psi_0a") {
  for (int d : {4, 6, 8}) {
    const auto r = solve_pppt(PpptProblem(psi_0a(d).projector()));
    REQUIRE(r.status == PpptStatus::Optimal);
    const auto cert = infer_from_pppt(d, r.upper_bound, 1e-7);
    CHECK(cert.schmidt_lower_bound <= d);
    CHECK(cert.schmidt_lower_bound == d);
  }
}

TEST_CASE("isotropic witness") {
  CHECK(isotropic_witness(4, 0.8).schmidt_lower_bound == 4);
  CHECK(isotropic_witness(4, 0.0).schmidt_lower_bound == 1);
  CHECK(isotropic_witness(3, 1.0).schmidt_lower_bound == 3);
  CHECK_THROWS_AS(isotropic_witness(3, 1.2), DomainError);
  for (int d = 2; d <= 10; ++d) {
    for (int r = 2; r <= d; ++r) {
      CAPTURE(d);
      CAPTURE(r);
      const double boundary = static_cast<double>(r - 1) / d;
      CHECK(isotropic_witness(d, boundary).schmidt_lower_bound == r);
    }
  }
}

TEST_CASE("entanglement fraction of isotropic states") {
  for (int d = 2; d <= 5; ++d) {
    CHECK(entanglement_fraction(isotropic_state(d, 0.37)) == doctest::Approx(0.37));
  }
}

TEST_CASE("half-dimension construction") {
  for (int d : {4, 6, 8}) {
    const auto c = construct_half_d_state(d);
    CHECK(c.certificate.schmidt_lower_bound == d / 2);
    CHECK(c.certificate.method == CertificateMethod::AntisymProjection);
    CHECK(c.ppt_min >= -1e-10);
    // Independent PPT and state checks.
    const Matrix m = c.state.matrix();
    CHECK(oracle::eigenvalues(m)(0) >= -1e-10);
    CHECK(oracle::eigenvalues(oracle::partial_transpose(m, d))(0) >= -1e-10);
    CHECK(std::abs(m.trace().real() - 1.0) <= 1e-12);
    const PpptProblem problem(psi_0a(d).projector());
    CHECK(verify_pppt_result(result_from_state(c.state), problem).passed());
  }
  CHECK_THROWS_AS(construct_half_d_state(5), DomainError);
  CHECK_THROWS_AS(construct_half_d_state(2), DomainError);
}

TEST_CASE("state digests are stable and sensitive") {
  const auto a = state_digest(sigma_0(4, 0.1));
  CHECK(a.size() == 64);
  CHECK(a == state_digest(sigma_0(4, 0.1)));
  CHECK(a != state_digest(sigma_0(4, 0.1000001)));
  CHECK(state_digest(psi_0a(4)) != state_digest(psi_0a(4).projector()));
}
