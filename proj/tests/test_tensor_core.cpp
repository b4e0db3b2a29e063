#include "doctest.h"

#include "schmidt_forge/tensor_core.hpp"
#include "test_support.hpp"

using namespace schmidt_forge;

TEST_CASE("basis_index is 1-based with the first factor slow") {
  CHECK(basis_index(3, 1, 1) == 0);
  CHECK(basis_index(3, 1, 2) == 1);
  CHECK(basis_index(3, 2, 1) == 3);
  CHECK(basis_index(3, 3, 3) == 8);
  CHECK_THROWS_AS(basis_index(3, 0, 1), DomainError);
  CHECK_THROWS_AS(basis_index(3, 1, 4), DomainError);
}

TEST_CASE("operators validate their shape") {
  CHECK_THROWS_AS(BipartiteOperator(2, Matrix::Zero(3, 3)), StructuralError);
  CHECK_THROWS_AS(BipartiteOperator(2, Matrix::Zero(4, 5)), StructuralError);
  CHECK_THROWS_AS(PureState(2, Vector::Zero(3)), StructuralError);
  CHECK_NOTHROW(BipartiteOperator(3, Matrix::Zero(9, 9)));
}

TEST_CASE("pure states must be normalized") {
  Vector v = Vector::Zero(4);
  v(0) = 2.0;
  CHECK_THROWS_AS(PureState(2, v), DomainError);
  CHECK(PureState::normalized(2, v).norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(PureState::normalized(2, Vector::Zero(4)), DomainError);
}

TEST_CASE("partial transpose maps a dyad |1,2><3,4| to |1,4><3,2|") {
  const int d = 4;
  const auto pt = partial_transpose(BipartiteOperator::dyad(d, 1, 2, 3, 4));
  CHECK(max_abs_diff(pt.matrix(), BipartiteOperator::dyad(d, 1, 4, 3, 2).matrix()) == 0.0);
}

TEST_CASE("partial transpose agrees with the index-loop oracle") {
  std::mt19937_64 rng(11);
  for (int d = 2; d <= 5; ++d) {
    const Matrix m = oracle::gaussian(d * d, d * d, rng);
    const auto pt = partial_transpose(BipartiteOperator(d, m));
    CHECK(oracle::max_abs(pt.matrix() - oracle::partial_transpose(m, d)) == 0.0);
  }
}

TEST_CASE("swap operator partial transpose is d times the maximally entangled projector") {
  const int d = 3;
  const auto vg = partial_transpose(swap_operator(d));
  Matrix expected = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) expected += oracle::ket(d, j, j) * oracle::ket(d, i, i).adjoint();
  CHECK(oracle::max_abs(vg.matrix() - expected) < 1e-15);
  const Vector psi = oracle::max_entangled(d);
  CHECK(oracle::max_abs(vg.matrix() - d * psi * psi.adjoint()) < 1e-14);
}

TEST_CASE("P_S / d_S partial transpose has the paired-diagonal form") {
  const int d = 4;
  const double ds = d * (d + 1) / 2.0;
  const Matrix got = partial_transpose(symmetric_projector(d)).matrix() / ds;
  Matrix expected = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      expected += oracle::ket(d, i, j) * oracle::ket(d, i, j).adjoint();
      expected += oracle::ket(d, i, i) * oracle::ket(d, j, j).adjoint();
    }
  expected /= double(d * (d + 1));
  CHECK(oracle::max_abs(got - expected) < 1e-15);
}

TEST_CASE("projector traces, ranks and orthogonality") {
  for (int d = 2; d <= 8; ++d) {
    CAPTURE(d);
    const auto ps = symmetric_projector(d);
    const auto pa = antisymmetric_projector(d);
    CHECK(ps.trace().real() == doctest::Approx(d * (d + 1) / 2.0));
    CHECK(pa.trace().real() == doctest::Approx(d * (d - 1) / 2.0));
    CHECK(symmetric_dim(d) == d * (d + 1) / 2);
    CHECK(antisymmetric_dim(d) == d * (d - 1) / 2);
    CHECK(max_abs_diff((ps * ps).matrix(), ps.matrix()) < 1e-12);
    CHECK(oracle::max_abs((pa * ps).matrix()) < 1e-12);
    // The sum is exact: entries are 0, +-1/2 and 1.
    CHECK(max_abs_diff((ps + pa).matrix(), oracle::identity(d)) == 0.0);
    CHECK(max_abs_diff(swap_operator(d).matrix(), oracle::swap(d)) == 0.0);
    CHECK(swap_operator(d).trace().real() == doctest::Approx(d));
  }
  CHECK(oracle::rank(antisymmetric_projector(2).matrix()) == 1);
  CHECK(oracle::rank(symmetric_projector(2).matrix()) == 3);
  CHECK_THROWS_AS(symmetric_projector(1), DomainError);
}

TEST_CASE("swap spectrum is +1 on the symmetric and -1 on the antisymmetric subspace") {
  for (int d = 2; d <= 6; ++d) {
    const auto ev = hermitian_eig(swap_operator(d)).eigenvalues;
    int minus = 0, plus = 0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      if (std::abs(ev(k) + 1) < 1e-12) ++minus;
      if (std::abs(ev(k) - 1) < 1e-12) ++plus;
    }
    CHECK(minus == antisymmetric_dim(d));
    CHECK(plus == symmetric_dim(d));
  }
  const PureState ket12 = PureState::basis(2, 1, 2);
  CHECK(max_abs_diff(apply(swap_operator(2), ket12), PureState::basis(2, 2, 1).amplitudes()) == 0.0);
}

TEST_CASE("hermitian_eig on simple operators") {
  const auto id = hermitian_eig(BipartiteOperator::identity(2));
  CHECK(id.eigenvalues.size() == 4);
  for (Eigen::Index k = 0; k < 4; ++k) CHECK(id.eigenvalues(k) == doctest::Approx(1.0));

  const auto pa = hermitian_eig(antisymmetric_projector(3)).eigenvalues;
  for (int k = 0; k < 6; ++k) CHECK(std::abs(pa(k)) < 1e-12);
  for (int k = 6; k < 9; ++k) CHECK(pa(k) == doctest::Approx(1.0));

  CHECK(std::abs(min_eigenvalue(symmetric_projector(4))) < 1e-12);
}

TEST_CASE("hermitian_eig rejects non-Hermitian input and reports the asymmetry") {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 1) = 1e-3;
  try {
    hermitian_eig(BipartiteOperator(2, m));
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(e.measured() == doctest::Approx(1e-3));
  }
}

TEST_CASE("property: partial transpose is an involution preserving the trace") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + trial % 6;
    const BipartiteOperator op(d, oracle::gaussian(d * d, d * d, rng));
    CHECK(max_abs_diff(partial_transpose(partial_transpose(op)).matrix(), op.matrix()) <= 1e-14);
    CHECK(std::abs(partial_transpose(op).trace() - op.trace()) <= 1e-12);
  }
}

TEST_CASE("property: spectrum of H^G sums to tr H") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 2 + trial % 5;
    const BipartiteOperator h(d, oracle::random_hermitian(d * d, rng));
    const auto spec = hermitian_eig(partial_transpose(h));
    CHECK(std::abs(spec.eigenvalues.sum() - h.trace().real()) <= 1e-10);
  }
}

TEST_CASE("property: eigendecomposition reconstructs the matrix") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 2 + trial % 5;
    const Matrix h = oracle::random_hermitian(d * d, rng);
    const auto spec = hermitian_eig(BipartiteOperator(d, h));
    const Matrix rebuilt = spec.eigenvectors * spec.eigenvalues.cast<Complex>().asDiagonal() *
                           spec.eigenvectors.adjoint();
    CHECK(oracle::max_abs(rebuilt - h) <= 1e-9);
    CHECK(spec.residual <= 1e-9);
    for (Eigen::Index k = 1; k < spec.eigenvalues.size(); ++k) {
      CHECK(spec.eigenvalues(k - 1) <= spec.eigenvalues(k));
    }
  }
}

TEST_CASE("is_ppt on product and entangled states") {
  CHECK(is_ppt(PureState::basis(3, 1, 2).projector()));
  const Vector psi = oracle::max_entangled(3);
  CHECK_FALSE(is_ppt(BipartiteOperator(3, psi * psi.adjoint())));
  CHECK(is_ppt(BipartiteOperator(3, oracle::identity(3) / 9.0)));
}

TEST_CASE("local conjugation matches the Kronecker oracle") {
  std::mt19937_64 rng(8);
  const int d = 3;
  const Matrix w = oracle::random_unitary(d, rng);
  const Matrix m = oracle::random_hermitian(d * d, rng);
  const Matrix ww = oracle::kron(w, w);
  CHECK(oracle::max_abs(local_conjugate(BipartiteOperator(d, m), w).matrix() -
                        ww * m * ww.adjoint()) < 1e-12);
  const Vector v = oracle::random_vector(d * d, rng);
  CHECK(oracle::max_abs(apply_local(PureState(d, v), w).amplitudes() - ww * v) < 1e-12);
}

TEST_CASE("embedding pads with zero weight") {
  const auto pa = antisymmetric_projector(2);
  const auto big = embed(pa, 4);
  CHECK(big.local_dim() == 4);
  CHECK(big.element(1, 2, 2, 1) == pa.element(1, 2, 2, 1));
  CHECK(big.element(3, 4, 3, 4) == Complex(0.0));
  CHECK(big.trace() == pa.trace());
  CHECK_THROWS(embed(pa, 1));
}

TEST_CASE("amplitude matrix round trip") {
  std::mt19937_64 rng(9);
  const Vector v = oracle::random_vector(16, rng);
  const PureState s(4, v);
  // The constructor rescales to unit norm, so allow rounding.
  CHECK(oracle::max_abs(s.amplitude_matrix() - oracle::amplitudes(v, 4)) <= 1e-15);
  CHECK(oracle::max_abs(PureState::from_amplitude_matrix(s.amplitude_matrix()).amplitudes() - v) <=
        1e-15);
}
