#include <cmath>
#include <random>

#include "doctest.h"

#include "coherence/errors.hpp"
#include "coherence/qmath.hpp"

using namespace coherence;

namespace {

ComplexMatrix gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

ComplexMatrix random_hermitian(int d, std::mt19937_64& rng) {
  const ComplexMatrix g = gaussian(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

ComplexMatrix random_psd_unit_trace(int d, std::mt19937_64& rng) {
  const ComplexMatrix g = gaussian(d, d, rng);
  ComplexMatrix r = g * g.adjoint();
  return r / r.trace().real();
}

}  // namespace

TEST_CASE("dagger and tensor") {
  ComplexMatrix a(2, 2);
  a << Complex(1, 2), Complex(3, -1), Complex(0, 1), Complex(4, 0);
  CHECK(dagger(a)(0, 1) == std::conj(a(1, 0)));
  CHECK(max_abs(dagger(dagger(a)) - a) == 0.0);

  ComplexMatrix b = ComplexMatrix::Identity(3, 3);
  const ComplexMatrix t = tensor(a, b);
  REQUIRE(t.rows() == 6);
  // (a x b)_{(i,k),(j,l)} = a_ij b_kl
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) CHECK(t(3 * i + k, 3 * j + l) == a(i, j) * b(k, l));
}

TEST_CASE("partial trace of a product recovers the factors") {
  std::mt19937_64 rng(11);
  for (int d1 = 1; d1 <= 3; ++d1)
    for (int d2 = 1; d2 <= 3; ++d2) {
      const ComplexMatrix a = random_psd_unit_trace(d1, rng);
      const ComplexMatrix b = random_psd_unit_trace(d2, rng);
      const ComplexMatrix ab = tensor(a, b);
      CHECK(max_abs(partial_trace(ab, d1, d2, Subsystem::First) - a) < 1e-12);
      CHECK(max_abs(partial_trace(ab, d1, d2, Subsystem::Second) - b) < 1e-12);
    }
  CHECK_THROWS_AS(partial_trace(ComplexMatrix::Identity(5, 5), 2, 2, Subsystem::First), DimensionError);
}

TEST_CASE("hermitian eigendecomposition reconstructs up to 9x9") {
  std::mt19937_64 rng(3);
  for (int d = 1; d <= 9; ++d) {
    const ComplexMatrix h = random_hermitian(d, rng);
    const HermitianEigen e = hermitian_eigen(h);
    const ComplexMatrix& v = e.eigenvectors;
    CHECK(max_abs(v.adjoint() * v - ComplexMatrix::Identity(d, d)) < 1e-12);
    CHECK(max_abs(v * e.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint() - h) < 1e-10 * (1 + max_abs(h)));
    for (int k = 1; k < d; ++k) CHECK(e.eigenvalues(k - 1) <= e.eigenvalues(k));
    CHECK(std::abs(e.eigenvalues.sum() - h.trace().real()) < 1e-10);
  }
  ComplexMatrix not_hermitian = ComplexMatrix::Zero(2, 2);
  not_hermitian(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eigen(not_hermitian), DomainError);
}

TEST_CASE("entropies") {
  const double uniform[] = {0.25, 0.25, 0.25, 0.25};
  CHECK(shannon_entropy(uniform) == doctest::Approx(2.0).epsilon(1e-14));
  const double point[] = {1.0, 0.0};
  CHECK(shannon_entropy(point) == 0.0);
  CHECK(von_neumann_entropy(ComplexMatrix::Identity(3, 3) / 3.0) == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK_THROWS_AS(binary_entropy(1.5), DomainError);

  std::mt19937_64 rng(5);
  for (int d = 2; d <= 5; ++d) {
    const ComplexMatrix rho = random_psd_unit_trace(d, rng);
    const double s = von_neumann_entropy(rho);
    CHECK(s >= -1e-12);
    CHECK(s <= std::log2(d) + 1e-12);
    // basis independence
    const ComplexMatrix u = polar_factor(gaussian(d, d, rng));
    CHECK(std::abs(von_neumann_entropy(u * rho * u.adjoint()) - s) < 1e-10);
  }
}

TEST_CASE("relative entropy") {
  std::mt19937_64 rng(9);
  const ComplexMatrix rho = random_psd_unit_trace(3, rng);
  CHECK(std::abs(relative_entropy(rho, rho)) < 1e-10);
  CHECK(relative_entropy(rho, random_psd_unit_trace(3, rng)) >= 0.0);

  ComplexMatrix pure0 = ComplexMatrix::Zero(2, 2);
  pure0(0, 0) = 1.0;
  ComplexMatrix pure1 = ComplexMatrix::Zero(2, 2);
  pure1(1, 1) = 1.0;
  CHECK(std::isinf(relative_entropy(pure0, pure1)));

  // S(rho || Delta rho) = S(Delta rho) - S(rho)
  ComplexMatrix dephased = ComplexMatrix::Zero(3, 3);
  dephased.diagonal() = rho.diagonal();
  CHECK(std::abs(relative_entropy(rho, dephased) - (von_neumann_entropy(dephased) - von_neumann_entropy(rho))) < 1e-10);
}

TEST_CASE("trace norm") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix a = random_hermitian(4, rng);
    const ComplexMatrix b = random_hermitian(4, rng);
    CHECK(trace_norm(a + b) <= trace_norm(a) + trace_norm(b) + 1e-12);
    const HermitianEigen e = hermitian_eigen(a);
    CHECK(std::abs(trace_norm(a) - e.eigenvalues.cwiseAbs().sum()) < 1e-10);
  }
}

TEST_CASE("polar factor is unitary") {
  std::mt19937_64 rng(2);
  const ComplexMatrix u = polar_factor(gaussian(4, 4, rng));
  CHECK(max_abs(u.adjoint() * u - ComplexMatrix::Identity(4, 4)) < 1e-12);
}
