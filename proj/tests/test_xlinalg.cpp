#include "szego/xlinalg.hpp"

#include <doctest.h>

#include <random>

using namespace szego;

namespace {

template <class R>
HermitianMatrix<R> random_hpd(std::mt19937_64& gen, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<Complex<R>> a(n * n);
  for (auto& x : a) x = Complex<R>(R(g(gen)), R(g(gen)));
  HermitianMatrix<R> m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex<R> s = i == j ? Complex<R>(R(0.5)) : Complex<R>{};
      for (std::size_t k = 0; k < n; ++k) s += std::conj(a[k * n + i]) * a[k * n + j];
      m(i, j) = s;
    }
  return m;
}

template <class R>
HermitianMatrix<R> hilbert(std::size_t n) {
  HermitianMatrix<R> m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex<R>(R(1) / R(static_cast<double>(i + j + 1)));
  return m;
}

}  // namespace

TEST_CASE("cholesky of a small matrix") {
  HermitianMatrix<double> g(2);
  g(0, 0) = 4;
  g(0, 1) = {2, 2};
  g(1, 0) = {2, -2};
  g(1, 1) = 6;
  const LowerTriangular<double> l = cholesky(g);
  CHECK(l(0, 0).real() == doctest::Approx(2));
  CHECK(std::abs(l(1, 0) - std::complex<double>(1, -1)) < 1e-15);
  CHECK(l(1, 1).real() == doctest::Approx(2));
  CHECK(cholesky_residual(g, l) < 1e-15);
  // (G^{-1})_22 = 4/(24 - 8) so the leading coefficient is 1/2.
  CHECK(schur_leading(g) == doctest::Approx(0.5));
  CHECK(constrained_max_leading(g).eta == doctest::Approx(0.5));
}

TEST_CASE("failures") {
  HermitianMatrix<double> g(2);
  g(0, 0) = 1;
  g(0, 1) = 2;
  g(1, 0) = 2;
  g(1, 1) = 1;
  CHECK_THROWS_AS(cholesky(g), NotPositiveDefinite);
  g(1, 0) = 3;
  CHECK_THROWS_AS(cholesky(g), PreconditionError);
  CHECK_THROWS_AS(schur_leading(HermitianMatrix<double>(0)), PreconditionError);
}

TEST_CASE("half-mantissa guard escalates with precision") {
  CHECK_THROWS_AS(cholesky(hilbert<double>(12)), NotPositiveDefinite);
  const auto g = hilbert<Real256>(12);
  const auto l = cholesky(g);
  CHECK(to_double(cholesky_residual(g, l)) < 1e-60);
  // Both routes at 256 bits.
  const Real256 a = schur_leading(g), b = constrained_max_leading(g).eta;
  CHECK(to_double(Real256(abs(a - b) / a)) < 1e-40);
}

TEST_CASE("schur and elimination routes agree on random matrices") {
  std::mt19937_64 gen(17);
  for (std::size_t n : {1u, 2u, 5u, 12u, 30u}) {
    const auto g = random_hpd<double>(gen, n);
    CHECK(schur_leading(g) == doctest::Approx(constrained_max_leading(g).eta).epsilon(1e-10));
    const auto h = random_hpd<Real128>(gen, n);
    const Real128 a = schur_leading(h), b = constrained_max_leading(h).eta;
    CHECK(to_double(Real128(abs(a - b) / a)) < 1e-25);
  }
}

TEST_CASE("extremal witness") {
  std::mt19937_64 gen(23);
  const auto g = random_hpd<double>(gen, 8);
  const ExtremalSolution<double> sol = constrained_max_leading(g);
  CHECK(quadratic_form(g, sol.witness) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sol.witness.back().real() == doctest::Approx(sol.eta));
  CHECK(std::abs(sol.witness.back().imag()) < 1e-14);
  // Random feasible vectors never beat the extremal value.
  std::normal_distribution<double> nd;
  for (int q = 0; q < 500; ++q) {
    std::vector<std::complex<double>> v(8);
    for (auto& x : v) x = {nd(gen), nd(gen)};
    const double scale = std::sqrt(quadratic_form(g, v));
    CHECK(std::abs(v.back()) / scale <= sol.eta * (1 + 1e-12));
  }
}

TEST_CASE("matrix helpers") {
  std::mt19937_64 gen(29);
  const auto g = random_hpd<double>(gen, 6);
  CHECK(g.is_hermitian(1e-15));
  const auto b = g.leading_block(3);
  CHECK(b.dim() == 3);
  CHECK(b(2, 1) == g(2, 1));
  CHECK(HermitianMatrix<double>::identity(4).max_abs() == 1.0);
  const auto e = HermitianMatrix<double>::identity(3);
  CHECK(schur_leading(e) == 1.0);
}
