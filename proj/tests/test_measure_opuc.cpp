#include "szego/errors.hpp"
#include "szego/measure.hpp"

#include <doctest.h>

#include <cmath>
#include <thread>

using namespace szego;
using cd = std::complex<double>;

namespace {

MeasureSpec one_mass(PrecisionTag p = PrecisionTag::Bits256) {
  MeasureSpec mu;
  mu.spectrum = PointSpectrum({{{1.5, 0.0}, 0.3}});
  mu.precision = p;
  return mu;
}

MeasureSpec two_mass() {
  MeasureSpec mu;
  mu.spectrum = PointSpectrum({{{1.5, 0.0}, 0.3}, {{-1.25, 0.0}, 0.1}});
  return mu;
}

MeasureSpec bernstein_szego(PrecisionTag p = PrecisionTag::Bits128) {
  MeasureSpec mu;
  mu.weight = OuterWeight(LaurentPolynomial(0, {1.0, -0.5}));
  mu.precision = p;
  return mu;
}

// Sherman-Morrison for G = I + μ w w*, w_j = conj(z)^j.
double tau_one_mass(double r, double mu, int n) {
  double S = 0.0;
  for (int j = 0; j < n; ++j) S += std::pow(r, 2 * j);
  return 1.0 / std::sqrt(1.0 + mu * std::pow(r, 2 * n) / (1.0 + mu * S));
}

}  // namespace

TEST_CASE("outer weight validation") {
  CHECK_THROWS_AS(OuterWeight(LaurentPolynomial(0, {cd(1.0, 0.1)})), InputError);
  CHECK_THROWS_AS(OuterWeight(LaurentPolynomial(0, {-1.0})), InputError);
  CHECK_THROWS_AS(OuterWeight(LaurentPolynomial(0, {1.0, -2.0})), InputError);  // zero at 1/2
  CHECK_THROWS_AS(OuterWeight(LaurentPolynomial(0, {1.0, -1.0})), InputError);  // zero on the circle
  CHECK_THROWS_AS(OuterWeight(LaurentPolynomial(-1, {1.0, 1.0})), InputError);
  CHECK_THROWS_AS(OuterWeight(LaurentPolynomial(0, {0.0})), InputError);
  const OuterWeight w(LaurentPolynomial(0, {1.0, -0.5}));
  CHECK(w.delta_floor() == doctest::Approx(0.5));
  CHECK(w.value_at_zero() == 1.0);
  CHECK(OuterWeight::unit().is_constant());
  try {
    OuterWeight(LaurentPolynomial(0, {-2.0}));
  } catch (const InputError& e) {
    CHECK(e.field() == "psi");
  }
}

TEST_CASE("point spectrum validation") {
  CHECK_THROWS_AS(PointSpectrum({{{0.5, 0.0}, 1.0}}), InputError);
  CHECK_THROWS_AS(PointSpectrum({{{1.0, 0.0}, 1.0}}), InputError);
  CHECK_THROWS_AS(PointSpectrum({{{2.0, 0.0}, 0.0}}), InputError);
  const PointSpectrum s = two_mass().spectrum;
  CHECK(s.mass_sum() == doctest::Approx(0.4));
  CHECK(s.blaschke_sum() == doctest::Approx(0.75));
  CHECK(std::abs(s.reflected_zeros().zeros()[1] - cd(-0.8, 0.0)) < 1e-15);
  CHECK(reflected_blaschke(s).value_at_zero().real() == doctest::Approx(0.8 / 1.5));
  CHECK(target_b0_psi0(two_mass()) == doctest::Approx(0.5333333333333333));
}

TEST_CASE("gram matrices") {
  const MomentTable<double> t(one_mass(PrecisionTag::Bits53));
  const auto g = gram_polynomial(t, 1);
  CHECK(g(0, 0).real() == doctest::Approx(1.3));
  CHECK(g(0, 1).real() == doctest::Approx(0.45));
  CHECK(g(1, 0).real() == doctest::Approx(0.45));
  CHECK(g(1, 1).real() == doctest::Approx(1.675));

  const MomentTable<double> plain(MeasureSpec{});
  const auto id = gram_laurent(plain, 1);
  CHECK(id.dim() == 2);
  CHECK(id(0, 0) == cd(1.0));
  CHECK(id(0, 1) == cd(0.0));
  CHECK(id(1, 1) == cd(1.0));

  const auto gl = gram_laurent(t, 1);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(gl(i, j) == g(i, j));
  CHECK(gram_laurent(t, 2)(0, 0).real() == doctest::Approx(1.0 + 0.3 / 2.25));

  // Nesting.
  const MomentTable<Real128> t2(two_mass());
  const auto big = gram_polynomial(t2, 9), small = gram_polynomial(t2, 8);
  for (std::size_t i = 0; i < small.dim(); ++i)
    for (std::size_t j = 0; j < small.dim(); ++j) CHECK(big(i, j) == small(i, j));
  CHECK_THROWS_AS(gram_laurent(t, 0), PreconditionError);
}

TEST_CASE("one mass: closed form") {
  const Opuc op(one_mass());
  CHECK(op.tau(0).value == doctest::Approx(1 / std::sqrt(1.3)).epsilon(1e-14));
  for (int n = 0; n <= 24; ++n) CHECK(op.tau(n).value == doctest::Approx(tau_one_mass(1.5, 0.3, n)).epsilon(1e-12));
  CHECK(op.tau(60).value == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(op.eta(1).value == doctest::Approx(op.tau(1).value).epsilon(1e-14));
}

TEST_CASE("trivial measure") {
  const Opuc op{MeasureSpec{}};
  for (int n = 1; n <= 8; ++n) {
    CHECK(op.tau(n).value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(op.eta(n).value == doctest::Approx(1.0).epsilon(1e-14));
  }
  const auto p = orthonormal_element(op.table<Real256>(), 2, false);
  CHECK(to_double(p.coeff(2)) == cd(1.0));
  CHECK(std::abs(to_double(p.coeff(0))) < 1e-70);
  CHECK(std::abs(to_double(p.coeff(1))) < 1e-70);
}

TEST_CASE("bernstein-szego weight") {
  const Opuc op(bernstein_szego());
  const MomentTable<Real128>& t = op.table<Real128>();
  for (int d = -10; d <= 10; ++d) {
    const double oracle = std::pow(0.5, std::abs(d)) / 0.75;
    CHECK(std::abs(to_double(t.weight_coeff(d)) - oracle) < 1e-30);
  }
  CHECK(op.tau(0).value == doctest::Approx(std::sqrt(0.75)).epsilon(1e-14));
  for (int n = 1; n <= 12; ++n) CHECK(std::abs(op.tau(n).value - 1.0) < 1e-10);
  CHECK(op.tau(5).precision == PrecisionTag::Bits128);
}

TEST_CASE("orthonormal elements") {
  const Opuc op(one_mass());
  const MomentTable<Real256>& t = op.table<Real256>();
  const auto p0 = orthonormal_element(t, 0, false);
  CHECK(to_double(p0.coeff(0)).real() == doctest::Approx(1 / std::sqrt(1.3)));
  for (bool laurent : {false, true}) {
    const int n = 10;
    const auto p = orthonormal_element(t, n, laurent);
    CHECK(std::abs(to_double(Real256(l2_norm_sq(t, p) - 1))) < 1e-20);
    CHECK(to_double(p.coeff(n).imag()) == 0.0);
    CHECK(to_double(p.coeff(n).real()) > 0.0);
    for (int j = laurent ? -(n - 1) : 0; j < n; ++j) {
      Complex<Real256> ip{};
      for (int e = p.lo(); e <= p.hi(); ++e) ip += p.coeff(e) * t.moment(e, j);
      CHECK(std::abs(to_double(ip)) < 1e-20);
    }
  }
}

TEST_CASE("larger span never lowers the leading coefficient") {
  for (const MeasureSpec& mu : {one_mass(), two_mass(), bernstein_szego()}) {
    const Opuc op(mu);
    for (int n = 1; n <= 12; ++n) CHECK(op.eta(n).value >= op.tau(n).value - 1e-14);
  }
}

TEST_CASE("rotation invariance") {
  const cd w = std::polar(1.0, 0.7);
  MeasureSpec rot;
  rot.spectrum = PointSpectrum({{w * 1.5, 0.3}, {w * -1.25, 0.1}});
  const Opuc a(two_mass()), b(rot);
  for (int n : {0, 3, 7, 15}) CHECK(std::abs(a.tau(n).value - b.tau(n).value) < 1e-12);
}

TEST_CASE("precision escalation is reported") {
  MeasureSpec mu = two_mass();
  mu.precision = PrecisionTag::Bits53;
  const Opuc low(mu);
  const LeadingCoefficient c = low.eta(30);
  CHECK(c.escalations > 0);
  CHECK(c.precision != PrecisionTag::Bits53);
  CHECK(c.value == doctest::Approx(Opuc(two_mass()).eta(30).value).epsilon(1e-14));

  MeasureSpec far;
  far.spectrum = PointSpectrum({{{16.0, 0.0}, 1.0}});
  far.precision = PrecisionTag::Bits512;
  try {
    (void)Opuc(far).tau(70);
    FAIL("expected exhaustion");
  } catch (const NumericError& e) {
    CHECK(e.code() == "PrecisionExhausted");
  }
}

TEST_CASE("residue identity") {
  const Opuc plain{MeasureSpec{}};
  for (int n : {1, 5, 9}) CHECK(plain.residue_check(n, 0).abs_diff < 1e-10);
  const Opuc op(one_mass());
  const ResidueCheck r = op.residue_check(6, 1);
  CHECK(r.abs_diff < 1e-8);
  CHECK(r.lhs_abs <= 1 + 1e-8);
  const Opuc two(two_mass());
  for (int n : {4, 8})
    for (int k : {0, 1, 2}) {
      const ResidueCheck c = two.residue_check(n, k);
      CHECK(c.abs_diff < 1e-8);
      CHECK(c.lhs_abs <= 1 + 1e-8);
    }
  MeasureSpec psi = bernstein_szego(PrecisionTag::Bits256);
  psi.spectrum = one_mass().spectrum;
  CHECK(Opuc(psi).residue_check(7, 1).abs_diff < 1e-8);

  MeasureSpec dbl;
  dbl.spectrum = PointSpectrum({{{1.5, 0.0}, 0.3}, {{1.5, 0.0}, 0.2}});
  CHECK_THROWS_AS(Opuc(dbl).residue_check(4, 2), NumericError);
  CHECK_THROWS_AS(op.residue_check(4, 2), PreconditionError);
}

TEST_CASE("log condition report") {
  const double A[] = {1.0, 2.0};
  const LogConditionReport empty = log_condition_report(PointSpectrum(), A, 256);
  for (double v : empty.tail_mass) CHECK(v == 0.0);
  CHECK(empty.any_pass());

  std::vector<PointMass> pm;
  for (int k = 1; k <= 30; ++k) pm.push_back({{1.0 + std::ldexp(1.0, -k), 0.0}, std::ldexp(1.0, -k)});
  const LogConditionReport rep = log_condition_report(PointSpectrum(pm), A, 1000);
  CHECK(rep.n_grid.back() == 1000);
  for (std::size_t i = 0; i < rep.n_grid.size(); ++i) {
    const int n = rep.n_grid[i];
    double tail = 0.0;  // direct summation
    for (int k = 1; k <= 30; ++k)
      if (std::ldexp(1.0, -k) < 1.0 / n) tail += std::ldexp(1.0, -k);
    CHECK(rep.tail_mass[i] == doctest::Approx(tail));
    CHECK(rep.scaled[1][i] == doctest::Approx(std::pow(std::log(n), 2.0) * tail));
  }
  CHECK(rep.bounded[0]);

  const LogConditionReport bad = log_condition_report(PointSpectrum({{{1.01, 0.0}, 1.0}}), A, 64);
  CHECK_FALSE(bad.any_pass());
  CHECK_THROWS_AS(log_condition_report(PointSpectrum(), std::span<const double>(), 8), PreconditionError);
}

TEST_CASE("moment table is order independent under concurrency") {
  MeasureSpec mu;
  mu.weight = OuterWeight(LaurentPolynomial(0, {1.0, cd(0.3, 0.4), -0.2}));
  mu.precision = PrecisionTag::Bits128;
  const MomentTable<Real128> seq(mu), par(mu);
  std::vector<Complex<Real128>> a(300), b(300);
  for (int d = 0; d < 300; ++d) a[static_cast<std::size_t>(d)] = seq.weight_coeff(d - 150);
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < 4; ++w)
      pool.emplace_back([&, w] {
        for (int i = 299 - w; i >= 0; i -= 4) b[static_cast<std::size_t>(i)] = par.weight_coeff(i - 150);
      });
  }
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  CHECK(std::abs(to_double(seq.weight_coeff(3)) - std::conj(to_double(seq.weight_coeff(-3)))) < 1e-30);
}
