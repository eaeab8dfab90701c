#include "szego/asymptotics.hpp"
#include "szego/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace szego;
using cd = std::complex<double>;

namespace {

MeasureSpec one_mass() {
  MeasureSpec mu;
  mu.spectrum = PointSpectrum({{{1.5, 0.0}, 0.3}});
  return mu;
}

MeasureSpec two_mass() {
  MeasureSpec mu;
  mu.spectrum = PointSpectrum({{{1.5, 0.0}, 0.3}, {{-1.25, 0.0}, 0.1}});
  return mu;
}

void check_certificate(const PipelineResult& r) {
  const PipelineCertificate& c = r.cert;
  CHECK(c.bookkeeping_rel_error <= 1e-12);
  CHECK(c.total_norm * c.total_norm ==
        doctest::Approx(c.ac_norm + c.alpha1 + c.alpha2).epsilon(1e-12));
  CHECK(c.schwarz_ok);
  CHECK(c.sup_defect <= c.sup_defect_bound * (1 + 1e-9));
  CHECK(c.dominance_ok());
  CHECK(r.competitor.coeff(c.n).imag() == 0.0);
  CHECK(r.competitor.coeff(c.n).real() == doctest::Approx(c.lower_bound).epsilon(1e-12));
}

}  // namespace

TEST_CASE("schedule functions") {
  const double L = std::log(std::log(64.0 + 16));
  CHECK(ScheduleFunction::loglog(0.5)(64) == doctest::Approx(0.5 * L));
  CHECK(ScheduleFunction::inv_loglog_sq(1)(64) == doctest::Approx(1 / (L * L)));
  CHECK(ScheduleFunction::inv_log(2)(64) == doctest::Approx(2 / std::log(80.0)));
  CHECK(ScheduleFunction::constant(0.3)(1000) == 0.3);
  CHECK(ScheduleFunction::parse("inv_log", 1).family() == ScheduleFunction::Family::InvLog);
  CHECK_THROWS_AS(ScheduleFunction::parse("cubic", 1), InputError);
  CHECK_THROWS_AS(ScheduleFunction::constant(-1), InputError);

  const ScheduleParams s;
  CHECK(s.delta(64) == doctest::Approx(std::log(64.0) * std::exp(-2 * L)));
  CHECK(s.resolve_C(two_mass().spectrum) == doctest::Approx(2 * ((1 - 1 / 1.5) + (1 - 1 / 1.25))));
}

TEST_CASE("schedule validation on the grid") {
  const ScheduleParams s;
  const int good[] = {48, 64, 96, 128, 256};
  CHECK_NOTHROW(validate_schedule(s, good));
  const int early[] = {8, 16};
  CHECK_THROWS_AS(validate_schedule(s, early), ScheduleViolation);
  ScheduleParams flat;
  flat.eps = ScheduleFunction::constant(0.1);
  flat.A = ScheduleFunction::constant(2.0);
  CHECK_THROWS_AS(validate_schedule(flat, good), ScheduleViolation);
  const int unsorted[] = {64, 48};
  CHECK_THROWS_AS(validate_schedule(s, unsorted), PreconditionError);
}

TEST_CASE("partial product selection") {
  const ScheduleParams s;
  const PartialProduct empty = partial_product(PointSpectrum(), 64, s);
  CHECK(empty.selected.empty());
  CHECK(empty.k_n == static_cast<int>(std::floor(s.A(64) * s.eps(64) * 64)));
  CHECK(empty.l_n == static_cast<int>(std::ceil(s.A(64) * empty.k_n)));
  CHECK(empty.radius == doctest::Approx(1.0 + 1.0 / empty.l_n));

  const PartialProduct one = partial_product(one_mass().spectrum, 64, s);
  REQUIRE(one.selected.size() == 1);
  CHECK(std::abs(one.zeros.zeros()[0] - cd(2.0 / 3.0)) < 1e-15);

  // ζ_k = 1 - 2^-k: kept exactly when 2^-k > 1/k_n.
  std::vector<PointMass> pm;
  for (int k = 1; k <= 12; ++k) pm.push_back({{1.0 / (1.0 - std::ldexp(1.0, -k)), 0.0}, 0.01});
  for (int n : {64, 512, 4096}) {
    const PartialProduct pp = partial_product(PointSpectrum(pm), n, s);
    std::vector<std::size_t> oracle;
    for (int k = 1; k <= 12; ++k)
      if (std::ldexp(1.0, -k) > 1.0 / pp.k_n * (1 + 1e-12)) oracle.push_back(static_cast<std::size_t>(k - 1));
    CHECK(pp.selected == oracle);
  }

  CHECK_THROWS_AS(partial_product(PointSpectrum(), 4, s), PreconditionError);
  ScheduleParams tiny;
  tiny.eps = ScheduleFunction::constant(1e-6);
  CHECK_THROWS_AS(partial_product(PointSpectrum(), 64, tiny), ScheduleViolation);
}

TEST_CASE("empty spectrum: trivial approximants") {
  const ScheduleParams s;
  const Opuc op{MeasureSpec{}};
  for (auto route : {Route::Eta, Route::Tau}) {
    const PipelineResult r = route == Route::Eta ? vp_approximant(op, 32, s) : taylor_approximant(op, 32, s);
    CHECK(r.approximant.normalized() == LaurentPolynomial::monomial(0, 1.0));
    CHECK(r.cert.total_norm == doctest::Approx(1.0));
    CHECK(r.cert.lower_bound == doctest::Approx(1.0));
    CHECK(r.cert.sup_defect < 1e-14);
    check_certificate(r);
  }
}

TEST_CASE("one mass: competitors stay below the optimum") {
  const ScheduleParams s;
  const Opuc op(one_mass());
  for (int n : {48, 64}) {
    PipelineResult v = vp_approximant(op, n, s);
    v.cert.optimum = op.eta(n).value;
    check_certificate(v);
    CHECK(v.competitor.lo() == -(n - 1));
    CHECK(v.competitor.hi() == n);
    CHECK(v.cert.lower_bound >= 2.0 / 3.0 - v.cert.leading_gap - 0.05);

    PipelineResult t = taylor_approximant(op, n, s);
    t.cert.optimum = op.tau(n).value;
    check_certificate(t);
    CHECK(t.competitor.lo() == 0);
    CHECK(t.competitor.hi() == n);
    CHECK(t.cert.sup_defect <= t.cert.cauchy_bound);
    CHECK(t.cert.lower_bound >= 2.0 / 3.0 - 0.05);
  }
}

TEST_CASE("normalized competitor has unit norm") {
  const ScheduleParams s;
  const Opuc op(two_mass());
  const PipelineResult r = vp_approximant(op, 48, s);
  std::vector<Complex<Real256>> c;
  for (const cd& x : r.competitor.coeffs()) c.push_back(widen<Real256>(x));
  const Laurent<Real256> comp(r.competitor.lo(), c);
  CHECK(to_double(l2_norm_sq(op.table<Real256>(), comp)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("non-constant weight with a mass") {
  MeasureSpec mu = one_mass();
  mu.weight = OuterWeight(LaurentPolynomial(0, {1.0, -0.5}));
  const Opuc op(mu);
  PipelineResult r = vp_approximant(op, 48, ScheduleParams{});
  r.cert.optimum = op.eta(48).value;
  check_certificate(r);
  CHECK(r.cert.lower_bound == doctest::Approx(target_b0_psi0(mu)).epsilon(0.05));
}

TEST_CASE("defect decays along the default schedule") {
  const ScheduleParams s;
  const Opuc op(two_mass());
  double prev = INFINITY;
  for (int n : {48, 64, 96, 128}) {
    const double d = vp_approximant(op, n, s).cert.sup_defect;
    CHECK(d <= 2 * prev);
    prev = d;
  }
}

TEST_CASE("log condition gates the taylor route") {
  MeasureSpec mu;
  mu.spectrum = PointSpectrum({{{1.01, 0.0}, 1.0}});
  CHECK_THROWS_AS(taylor_approximant(mu, 64, ScheduleParams{}), LogConditionFailed);
  CHECK_NOTHROW(vp_approximant(mu, 64, ScheduleParams{}));
}

TEST_CASE("convergence experiment") {
  const int grid[] = {1, 2, 4, 8};
  const ConvergenceReport trivial = convergence_experiment(MeasureSpec{}, grid, Which::Both);
  CHECK(trivial.target == 1.0);
  for (const auto& row : trivial.rows) {
    CHECK(*row.tau_error < 1e-14);
    CHECK(*row.eta_error < 1e-14);
  }

  MeasureSpec bs;
  bs.weight = OuterWeight(LaurentPolynomial(0, {1.0, -0.5}));
  const ConvergenceReport b = convergence_experiment(bs, grid, Which::Tau, 2);
  for (const auto& row : b.rows) {
    CHECK(*row.tau_error < 1e-10);
    CHECK_FALSE(row.eta.has_value());
  }

  const int g2[] = {8, 16, 24, 32};
  const ConvergenceReport two = convergence_experiment(two_mass(), g2, Which::Both, 3);
  CHECK(two.target == doctest::Approx(0.5333333333333333));
  CHECK(two.tau_monotone);
  CHECK(two.eta_monotone);
  const int bad[] = {4, 2};
  CHECK_THROWS_AS(convergence_experiment(two_mass(), bad, Which::Both), PreconditionError);
  CHECK_THROWS_AS(parse_which("all"), InputError);
}
