#include "szego/asymptotics.hpp"

#include "szego/circle_fourier.hpp"
#include "szego/errors.hpp"
#include "szego/fft.hpp"
#include "szego/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace szego {
namespace {

using cd = std::complex<double>;
using R = Real256;
using C = Complex<R>;

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// (1/2π)∫ dθ/|ρe^{iθ} - 1| for ρ > 1.
double mean_inverse_distance(double rho) {
  const double k = 2 * std::sqrt(rho) / (rho + 1);
  return 2 * std::comp_ellint_1(k) / (std::numbers::pi * (rho + 1));
}

double unit_uniform(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1p-53; }

C horner(const std::vector<C>& c, const C& z) {
  C acc{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

PipelineResult run_pipeline(const Opuc& opuc, int n, const ScheduleParams& sched, Route route) {
  const MeasureSpec& mu = opuc.measure();
  const PointSpectrum& spectrum = mu.spectrum;
  const LaurentPolynomial& psi = mu.weight.psi();
  if (route == Route::Tau) {
    const double A_list[] = {1.0, 2.0};
    if (!log_condition_report(spectrum, A_list, std::max(n, 2)).any_pass())
      throw LogConditionFailed("tail masses near the circle do not satisfy the log condition for A in {1, 2}");
  }

  const PartialProduct pp = partial_product(spectrum, n, sched);
  const DilatedCorrector corrector(pp.zeros, pp.radius);
  const int upto = route == Route::Eta ? 2 * n - 1 : n;
  const KernelSpec kernel = route == Route::Eta ? KernelSpec::modified_vp(n) : KernelSpec::dirichlet(n);

  // f = ψ·B_nφ by exact series, then the kernel multipliers.
  const std::vector<C> bphi = taylor_series<R>(corrector, upto);
  std::vector<C> f(static_cast<std::size_t>(upto) + 1), g(f.size());
  for (int j = 0; j <= upto; ++j) {
    C s{};
    for (int i = 0; i <= std::min(j, psi.hi()); ++i) s += widen<R>(psi.coeff(i)) * bphi[static_cast<std::size_t>(j - i)];
    f[static_cast<std::size_t>(j)] = s;
    const Rational m = kernel.multiplier(j);
    g[static_cast<std::size_t>(j)] = s * (R(static_cast<double>(m.num)) / R(static_cast<double>(m.den)));
  }
  std::vector<cd> gd(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) gd[j] = to_double(g[j]);
  const LaurentPolynomial G(0, gd);

  auto f_at = [&](cd z) { return eval_B_phi(corrector, z) * psi(z); };
  auto defect_at = [&](cd z) { return std::abs(G(z) - f_at(z)); };

  PipelineCertificate cert;
  cert.route = route;
  cert.n = n;
  cert.k_n = pp.k_n;
  cert.l_n = pp.l_n;
  cert.radius = pp.radius;
  cert.A_n = pp.A_n;
  cert.eps_n = pp.eps_n;
  cert.selected = static_cast<int>(pp.selected.size());

  // sup over the circle of the defect: sampled, then refined around the best node.
  {
    const std::size_t M = fft::next_pow2(static_cast<std::size_t>(std::max(32 * n, 64 * pp.l_n)));
    const CircleGrid grid = sample_on_grid(G, M);
    double best = -1.0;
    std::size_t at = 0;
    for (std::size_t m = 0; m < M; ++m) {
      const cd z = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(M));
      const double v = std::abs(grid.values[m] - f_at(z));
      if (v > best) {
        best = v;
        at = m;
      }
    }
    const double h = 2 * std::numbers::pi / static_cast<double>(M);
    cert.sup_defect = golden_refine([&](double t) { return defect_at(std::polar(1.0, t)); },
                                    h * static_cast<double>(at), h, 40);
  }

  // Coefficient majorant: exact head plus the Cauchy tail of ψ·B_nφ on |z| = R.
  const double Rr = pp.radius;
  double psi_at_R = 0.0;
  for (int i = 0; i <= psi.hi(); ++i) psi_at_R += std::abs(psi.coeff(i)) * std::pow(Rr, i);
  const double sup_on_R = std::pow(Rr, cert.selected) * psi_at_R;
  {
    R head(0);
    for (std::size_t j = 0; j < f.size(); ++j) head += abs(f[j] - g[j]);
    cert.sup_defect_bound = to_double(head) + sup_on_R * std::pow(Rr, -(upto + 1)) / (1 - 1 / Rr);
  }
  if (route == Route::Tau) cert.cauchy_bound = sup_on_R * std::pow(Rr, -n) * mean_inverse_distance(Rr);

  // Interior points: the defect vanishes to order n + 1 at the origin.
  {
    std::seed_seq seq{static_cast<unsigned>(n), static_cast<unsigned>(route == Route::Eta ? 1 : 2)};
    std::mt19937_64 gen(seq);
    double worst = -std::numeric_limits<double>::infinity();
    for (double r : {0.5, 0.9})
      for (int q = 0; q < 32; ++q) {
        const cd z = std::polar(r, 2 * std::numbers::pi * unit_uniform(gen));
        worst = std::max(worst, defect_at(z) - cert.sup_defect * std::pow(r, n));
      }
    cert.schwarz_worst_excess = worst;
    cert.schwarz_ok = worst <= 1e-9;
  }

  // Masses: |R_n(z_k)| = |r(ζ_k)| with r = G/z^n.
  std::vector<bool> is_selected(spectrum.size(), false);
  for (std::size_t i : pp.selected) is_selected[i] = true;
  double tail_mu = 0.0;
  R alpha1(0), alpha2(0);
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const PointMass& m = spectrum.masses()[i];
    const C zeta = C(R(1)) / std::conj(widen<R>(m.z));
    const C r = horner(g, zeta) / ipow(zeta, n);
    const R contrib = R(m.mu) * std::norm(r);
    if (is_selected[i]) {
      alpha1 += contrib;
      cert.point_bound = std::max(cert.point_bound, to_double(R(abs(r))));
    } else {
      alpha2 += contrib;
      tail_mu += m.mu;
    }
  }

  // ∫|G|²/|ψ|² dm.
  R ac(0);
  if (mu.weight.is_constant()) {
    for (const C& c : g) ac += std::norm(c);
    const R p0(mu.weight.value_at_zero());
    ac /= p0 * p0;
  } else {
    const MomentTable<R>& table = opuc.table<R>();
    C s{};
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t b = 0; b < g.size(); ++b)
        s += g[a] * std::conj(g[b]) * table.weight_coeff(static_cast<int>(b) - static_cast<int>(a));
    ac = s.real();
  }

  const R total_sq = ac + alpha1 + alpha2;
  const R total = sqrt(total_sq);
  const Laurent<R> inverted = Laurent<R>(-n, g).reflected();
  const R direct_sq = l2_norm_sq(opuc.table<R>(), inverted);

  cert.ac_norm = to_double(ac);
  cert.alpha1 = to_double(alpha1);
  cert.alpha2 = to_double(alpha2);
  cert.total_norm = to_double(total);
  cert.total_norm_direct = to_double(R(sqrt(direct_sq)));
  cert.bookkeeping_rel_error = to_double(R(abs(direct_sq - total_sq) / total_sq));
  cert.lower_bound = to_double(R(abs(g[0]) / total));
  cert.leading_gap = std::abs(to_double(g[0]) - cd(target_b0_psi0(mu)));
  cert.delta_n = sched.delta(n);
  cert.delta_prime = std::pow(Rr, cert.selected) - 1;
  cert.C_bound = sched.resolve_C(spectrum);
  cert.gamma_n = std::exp(cert.C_bound / pp.eps_n) * tail_mu;

  std::vector<cd> comp(inverted.coeffs().size());
  for (std::size_t j = 0; j < comp.size(); ++j) comp[j] = to_double(C(inverted.coeffs()[j] / total));
  return {G, LaurentPolynomial(inverted.lo(), std::move(comp)), cert};
}

}  // namespace

ScheduleFunction::ScheduleFunction(Family family, double c) : family_(family), c_(c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InputError("schedule", "schedule coefficient must be positive");
}

ScheduleFunction ScheduleFunction::parse(const std::string& family, double c) {
  if (family == "constant") return constant(c);
  if (family == "loglog") return loglog(c);
  if (family == "inv_loglog_sq") return inv_loglog_sq(c);
  if (family == "inv_log") return inv_log(c);
  throw InputError("schedule", "unknown schedule family '" + family + "'");
}

std::string ScheduleFunction::name() const {
  const char* f = "constant";
  switch (family_) {
    case Family::Constant:
      break;
    case Family::LogLog:
      f = "loglog";
      break;
    case Family::InvLogLogSq:
      f = "inv_loglog_sq";
      break;
    case Family::InvLog:
      f = "inv_log";
      break;
  }
  return std::string(f) + "(" + fmt(c_) + ")";
}

double ScheduleFunction::operator()(int n) const {
  const double L = std::log(static_cast<double>(n) + 16.0);
  switch (family_) {
    case Family::Constant:
      return c_;
    case Family::LogLog:
      return c_ * std::log(L);
    case Family::InvLogLogSq:
      return c_ / (std::log(L) * std::log(L));
    case Family::InvLog:
      return c_ / L;
  }
  return c_;
}

std::string ScheduleParams::describe() const {
  return "eps=" + eps.name() + ",A=" + A.name() + ",C=" + (C_bound ? fmt(*C_bound) : std::string("auto"));
}

double ScheduleParams::delta(int n) const { return std::log(static_cast<double>(n)) * std::exp(-1.0 / (A(n) * eps(n))); }

double ScheduleParams::resolve_C(const PointSpectrum& spectrum) const {
  if (C_bound) return *C_bound;
  double s = 0.0;
  for (const PointMass& m : spectrum.masses()) s += 1.0 - 1.0 / std::abs(m.z);
  return 2 * s;
}

void validate_schedule(const ScheduleParams& sched, std::span<const int> n_grid) {
  for (std::size_t i = 1; i < n_grid.size(); ++i) {
    const int a = n_grid[i - 1], b = n_grid[i];
    if (b <= a) throw PreconditionError("n_grid must be strictly increasing");
    if (!(sched.delta(b) < sched.delta(a)))
      throw ScheduleViolation(sched.describe(), "delta_n is not decreasing between n = " + std::to_string(a) +
                                                    " and n = " + std::to_string(b));
    if (sched.A(b) < sched.A(a))
      throw ScheduleViolation(sched.describe(), "A_n decreases at n = " + std::to_string(b));
    if (sched.A(b) * sched.eps(b) > sched.A(a) * sched.eps(a))
      throw ScheduleViolation(sched.describe(), "A_n*eps_n increases at n = " + std::to_string(b));
  }
}

PartialProduct partial_product(const PointSpectrum& spectrum, int n, const ScheduleParams& sched) {
  if (n < 8) throw PreconditionError("partial_product: n must be >= 8");
  PartialProduct pp;
  pp.A_n = sched.A(n);
  pp.eps_n = sched.eps(n);
  pp.k_n = static_cast<int>(std::floor(pp.A_n * pp.eps_n * n));
  if (pp.k_n < 1) throw ScheduleViolation(sched.describe(), "k_n = 0 at n = " + std::to_string(n));
  pp.l_n = std::max(1, static_cast<int>(std::ceil(pp.A_n * pp.k_n)));
  pp.radius = 1.0 + 1.0 / pp.l_n;
  const double threshold = 1.0 - 1.0 / pp.k_n;
  std::vector<cd> zs;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const cd zeta = 1.0 / std::conj(spectrum.masses()[i].z);
    if (std::abs(zeta) < threshold) {
      zs.push_back(zeta);
      pp.selected.push_back(i);
    }
  }
  pp.zeros = ZeroSet(std::move(zs), Region::InsideDisk);
  return pp;
}

std::string route_name(Route r) { return r == Route::Eta ? "eta" : "tau"; }

PipelineResult vp_approximant(const Opuc& opuc, int n, const ScheduleParams& sched) {
  return run_pipeline(opuc, n, sched, Route::Eta);
}
PipelineResult taylor_approximant(const Opuc& opuc, int n, const ScheduleParams& sched) {
  return run_pipeline(opuc, n, sched, Route::Tau);
}
PipelineResult vp_approximant(const MeasureSpec& mu, int n, const ScheduleParams& sched) {
  return vp_approximant(Opuc(mu), n, sched);
}
PipelineResult taylor_approximant(const MeasureSpec& mu, int n, const ScheduleParams& sched) {
  return taylor_approximant(Opuc(mu), n, sched);
}

Which parse_which(const std::string& s) {
  if (s == "tau") return Which::Tau;
  if (s == "eta") return Which::Eta;
  if (s == "both") return Which::Both;
  throw InputError("which", "expected one of tau, eta, both");
}

ConvergenceReport convergence_experiment(const MeasureSpec& mu, std::span<const int> n_grid, Which which, int threads) {
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1]) throw PreconditionError("n_grid must be strictly increasing");
  const Opuc opuc(mu);
  ConvergenceReport rep;
  rep.target = target_b0_psi0(mu);
  rep.rows.resize(n_grid.size());
  parallel_for(n_grid.size(), threads, [&](std::size_t i) {
    ConvergenceRow& row = rep.rows[i];
    row.n = n_grid[i];
    if (which != Which::Eta) {
      row.tau = opuc.tau(row.n);
      row.tau_error = std::abs(row.tau->value - rep.target);
    }
    if (which != Which::Tau && row.n >= 1) {
      row.eta = opuc.eta(row.n);
      row.eta_error = std::abs(row.eta->value - rep.target);
    }
  });
  auto monotone = [&](auto member, auto coef) {
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
      const auto& a = rep.rows[i - 1].*member;
      const auto& b = rep.rows[i].*member;
      if (!a || !b) continue;
      const double slack = std::ldexp(1.0, -bits_of((*(rep.rows[i].*coef)).precision) / 2);
      if (*b > 2 * *a + slack) return false;
    }
    return true;
  };
  rep.tau_monotone = monotone(&ConvergenceRow::tau_error, &ConvergenceRow::tau);
  rep.eta_monotone = monotone(&ConvergenceRow::eta_error, &ConvergenceRow::eta);
  return rep;
}

}  // namespace szego
