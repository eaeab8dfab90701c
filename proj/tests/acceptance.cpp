// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any fails.
#include "szego/asymptotics.hpp"
#include "szego/blaschke.hpp"
#include "szego/circle_fourier.hpp"
#include "szego/measure.hpp"
#include "szego/parallel.hpp"
#include "szego/xlinalg.hpp"
#include "szego/zero_gen.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <string>
#include <vector>

using namespace szego;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const std::vector<int> kSweepN = {4, 8, 16, 32, 64, 128, 256};
const std::vector<ZeroKind> kKinds = {ZeroKind::UniformDisk, ZeroKind::BoundaryCluster};
constexpr int kSeeds = 20;
constexpr int kSeedsSmallEps = 5;

struct SweepRow {
  ZeroKind kind;
  int n;
  std::uint64_t seed;
  CorrectorCertificate cert;
};

std::vector<SweepRow> sweep(double eps, int seeds, bool besov) {
  std::vector<SweepRow> rows;
  for (ZeroKind kind : kKinds)
    for (int n : kSweepN)
      for (int s = 0; s < seeds; ++s) rows.push_back({kind, n, static_cast<std::uint64_t>(s), {}});
  const int s_list[] = {1, 2};
  parallel_for(rows.size(), default_threads(), [&](std::size_t i) {
    const DilatedCorrector c = build_corrector(generate_zeros(rows[i].kind, rows[i].n, rows[i].seed), eps);
    rows[i].cert = corrector_certificate(c, s_list, 16, besov);
  });
  return rows;
}

// Max over instances of a ratio, per n.
std::map<int, double> max_by_n(const std::vector<SweepRow>& rows, const std::function<double(const SweepRow&)>& f) {
  std::map<int, double> m;
  for (const auto& r : rows) m[r.n] = std::max(m[r.n], f(r));
  return m;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Shared state between criteria.
std::vector<SweepRow> g_sweep;
double g_sweep_seconds = 0.0;

MeasureSpec two_mass() {
  MeasureSpec mu;
  mu.spectrum = PointSpectrum({{{1.5, 0.0}, 0.3}, {{-1.25, 0.0}, 0.1}});
  mu.precision = PrecisionTag::Bits256;
  return mu;
}

Verdict corrector_identities() {
  const auto t0 = std::chrono::steady_clock::now();
  g_sweep = sweep(1.0, kSeeds, true);
  g_sweep_seconds = seconds_since(t0);
  double worst_phi0 = 0.0, worst_excess = -1e300;
  for (const auto& r : g_sweep) {
    worst_phi0 = std::max(worst_phi0, r.cert.phi0_error);
    worst_excess = std::max(worst_excess, r.cert.sup_phi - std::pow(1.0 + 1.0 / r.n, r.n));
  }
  return {worst_phi0 <= 1e-12 && worst_excess <= 1e-9,
          fmt("%zu instances, max |phi0(0)-1| = %.2e, max sup|phi0| - (1+1/n)^n = %.2e, sweep %.1f s",
              g_sweep.size(), worst_phi0, worst_excess, g_sweep_seconds)};
}

double drift(const std::map<int, double>& m) { return m.at(256) / m.at(16); }

Verdict derivative_scaling() {
  const auto r1 = max_by_n(g_sweep, [](const SweepRow& r) { return r.cert.smoothness[0].derivative_ratio; });
  double C1 = 0.0;
  for (const auto& [n, v] : r1) C1 = std::max(C1, v);
  const double d = drift(r1);

  // Small-ε variant on the first seeds of the same sweep.
  const auto small = sweep(0.1, kSeedsSmallEps, false);
  double worst_excess = -1e300;
  for (const auto& r : small) worst_excess = std::max(worst_excess, r.cert.sup_phi - std::exp(0.1));
  std::vector<SweepRow> same;
  for (const auto& r : g_sweep)
    if (r.seed < static_cast<std::uint64_t>(kSeedsSmallEps)) same.push_back(r);
  double c_eps1 = 0.0, c_eps01 = 0.0;
  for (const auto& r : same) c_eps1 = std::max(c_eps1, r.cert.smoothness[0].derivative_ratio);
  for (const auto& r : small) c_eps01 = std::max(c_eps01, r.cert.smoothness[0].derivative_ratio);

  return {d < 1.5 && worst_excess <= 1e-6 && c_eps01 > c_eps1,
          fmt("C1 = %.3f, ratio at 256 / ratio at 16 = %.3f; eps=0.1: max sup|phi0| - e^0.1 = %.2e, "
              "C_0.1 = %.3f vs C_1 = %.3f on %d seeds per kind",
              C1, d, worst_excess, c_eps01, c_eps1, kSeedsSmallEps)};
}

Verdict higher_smoothness() {
  const auto r2 = max_by_n(g_sweep, [](const SweepRow& r) { return r.cert.smoothness[1].derivative_ratio; });
  const auto rb = max_by_n(g_sweep, [](const SweepRow& r) { return r.cert.smoothness[0].besov_ratio; });
  double C2 = 0.0, CB = 0.0;
  for (const auto& [n, v] : r2) C2 = std::max(C2, v);
  for (const auto& [n, v] : rb) CB = std::max(CB, v);
  const double d2 = drift(r2), db = drift(rb);
  return {d2 < 1.5 && db < 1.5,
          fmt("s=2: C = %.3f, drift %.3f; Besov: C = %.3f, drift %.3f", C2, d2, CB, db)};
}

Verdict kernel_identity() {
  int checked = 0, failed = 0;
  for (int k = 0; k <= 10; ++k)
    for (int n = 1 << k; n <= 2048; ++n) {
      ++checked;
      if (!kernel_identity_vk_vpn(k, n)) ++failed;
    }
  return {failed == 0, fmt("%d pairs checked, %d failed", checked, failed)};
}

// Pipeline runs shared by the Schwarz and dominance criteria.
struct PipelineRun {
  std::string label;
  PipelineCertificate cert;
};
std::vector<PipelineRun> g_runs;

void run_pipelines() {
  if (!g_runs.empty()) return;
  const ScheduleParams sched;
  MeasureSpec with_psi;
  with_psi.weight = OuterWeight(LaurentPolynomial(0, {1.0, -0.5}), "1-z/2");
  with_psi.spectrum = PointSpectrum({{{1.5, 0.0}, 0.3}});
  const std::vector<std::pair<std::string, MeasureSpec>> measures = {{"two-mass", two_mass()},
                                                                     {"psi=1-z/2,one-mass", with_psi}};
  const std::vector<int> grid = {48, 64, 96, 128};
  validate_schedule(sched, grid);
  for (const auto& [name, mu] : measures) {
    const Opuc opuc(mu);
    std::vector<PipelineRun> runs(grid.size() * 2);
    parallel_for(runs.size(), default_threads(), [&](std::size_t i) {
      const int n = grid[i / 2];
      const bool eta = i % 2 == 0;
      PipelineResult r = eta ? vp_approximant(opuc, n, sched) : taylor_approximant(opuc, n, sched);
      r.cert.optimum = eta ? opuc.eta(n).value : opuc.tau(n).value;
      runs[i] = {name + (eta ? "/eta" : "/tau"), r.cert};
    });
    g_runs.insert(g_runs.end(), runs.begin(), runs.end());
  }
}

Verdict schwarz() {
  run_pipelines();
  double worst = -1e300;
  bool ok = true;
  for (const auto& r : g_runs) {
    ok = ok && r.cert.schwarz_ok;
    worst = std::max(worst, r.cert.schwarz_worst_excess);
  }
  return {ok, fmt("%zu pipeline runs, worst excess over sup_defect*r^n = %.2e", g_runs.size(), worst)};
}

Verdict bernstein_szego() {
  MeasureSpec mu;
  mu.weight = OuterWeight(LaurentPolynomial(0, {1.0, -0.5}), "1-z/2");
  mu.precision = PrecisionTag::Bits128;
  const Opuc opuc(mu);
  double worst = 0.0;
  // The orthonormal polynomials are z^n - z^(n-1)/2 for n >= 1, leading coefficient 1.
  for (int n = 1; n <= 12; ++n) worst = std::max(worst, std::abs(opuc.tau(n).value - 1.0));
  return {worst <= 1e-10, fmt("max |tau_n - 1| over n = 1..12 = %.2e", worst)};
}

Verdict limit_reproduction() {
  const auto t0 = std::chrono::steady_clock::now();
  const MeasureSpec mu = two_mass();
  const std::vector<int> grid = {8, 16, 24, 32, 40, 48};
  const ConvergenceReport rep = convergence_experiment(mu, grid, Which::Both, default_threads());
  const ConvergenceRow& last = rep.rows.back();
  bool at256 = true;
  for (const auto& row : rep.rows) at256 = at256 && row.eta->precision == PrecisionTag::Bits256 &&
                                           row.tau->precision == PrecisionTag::Bits256;
  std::string errs;
  for (const auto& row : rep.rows) errs += fmt(" %.1e/%.1e", *row.eta_error, *row.tau_error);
  const bool ok = *last.eta_error <= 0.05 && *last.tau_error <= 0.05 && rep.eta_monotone && rep.tau_monotone && at256;
  return {ok, fmt("target %.10f, eta48 = %.10f, tau48 = %.10f, eta/tau errors:%s, %s, %.1f s", rep.target,
                  last.eta->value, last.tau->value, errs.c_str(), at256 ? "256 bits" : "escalated",
                  seconds_since(t0))};
}

Verdict extremal_equivalence() {
  const MomentTable<Real256> table(two_mass());
  double worst = 0.0;
  for (int n = 1; n <= 16; ++n) {
    const auto g = gram_laurent(table, n);
    const Real256 a = schur_leading(g);
    const Real256 b = constrained_max_leading(g).eta;
    worst = std::max(worst, to_double(Real256(abs(a - b) / b)));
  }
  return {worst <= 1e-10, fmt("max relative gap over n = 1..16 = %.2e", worst)};
}

Verdict residue_identity() {
  const Opuc opuc(two_mass());
  double worst = 0.0;
  std::map<std::pair<int, int>, double> major;
  for (int n : {4, 8, 12})
    for (int k : {0, 1, 2}) {
      const ResidueCheck c = opuc.residue_check(n, k);
      worst = std::max(worst, c.abs_diff);
      major[{n, k}] = c.majorant;
    }
  const bool decay = major[{12, 1}] < major[{4, 1}] && major[{12, 2}] < major[{4, 2}];
  return {worst <= 1e-8 && decay,
          fmt("max |LHS - RHS| = %.2e; majorant k=1: %.3e -> %.3e, k=2: %.3e -> %.3e (n = 4 -> 12)", worst,
              major[{4, 1}], major[{12, 1}], major[{4, 2}], major[{12, 2}])};
}

Verdict pipeline_dominance() {
  run_pipelines();
  bool ok = true;
  double worst_book = 0.0, worst_gap = -1e300, lb64 = 0.0;
  for (const auto& r : g_runs) {
    ok = ok && r.cert.dominance_ok() && r.cert.bookkeeping_rel_error <= 1e-12;
    worst_book = std::max(worst_book, r.cert.bookkeeping_rel_error);
    worst_gap = std::max(worst_gap, r.cert.lower_bound - *r.cert.optimum);
    if (r.label == "two-mass/eta" && r.cert.n == 64) lb64 = r.cert.lower_bound;
  }
  const double b0 = reflected_blaschke(two_mass().spectrum).value_at_zero().real();
  const bool near = std::abs(lb64 - b0) <= 0.1;
  return {ok && near, fmt("max lower_bound - optimum = %.2e, max bookkeeping error = %.2e, n=64 lower bound %.6f "
                          "vs B(0) = %.6f",
                          worst_gap, worst_book, lb64, b0)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Verdict (*)()>> criteria = {
      {"corrector identities", corrector_identities},
      {"derivative scaling", derivative_scaling},
      {"higher smoothness", higher_smoothness},
      {"kernel identity", kernel_identity},
      {"Schwarz certificates", schwarz},
      {"Bernstein-Szego baseline", bernstein_szego},
      {"limit reproduction", limit_reproduction},
      {"extremal equivalence", extremal_equivalence},
      {"residue identity", residue_identity},
      {"pipeline dominance", pipeline_dominance},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
