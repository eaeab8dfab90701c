#pragma once

#include "szego/blaschke.hpp"
#include "szego/laurent.hpp"
#include "szego/measure.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace szego {

/// A named function of n used for ε_n and A_n.
class ScheduleFunction {
 public:
  enum class Family { Constant, LogLog, InvLogLogSq, InvLog };

  ScheduleFunction(Family family, double c);
  static ScheduleFunction constant(double c) { return {Family::Constant, c}; }
  /// c·log log(n + 16)
  static ScheduleFunction loglog(double c) { return {Family::LogLog, c}; }
  /// c/(log log(n + 16))²
  static ScheduleFunction inv_loglog_sq(double c) { return {Family::InvLogLogSq, c}; }
  /// c/log(n + 16)
  static ScheduleFunction inv_log(double c) { return {Family::InvLog, c}; }
  /// Parses a family name (constant, loglog, inv_loglog_sq, inv_log).
  static ScheduleFunction parse(const std::string& family, double c);

  Family family() const { return family_; }
  double coefficient() const { return c_; }
  std::string name() const;
  double operator()(int n) const;

 private:
  Family family_;
  double c_;
};

struct ScheduleParams {
  ScheduleFunction eps = ScheduleFunction::inv_loglog_sq(1.0);
  ScheduleFunction A = ScheduleFunction::loglog(0.5);
  /// Constant in the e^{C/ε_n} tail factor; defaults to 2·Σ(1 - |ζ_k|) of the spectrum.
  std::optional<double> C_bound;

  std::string describe() const;
  /// log n · exp(-1/(A_n ε_n)).
  double delta(int n) const;
  double resolve_C(const PointSpectrum& spectrum) const;
};

/// Checks on an increasing n-grid that δ_n decreases, A_n does not decrease
/// and A_n·ε_n does not increase. Throws ScheduleViolation.
void validate_schedule(const ScheduleParams& sched, std::span<const int> n_grid);

struct PartialProduct {
  ZeroSet zeros;                      // selected ζ_k, inside the disk
  std::vector<std::size_t> selected;  // indices into the spectrum
  int k_n = 0;
  int l_n = 0;
  double radius = 1.0;  // 1 + 1/l_n
  double A_n = 0.0;
  double eps_n = 0.0;

  BlaschkeProduct blaschke() const { return BlaschkeProduct::normalize_positive(zeros); }
};

/// k_n = ⌊A_n ε_n n⌋, ζ_k kept when |ζ_k| < 1 - 1/k_n, l_n = ⌈A_n k_n⌉.
/// n >= 8; k_n = 0 raises ScheduleViolation.
PartialProduct partial_product(const PointSpectrum& spectrum, int n, const ScheduleParams& sched);

enum class Route { Eta, Tau };
std::string route_name(Route r);

struct PipelineCertificate {
  Route route = Route::Eta;
  int n = 0;
  int k_n = 0;
  int l_n = 0;
  double radius = 0.0;
  double A_n = 0.0;
  double eps_n = 0.0;
  int selected = 0;
  double sup_defect = 0.0;        // sampled and refined sup over the circle of |G - f|
  double sup_defect_bound = 0.0;  // ℓ¹ coefficient majorant of the same quantity
  double cauchy_bound = 0.0;      // contour estimate on radius R (Taylor route only)
  double delta_n = 0.0;
  double delta_prime = 0.0;  // R^{#selected} - 1, the bound on sup|φ| - 1
  double leading_gap = 0.0;  // |G(0) - B(0)ψ(0)|
  double point_bound = 0.0;  // max over selected ζ_k of |r(ζ_k)|
  double ac_norm = 0.0;
  double alpha1 = 0.0;  // selected masses
  double alpha2 = 0.0;  // remaining masses
  double C_bound = 0.0;
  double gamma_n = 0.0;
  double total_norm = 0.0;
  double total_norm_direct = 0.0;  // competitor norm through the full moment Gram
  double bookkeeping_rel_error = 0.0;
  double lower_bound = 0.0;
  double schwarz_worst_excess = 0.0;  // max of |G - f|(rζ) - sup_defect·r^n
  bool schwarz_ok = false;
  std::optional<double> optimum;  // exact η_n or τ_n when computed

  bool dominance_ok() const { return !optimum || lower_bound <= *optimum + 1e-10; }
};

struct PipelineResult {
  LaurentPolynomial approximant;  // G_n (VP route) or T_n (Taylor route)
  LaurentPolynomial competitor;   // normalized inverted competitor, unit L²(μ) norm
  PipelineCertificate cert;
};

/// ψ·B_nφ convolved with ModifiedVP(n); competitor support [-(n-1), n].
PipelineResult vp_approximant(const Opuc& opuc, int n, const ScheduleParams& sched);
/// Degree-n Taylor polynomial of ψ·B_nφ; competitor support [0, n].
/// Requires the spectrum to satisfy the log-condition report for some A.
PipelineResult taylor_approximant(const Opuc& opuc, int n, const ScheduleParams& sched);

PipelineResult vp_approximant(const MeasureSpec& mu, int n, const ScheduleParams& sched);
PipelineResult taylor_approximant(const MeasureSpec& mu, int n, const ScheduleParams& sched);

enum class Which { Tau, Eta, Both };
Which parse_which(const std::string& s);

struct ConvergenceRow {
  int n = 0;
  std::optional<LeadingCoefficient> tau;
  std::optional<LeadingCoefficient> eta;
  std::optional<double> tau_error;
  std::optional<double> eta_error;
};

struct ConvergenceReport {
  double target = 0.0;
  std::vector<ConvergenceRow> rows;
  bool tau_monotone = true;  // err[i+1] <= 2·err[i] + 2^{-bits/2}
  bool eta_monotone = true;
};

/// Exact optima against B(0)ψ(0) over an increasing n-grid.
ConvergenceReport convergence_experiment(const MeasureSpec& mu, std::span<const int> n_grid, Which which,
                                         int threads = 1);

}  // namespace szego
