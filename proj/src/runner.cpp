#include "szego/runner.hpp"

#include "szego/asymptotics.hpp"
#include "szego/blaschke.hpp"
#include "szego/errors.hpp"
#include "szego/io.hpp"
#include "szego/measure.hpp"
#include "szego/parallel.hpp"
#include "szego/zero_gen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#ifndef SZEGO_VERSION_STRING
#define SZEGO_VERSION_STRING "unknown"
#endif

namespace szego {
namespace {

namespace fs = std::filesystem;

std::string num(double x) { return format_number(x); }
std::string num(std::optional<double> x) { return x ? format_number(*x) : std::string(); }

// Manifest with the directory used to resolve relative paths.
struct Manifest {
  Json doc = Json::object();
  fs::path base = ".";

  bool has(const char* key) const { return doc.contains(key); }

  std::vector<int> ints(const char* key, std::vector<int> fallback) const {
    if (!has(key)) return fallback;
    const Json& a = doc.at(key);
    if (!a.is_array() || a.empty()) throw InputError(key, std::string(key) + " must be a nonempty integer array");
    std::vector<int> out;
    for (const Json& v : a) {
      if (!v.is_number_integer()) throw InputError(key, std::string(key) + " must contain integers");
      out.push_back(v.get<int>());
    }
    return out;
  }

  std::vector<double> reals(const char* key, std::vector<double> fallback) const {
    if (!has(key)) return fallback;
    const Json& a = doc.at(key);
    if (!a.is_array() || a.empty()) throw InputError(key, std::string(key) + " must be a nonempty number array");
    std::vector<double> out;
    for (const Json& v : a) {
      if (!v.is_number()) throw InputError(key, std::string(key) + " must contain numbers");
      out.push_back(v.get<double>());
    }
    return out;
  }

  std::vector<std::string> strings(const char* key, std::vector<std::string> fallback) const {
    if (!has(key)) return fallback;
    const Json& a = doc.at(key);
    if (!a.is_array() || a.empty()) throw InputError(key, std::string(key) + " must be a nonempty string array");
    std::vector<std::string> out;
    for (const Json& v : a) {
      if (!v.is_string()) throw InputError(key, std::string(key) + " must contain strings");
      out.push_back(v.get<std::string>());
    }
    return out;
  }

  double real(const char* key, double fallback) const {
    if (!has(key)) return fallback;
    if (!doc.at(key).is_number()) throw InputError(key, std::string(key) + " must be a number");
    return doc.at(key).get<double>();
  }

  int integer(const char* key, int fallback) const {
    if (!has(key)) return fallback;
    if (!doc.at(key).is_number_integer()) throw InputError(key, std::string(key) + " must be an integer");
    return doc.at(key).get<int>();
  }

  std::string string(const char* key, std::string fallback) const {
    if (!has(key)) return fallback;
    if (!doc.at(key).is_string()) throw InputError(key, std::string(key) + " must be a string");
    return doc.at(key).get<std::string>();
  }

  // Inline "measure" object or "measure_file" path.
  MeasureSpec measure(const RunOptions& opts) const {
    MeasureSpec mu;
    if (has("measure")) mu = parse_measure(doc.at("measure"));
    else if (has("measure_file")) mu = load_measure(base / string("measure_file", ""));
    else throw InputError("measure_file", "manifest needs measure_file or measure");
    if (opts.precision_bits) mu.precision = precision_from_bits(*opts.precision_bits);
    return mu;
  }
};

Manifest read_manifest(const RunOptions& opts, bool required) {
  Manifest m;
  if (!opts.manifest) {
    if (required) throw InputError("manifest", "command '" + opts.command + "' needs --manifest");
    return m;
  }
  m.doc = load_json(*opts.manifest);
  if (!m.doc.is_object()) throw InputError("manifest", "manifest must be a JSON object");
  m.base = opts.manifest->parent_path();
  if (m.base.empty()) m.base = ".";
  return m;
}

void require_positive(const std::vector<int>& v, const char* field, int min) {
  for (int x : v)
    if (x < min) throw InputError(field, std::string(field) + " entries must be >= " + std::to_string(min));
}

Json reproducibility(const RunOptions& opts, std::optional<int> bits, const std::string& schedule) {
  Json r = Json::object();
  r["command"] = opts.command;
  r["seed"] = opts.seed;
  r["precision_bits"] = bits ? Json(*bits) : Json(nullptr);
  r["oversample"] = opts.oversample;
  r["schedule"] = schedule.empty() ? Json(nullptr) : Json(schedule);
  r["version"] = version_string();
  return r;
}

// ---------------------------------------------------------------- corrector sweeps

struct Instance {
  ZeroKind kind;
  int n;
  std::uint64_t seed;
};

std::vector<Instance> instances(const Manifest& m, const RunOptions& opts) {
  const std::vector<int> n_grid = m.ints("n_grid", {4, 8, 16, 32, 64, 128, 256});
  require_positive(n_grid, "n_grid", 1);
  const int seeds = m.integer("seeds", 20);
  if (seeds < 1) throw InputError("seeds", "seeds must be >= 1");
  std::vector<Instance> out;
  for (const std::string& k : m.strings("kinds", {"uniform_disk", "boundary_cluster"})) {
    const ZeroKind kind = parse_zero_kind(k);
    for (int n : n_grid)
      for (int s = 0; s < seeds; ++s) out.push_back({kind, n, opts.seed + static_cast<std::uint64_t>(s)});
  }
  return out;
}

void run_vs_bound(const RunOptions& opts) {
  const Manifest m = read_manifest(opts, false);
  const double eps = m.real("epsilon", 1.0);
  const bool besov = m.doc.value("with_besov", true);
  const std::vector<Instance> inst = instances(m, opts);
  std::vector<CorrectorCertificate> certs(inst.size());
  const int s_list[] = {1, 2};
  parallel_for(inst.size(), opts.threads, [&](std::size_t i) {
    const DilatedCorrector c = build_corrector(generate_zeros(inst[i].kind, inst[i].n, inst[i].seed), eps);
    certs[i] = corrector_certificate(c, s_list, opts.oversample, besov);
  });

  CsvWriter csv(opts.out_dir / "certificates.csv",
                {"n", "epsilon", "sup_phi", "phi0_err", "ratio_s1", "ratio_s2", "besov_ratio", "kind", "seed"});
  struct Max {
    double sup_phi = 0, phi0_err = 0, r1 = 0, r2 = 0, besov = 0;
  };
  std::map<std::pair<std::string, int>, Max> summary;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const CorrectorCertificate& c = certs[i];
    const std::string kind = zero_kind_name(inst[i].kind);
    csv.row({std::to_string(c.n), num(c.epsilon), num(c.sup_phi), num(c.phi0_error), num(c.smoothness[0].derivative_ratio),
             num(c.smoothness[1].derivative_ratio), besov ? num(c.smoothness[0].besov_ratio) : std::string(), kind,
             std::to_string(inst[i].seed)});
    Max& s = summary[{kind, c.n}];
    s.sup_phi = std::max(s.sup_phi, c.sup_phi);
    s.phi0_err = std::max(s.phi0_err, c.phi0_error);
    s.r1 = std::max(s.r1, c.smoothness[0].derivative_ratio);
    s.r2 = std::max(s.r2, c.smoothness[1].derivative_ratio);
    s.besov = std::max(s.besov, c.smoothness[0].besov_ratio);
  }
  CsvWriter sum(opts.out_dir / "summary.csv",
                {"kind", "n", "max_sup_phi", "sup_phi_bound", "max_phi0_err", "max_ratio_s1", "max_ratio_s2",
                 "max_besov_ratio"});
  Json rows = Json::array();
  for (const auto& [key, s] : summary) {
    const double bound = std::pow(1.0 + eps / key.second, key.second);
    sum.row({key.first, std::to_string(key.second), num(s.sup_phi), num(bound), num(s.phi0_err), num(s.r1), num(s.r2),
             besov ? num(s.besov) : std::string()});
    rows.push_back({{"kind", key.first},
                    {"n", key.second},
                    {"max_sup_phi", s.sup_phi},
                    {"sup_phi_bound", bound},
                    {"max_phi0_err", s.phi0_err},
                    {"max_ratio_s1", s.r1},
                    {"max_ratio_s2", s.r2},
                    {"max_besov_ratio", besov ? Json(s.besov) : Json(nullptr)}});
  }
  Json report{{"command", opts.command}, {"epsilon", eps}, {"instances", inst.size()}, {"summary", rows}};
  report["reproducibility"] = reproducibility(opts, std::nullopt, "");
  write_json(opts.out_dir / "report.json", report);
}

void run_besov(const RunOptions& opts) {
  const Manifest m = read_manifest(opts, false);
  const double eps = m.real("epsilon", 1.0);
  const std::vector<int> s_list = m.ints("s", {1});
  require_positive(s_list, "s", 1);
  const std::vector<Instance> inst = instances(m, opts);
  std::vector<CorrectorCertificate> certs(inst.size());
  parallel_for(inst.size(), opts.threads, [&](std::size_t i) {
    const DilatedCorrector c = build_corrector(generate_zeros(inst[i].kind, inst[i].n, inst[i].seed), eps);
    certs[i] = corrector_certificate(c, s_list, opts.oversample, true);
  });
  CsvWriter csv(opts.out_dir / "certificates.csv",
                {"n", "epsilon", "s", "derivative_ratio", "besov_seminorm", "besov_ratio", "kind", "seed"});
  std::map<int, double> max_ratio;
  for (std::size_t i = 0; i < inst.size(); ++i)
    for (const SmoothnessEntry& e : certs[i].smoothness) {
      csv.row({std::to_string(certs[i].n), num(eps), std::to_string(e.s), num(e.derivative_ratio), num(e.besov_seminorm),
               num(e.besov_ratio), zero_kind_name(inst[i].kind), std::to_string(inst[i].seed)});
      max_ratio[e.s] = std::max(max_ratio[e.s], e.besov_ratio);
    }
  Json maxima = Json::object();
  for (const auto& [s, v] : max_ratio) maxima[std::to_string(s)] = v;
  Json report{{"command", opts.command}, {"epsilon", eps}, {"instances", inst.size()}, {"max_besov_ratio", maxima}};
  report["reproducibility"] = reproducibility(opts, std::nullopt, "");
  write_json(opts.out_dir / "report.json", report);
}

// ---------------------------------------------------------------- measure commands

void run_opuc(const RunOptions& opts) {
  const Manifest m = read_manifest(opts, true);
  const MeasureSpec mu = m.measure(opts);
  const std::vector<int> n_grid = m.ints("n_grid", {1, 2, 4, 8, 16, 32});
  require_positive(n_grid, "n_grid", 1);
  const Which which = parse_which(m.string("which", "both"));
  const ConvergenceReport rep = convergence_experiment(mu, n_grid, which, opts.threads);

  CsvWriter csv(opts.out_dir / "certificates.csv",
                {"n", "tau_n", "eta_n", "target", "tau_abs_error", "eta_abs_error", "precision_bits"});
  Json rows = Json::array();
  for (const ConvergenceRow& r : rep.rows) {
    const int bits = bits_of(r.eta ? r.eta->precision : r.tau->precision);
    csv.row({std::to_string(r.n), r.tau ? num(r.tau->value) : "", r.eta ? num(r.eta->value) : "", num(rep.target),
             num(r.tau_error), num(r.eta_error), std::to_string(bits)});
    rows.push_back({{"n", r.n},
                    {"tau_n", r.tau ? Json(r.tau->value) : Json(nullptr)},
                    {"eta_n", r.eta ? Json(r.eta->value) : Json(nullptr)},
                    {"tau_abs_error", r.tau_error ? Json(*r.tau_error) : Json(nullptr)},
                    {"eta_abs_error", r.eta_error ? Json(*r.eta_error) : Json(nullptr)},
                    {"precision_bits", bits}});
  }
  Json report{{"command", opts.command},
              {"measure", measure_to_json(mu)},
              {"target", rep.target},
              {"tau_monotone", rep.tau_monotone},
              {"eta_monotone", rep.eta_monotone},
              {"rows", rows}};
  report["reproducibility"] = reproducibility(opts, bits_of(mu.precision), "");
  write_json(opts.out_dir / "report.json", report);
}

ScheduleParams parse_schedule(const Manifest& m) {
  ScheduleParams sched;
  if (!m.has("schedule")) return sched;
  const Json& s = m.doc.at("schedule");
  if (!s.is_object()) throw InputError("schedule", "schedule must be an object");
  auto fn = [&](const char* key, ScheduleFunction fallback) {
    if (!s.contains(key)) return fallback;
    const Json& f = s.at(key);
    if (!f.is_object() || !f.contains("family") || !f.at("family").is_string())
      throw InputError(std::string("schedule.") + key, "expected {family, c}");
    const Json c = f.value("c", Json(1.0));
    if (!c.is_number()) throw InputError(std::string("schedule.") + key, "c must be a number");
    return ScheduleFunction::parse(f.at("family").get<std::string>(), c.get<double>());
  };
  sched.eps = fn("eps", sched.eps);
  sched.A = fn("A", sched.A);
  if (s.contains("C_bound")) {
    if (!s.at("C_bound").is_number()) throw InputError("schedule.C_bound", "C_bound must be a number");
    sched.C_bound = s.at("C_bound").get<double>();
  }
  return sched;
}

Json certificate_json(const PipelineCertificate& c) {
  return Json{{"route", route_name(c.route)},
              {"n", c.n},
              {"k_n", c.k_n},
              {"l_n", c.l_n},
              {"R", c.radius},
              {"A_n", c.A_n},
              {"eps_n", c.eps_n},
              {"selected", c.selected},
              {"sup_defect", c.sup_defect},
              {"sup_defect_bound", c.sup_defect_bound},
              {"cauchy_bound", c.cauchy_bound},
              {"delta_n", c.delta_n},
              {"delta_prime", c.delta_prime},
              {"leading_gap", c.leading_gap},
              {"point_bound", c.point_bound},
              {"ac_norm", c.ac_norm},
              {"alpha1", c.alpha1},
              {"alpha2", c.alpha2},
              {"C_bound", c.C_bound},
              {"gamma_n", c.gamma_n},
              {"total_norm", c.total_norm},
              {"total_norm_direct", c.total_norm_direct},
              {"bookkeeping_rel_error", c.bookkeeping_rel_error},
              {"lower_bound", c.lower_bound},
              {"optimum", c.optimum ? Json(*c.optimum) : Json(nullptr)},
              {"dominance_ok", c.dominance_ok()},
              {"schwarz_worst_excess", c.schwarz_worst_excess},
              {"schwarz_ok", c.schwarz_ok}};
}

void run_pipeline_cmd(const RunOptions& opts) {
  const Manifest m = read_manifest(opts, true);
  const MeasureSpec mu = m.measure(opts);
  const ScheduleParams sched = parse_schedule(m);
  const std::vector<int> n_grid = m.ints("n_grid", {48, 64, 96, 128});
  require_positive(n_grid, "n_grid", 8);
  validate_schedule(sched, n_grid);
  const Which which = parse_which(m.string("which", "eta"));
  std::vector<Route> routes;
  if (which != Which::Tau) routes.push_back(Route::Eta);
  if (which != Which::Eta) routes.push_back(Route::Tau);

  const Opuc opuc(mu);
  std::vector<PipelineResult> results(n_grid.size() * routes.size());
  parallel_for(results.size(), opts.threads, [&](std::size_t i) {
    const int n = n_grid[i / routes.size()];
    const Route route = routes[i % routes.size()];
    PipelineResult r = route == Route::Eta ? vp_approximant(opuc, n, sched) : taylor_approximant(opuc, n, sched);
    r.cert.optimum = route == Route::Eta ? opuc.eta(n).value : opuc.tau(n).value;
    results[i] = std::move(r);
  });

  const std::vector<std::string> header = {
      "route", "n", "k_n", "l_n", "R", "A_n", "eps_n", "selected", "sup_defect", "sup_defect_bound", "cauchy_bound",
      "delta_n", "delta_prime", "leading_gap", "point_bound", "ac_norm", "alpha1", "alpha2", "C_bound", "gamma_n",
      "total_norm", "total_norm_direct", "bookkeeping_rel_error", "lower_bound", "optimum", "dominance_ok",
      "schwarz_worst_excess", "schwarz_ok"};
  CsvWriter csv(opts.out_dir / "certificates.csv", header);
  Json certs = Json::array();
  bool all_ok = true;
  for (const PipelineResult& r : results) {
    const PipelineCertificate& c = r.cert;
    csv.row({route_name(c.route), std::to_string(c.n), std::to_string(c.k_n), std::to_string(c.l_n), num(c.radius),
             num(c.A_n), num(c.eps_n), std::to_string(c.selected), num(c.sup_defect), num(c.sup_defect_bound),
             num(c.cauchy_bound), num(c.delta_n), num(c.delta_prime), num(c.leading_gap), num(c.point_bound),
             num(c.ac_norm), num(c.alpha1), num(c.alpha2), num(c.C_bound), num(c.gamma_n), num(c.total_norm),
             num(c.total_norm_direct), num(c.bookkeeping_rel_error), num(c.lower_bound), num(c.optimum),
             c.dominance_ok() ? "true" : "false", num(c.schwarz_worst_excess), c.schwarz_ok ? "true" : "false"});
    Json j = certificate_json(c);
    j["competitor"] = coefficients_to_json(r.competitor);
    certs.push_back(std::move(j));
    all_ok = all_ok && c.dominance_ok() && c.schwarz_ok && c.bookkeeping_rel_error <= 1e-12;
  }
  Json report{{"command", opts.command},
              {"measure", measure_to_json(mu)},
              {"target", target_b0_psi0(mu)},
              {"all_checks_pass", all_ok},
              {"certificates", certs}};
  report["reproducibility"] = reproducibility(opts, bits_of(mu.precision), sched.describe());
  write_json(opts.out_dir / "report.json", report);
}

void run_residue(const RunOptions& opts) {
  const Manifest m = read_manifest(opts, true);
  const MeasureSpec mu = m.measure(opts);
  const std::vector<int> n_grid = m.ints("n_grid", {4, 8, 12});
  require_positive(n_grid, "n_grid", 1);
  std::vector<int> k_list = m.ints("k_list", {});
  if (k_list.empty())
    for (int k = 0; k <= static_cast<int>(std::min<std::size_t>(mu.spectrum.size(), 2)); ++k) k_list.push_back(k);
  require_positive(k_list, "k_list", 0);
  for (int k : k_list)
    if (static_cast<std::size_t>(k) > mu.spectrum.size()) throw InputError("k_list", "k exceeds the number of masses");

  const Opuc opuc(mu);
  std::vector<ResidueCheck> out(n_grid.size() * k_list.size());
  parallel_for(out.size(), opts.threads, [&](std::size_t i) {
    out[i] = opuc.residue_check(n_grid[i / k_list.size()], k_list[i % k_list.size()]);
  });
  CsvWriter csv(opts.out_dir / "certificates.csv",
                {"n", "k", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_diff", "lhs_abs", "residue_sum_abs", "majorant",
                 "eta_n", "precision_bits", "grid_size"});
  Json rows = Json::array();
  double worst = 0.0;
  for (const ResidueCheck& r : out) {
    csv.row({std::to_string(r.n), std::to_string(r.k), num(r.lhs.real()), num(r.lhs.imag()), num(r.rhs.real()),
             num(r.rhs.imag()), num(r.abs_diff), num(r.lhs_abs), num(r.residue_sum_abs), num(r.majorant), num(r.eta),
             std::to_string(r.precision_bits), std::to_string(r.grid_size)});
    rows.push_back({{"n", r.n}, {"k", r.k}, {"abs_diff", r.abs_diff}, {"majorant", r.majorant}, {"eta_n", r.eta}});
    worst = std::max(worst, r.abs_diff);
  }
  Json report{{"command", opts.command}, {"measure", measure_to_json(mu)}, {"max_abs_diff", worst}, {"rows", rows}};
  report["reproducibility"] = reproducibility(opts, bits_of(mu.precision), "");
  write_json(opts.out_dir / "report.json", report);
}

void run_log_condition(const RunOptions& opts) {
  const Manifest m = read_manifest(opts, true);
  const MeasureSpec mu = m.measure(opts);
  const std::vector<double> A_list = m.reals("A_list", {1.0, 2.0});
  const int n_max = m.integer("n_max", 1024);
  if (n_max < 2) throw InputError("n_max", "n_max must be >= 2");
  const LogConditionReport rep = log_condition_report(mu.spectrum, A_list, n_max);

  std::vector<std::string> header = {"n", "tail_mass"};
  for (double A : rep.A) header.push_back("scaled_A" + num(A));
  CsvWriter csv(opts.out_dir / "certificates.csv", header);
  for (std::size_t i = 0; i < rep.n_grid.size(); ++i) {
    std::vector<std::string> row = {std::to_string(rep.n_grid[i]), num(rep.tail_mass[i])};
    for (const auto& s : rep.scaled) row.push_back(num(s[i]));
    csv.row(row);
  }
  Json flags = Json::array();
  for (std::size_t a = 0; a < rep.A.size(); ++a) flags.push_back({{"A", rep.A[a]}, {"bounded", static_cast<bool>(rep.bounded[a])}});
  Json report{{"command", opts.command}, {"n_max", n_max}, {"flags", flags}, {"any_pass", rep.any_pass()}};
  report["reproducibility"] = reproducibility(opts, std::nullopt, "");
  write_json(opts.out_dir / "report.json", report);
}

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Input:
      return "input";
    case ErrorKind::Numeric:
      return "numeric";
    case ErrorKind::Schedule:
      return "schedule";
  }
  return "input";
}

}  // namespace

std::string version_string() { return SZEGO_VERSION_STRING; }

void run(const RunOptions& opts) {
  if (opts.oversample < 4) throw InputError("oversample", "oversample must be >= 4");
  if (opts.precision_bits) (void)precision_from_bits(*opts.precision_bits);
  std::error_code ec;
  fs::create_directories(opts.out_dir, ec);
  if (ec) throw InputError("out", "cannot create " + opts.out_dir.string() + ": " + ec.message());

  if (opts.command == "vs-bound") run_vs_bound(opts);
  else if (opts.command == "besov") run_besov(opts);
  else if (opts.command == "opuc") run_opuc(opts);
  else if (opts.command == "pipeline") run_pipeline_cmd(opts);
  else if (opts.command == "residue-check") run_residue(opts);
  else if (opts.command == "log-condition") run_log_condition(opts);
  else throw InputError("command", "unknown command '" + opts.command + "'");
}

int run_guarded(const RunOptions& opts, std::ostream& err) {
  try {
    run(opts);
    return 0;
  } catch (const Error& e) {
    Json j{{"error", e.code()}, {"kind", kind_name(e.kind())}, {"message", e.what()}};
    if (const auto* in = dynamic_cast<const InputError*>(&e)) j["field"] = in->field();
    err << j.dump() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << Json{{"error", "InternalError"}, {"kind", "numeric"}, {"message", e.what()}}.dump() << '\n';
    return 3;
  }
}

}  // namespace szego
