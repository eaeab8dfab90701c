// szego-lab: certificate sweeps, OPUC experiments and pipeline runs.
#include "szego/parallel.hpp"
#include "szego/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Corrector certificates and OPUC leading-coefficient experiments"};
  app.set_version_flag("--version", szego::version_string());
  app.require_subcommand(1, 1);

  szego::RunOptions opts;
  std::string manifest;
  int precision_bits = 0;

  const char* commands[][2] = {
      {"vs-bound", "corrector identities and derivative ratios over seeded zero sets"},
      {"besov", "dyadic-block smoothness ratios over seeded zero sets"},
      {"opuc", "tau_n and eta_n against the limit B(0)psi(0)"},
      {"pipeline", "constructive lower-bound certificates"},
      {"residue-check", "contour integral against residue sum"},
      {"log-condition", "tail masses near the circle"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--manifest", manifest, "JSON run manifest");
    sub->add_option("--out", opts.out_dir, "output directory")->required();
    sub->add_option("--seed", opts.seed, "base seed for generated zero sets");
    sub->add_option("--precision-bits", precision_bits, "53, 128, 256 or 512");
    sub->add_option("--oversample", opts.oversample, "circle sampling factor")->capture_default_str();
    sub->callback([&opts, name = std::string(name)] { opts.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  if (!manifest.empty()) opts.manifest = manifest;
  if (precision_bits != 0) opts.precision_bits = precision_bits;
  opts.threads = szego::default_threads();
  return szego::run_guarded(opts, std::cerr);
}
