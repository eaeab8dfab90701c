#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace szego {

struct RunOptions {
  std::string command;  // vs-bound | besov | opuc | pipeline | residue-check | log-condition
  std::optional<std::filesystem::path> manifest;
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 0;
  std::optional<int> precision_bits;  // overrides the measure's precision when set
  int oversample = 16;
  int threads = 1;
};

/// git-describe style identifier baked in at configure time.
std::string version_string();

/// Executes the command and writes certificates.csv and report.json into
/// out_dir. Module errors propagate as szego::Error.
void run(const RunOptions& opts);

/// run() with the exit-code contract: 0 ok, 2 input, 3 numeric, 4 schedule.
/// Failures print one JSON object to `err`.
int run_guarded(const RunOptions& opts, std::ostream& err);

}  // namespace szego
