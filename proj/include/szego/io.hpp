#pragma once

#include "szego/blaschke.hpp"
#include "szego/laurent.hpp"
#include "szego/measure.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace szego {

using Json = nlohmann::ordered_json;

/// Shortest decimal string that reads back to the same double.
std::string format_number(double x);

/// Reads and parses a JSON file; parse failures become InputError naming the path.
Json load_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

/// {psi: [[re, im], ...], masses: [[re, im, mu], ...], precision_bits: int}.
/// psi defaults to [[1, 0]], masses to [], precision_bits to 256.
MeasureSpec parse_measure(const Json& j);
MeasureSpec load_measure(const std::filesystem::path& path);
Json measure_to_json(const MeasureSpec& mu);

/// [[re, im], ...] of points inside the disk.
ZeroSet parse_zero_set(const Json& j);
Json zero_set_to_json(const ZeroSet& z);

/// [[exponent, re, im], ...] over nonzero coefficients.
Json coefficients_to_json(const LaurentPolynomial& f);

/// Row-oriented CSV with a fixed header; cells are written as given.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);
  std::size_t columns() const { return header_.size(); }

 private:
  std::ofstream out_;
  std::vector<std::string> header_;
};

}  // namespace szego
