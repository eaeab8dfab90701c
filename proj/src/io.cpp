#include "szego/io.hpp"

#include "szego/errors.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace szego {
namespace {

double number_at(const Json& j, const std::string& field) {
  if (!j.is_number()) throw InputError(field, "expected a number at " + field);
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(field, "non-finite number at " + field);
  return v;
}

const Json& array_at(const Json& j, const std::string& field, std::size_t len) {
  if (!j.is_array() || j.size() != len)
    throw InputError(field, "expected an array of " + std::to_string(len) + " numbers at " + field);
  return j;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("path", "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("json", path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("out", "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

MeasureSpec parse_measure(const Json& j) {
  if (!j.is_object()) throw InputError("measure", "measure must be a JSON object");
  MeasureSpec mu;
  if (j.contains("psi")) {
    const Json& p = j.at("psi");
    if (!p.is_array() || p.empty()) throw InputError("psi", "psi must be a nonempty array of [re, im]");
    std::vector<std::complex<double>> c;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::string f = "psi[" + std::to_string(i) + "]";
      const Json& e = array_at(p[i], f, 2);
      c.emplace_back(number_at(e[0], f), number_at(e[1], f));
    }
    mu.weight = OuterWeight(LaurentPolynomial(0, std::move(c)));
  }
  if (j.contains("masses")) {
    const Json& m = j.at("masses");
    if (!m.is_array()) throw InputError("masses", "masses must be an array of [re, im, mu]");
    std::vector<PointMass> pm;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const std::string f = "masses[" + std::to_string(i) + "]";
      const Json& e = array_at(m[i], f, 3);
      pm.push_back({{number_at(e[0], f), number_at(e[1], f)}, number_at(e[2], f)});
    }
    mu.spectrum = PointSpectrum(std::move(pm));
  }
  if (j.contains("precision_bits")) {
    const Json& b = j.at("precision_bits");
    if (!b.is_number_integer()) throw InputError("precision_bits", "precision_bits must be an integer");
    mu.precision = precision_from_bits(b.get<int>());
  }
  return mu;
}

MeasureSpec load_measure(const std::filesystem::path& path) { return parse_measure(load_json(path)); }

Json measure_to_json(const MeasureSpec& mu) {
  Json psi = Json::array(), masses = Json::array();
  for (const auto& c : mu.weight.psi().coeffs()) psi.push_back({c.real(), c.imag()});
  for (const PointMass& m : mu.spectrum.masses()) masses.push_back({m.z.real(), m.z.imag(), m.mu});
  return Json{{"psi", psi}, {"masses", masses}, {"precision_bits", bits_of(mu.precision)}};
}

ZeroSet parse_zero_set(const Json& j) {
  if (!j.is_array()) throw InputError("zeros", "zero set must be an array of [re, im]");
  std::vector<std::complex<double>> z;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = "zeros[" + std::to_string(i) + "]";
    const Json& e = array_at(j[i], f, 2);
    z.emplace_back(number_at(e[0], f), number_at(e[1], f));
  }
  return ZeroSet(std::move(z), Region::InsideDisk);
}

Json zero_set_to_json(const ZeroSet& z) {
  Json out = Json::array();
  for (const auto& a : z.zeros()) out.push_back({a.real(), a.imag()});
  return out;
}

Json coefficients_to_json(const LaurentPolynomial& f) {
  Json out = Json::array();
  for (int e = f.lo(); e <= f.hi(); ++e) {
    const auto c = f.coeff(e);
    if (c != std::complex<double>{}) out.push_back({e, c.real(), c.imag()});
  }
  return out;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> header)
    : out_(path), header_(std::move(header)) {
  if (!out_) throw InputError("out", "cannot write " + path.string());
  row(header_);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != header_.size()) throw PreconditionError("csv row width does not match the header");
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
  if (!out_) throw InputError("out", "csv write failed");
}

}  // namespace szego
