#include "szego/zero_gen.hpp"

#include "szego/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace szego {
namespace {

// 53 random bits mapped to [0, 1); independent of the standard library's distributions.
double unit(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1p-53; }

}  // namespace

ZeroKind parse_zero_kind(const std::string& s) {
  if (s == "uniform_disk") return ZeroKind::UniformDisk;
  if (s == "boundary_cluster") return ZeroKind::BoundaryCluster;
  if (s == "radial_line") return ZeroKind::RadialLine;
  throw InputError("kind", "unknown zero-set kind '" + s + "'");
}

std::string zero_kind_name(ZeroKind k) {
  switch (k) {
    case ZeroKind::UniformDisk:
      return "uniform_disk";
    case ZeroKind::BoundaryCluster:
      return "boundary_cluster";
    case ZeroKind::RadialLine:
      return "radial_line";
  }
  return "uniform_disk";
}

ZeroSet generate_zeros(ZeroKind kind, int n, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("generate_zeros: n must be >= 1");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(kind)};
  std::mt19937_64 gen(seq);
  constexpr double two_pi = 2 * std::numbers::pi;
  std::vector<std::complex<double>> z;
  z.reserve(static_cast<std::size_t>(n));
  switch (kind) {
    case ZeroKind::UniformDisk:
      for (int i = 0; i < n; ++i) {
        const double r = std::sqrt(unit(gen));
        z.push_back(std::polar(r, two_pi * unit(gen)));
      }
      break;
    case ZeroKind::BoundaryCluster: {
      const double lo = std::max(0.0, 1.0 - 4.0 / n), hi = 1.0 - 1.0 / (4.0 * n);
      for (int i = 0; i < n; ++i) {
        const double r = lo + (hi - lo) * unit(gen);
        z.push_back(std::polar(r, two_pi * unit(gen)));
      }
      break;
    }
    case ZeroKind::RadialLine: {
      const double r = 0.5 + 0.49 * unit(gen);
      const double theta = two_pi * unit(gen);
      double rj = 1.0;
      for (int j = 1; j <= n; ++j) {
        rj *= r;
        z.push_back(std::polar(rj, theta));
      }
      break;
    }
  }
  return ZeroSet(std::move(z), Region::InsideDisk);
}

}  // namespace szego
