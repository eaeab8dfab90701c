#pragma once

#include "szego/blaschke.hpp"

#include <cstdint>
#include <string>

namespace szego {

enum class ZeroKind { UniformDisk, BoundaryCluster, RadialLine };

ZeroKind parse_zero_kind(const std::string& s);
std::string zero_kind_name(ZeroKind k);

/// Deterministic pseudo-random zeros inside the disk. The stream is seeded
/// from (seed, n, kind), so every instance is reproducible in isolation.
///  - UniformDisk: area-uniform.
///  - BoundaryCluster: |z| uniform in [max(0, 1 - 4/n), 1 - 1/(4n)].
///  - RadialLine: r^j·e^{iθ0}, j = 1..n, with r in [0.5, 0.99] and θ0 seeded.
ZeroSet generate_zeros(ZeroKind kind, int n, std::uint64_t seed);

}  // namespace szego
