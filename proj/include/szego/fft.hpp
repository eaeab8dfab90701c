#pragma once

#include <complex>
#include <vector>

namespace szego::fft {

enum class Direction { Forward, Backward };

/// Unnormalized in-place DFT. Forward uses exp(-2πi jm/M), Backward exp(+2πi jm/M).
/// Any length is accepted; callers use powers of two.
void transform(std::vector<std::complex<double>>& data, Direction dir);

std::size_t next_pow2(std::size_t n);

}  // namespace szego::fft
