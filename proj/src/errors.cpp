#include "szego/errors.hpp"

namespace szego {

NotPositiveDefinite::NotPositiveDefinite(std::size_t pivot, int bits)
    : NumericError("NotPositiveDefinite",
                   "matrix not numerically positive definite at pivot " +
                       std::to_string(pivot) + " with " + std::to_string(bits) +
                       "-bit mantissa"),
      pivot_(pivot),
      bits_(bits) {}

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Input:
      return 2;
    case ErrorKind::Numeric:
      return 3;
    case ErrorKind::Schedule:
      return 4;
  }
  return 1;
}

}  // namespace szego
