#include "szego/precision.hpp"

#include "szego/errors.hpp"

#include <string>

namespace szego {

PrecisionTag precision_from_bits(int bits) {
  switch (bits) {
    case 53:
      return PrecisionTag::Bits53;
    case 128:
      return PrecisionTag::Bits128;
    case 256:
      return PrecisionTag::Bits256;
    case 512:
      return PrecisionTag::Bits512;
    default:
      throw InputError("precision_bits", "unsupported precision " + std::to_string(bits) +
                                             " (expected 53, 128, 256 or 512)");
  }
}

std::optional<PrecisionTag> next_precision(PrecisionTag tag) {
  switch (tag) {
    case PrecisionTag::Bits53:
      return PrecisionTag::Bits128;
    case PrecisionTag::Bits128:
      return PrecisionTag::Bits256;
    case PrecisionTag::Bits256:
      return PrecisionTag::Bits512;
    case PrecisionTag::Bits512:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace szego
