#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <complex>
#include <limits>
#include <optional>
#include <type_traits>

namespace szego {

/// Mantissa width of the arithmetic used for a computation.
enum class PrecisionTag : int { Bits53 = 53, Bits128 = 128, Bits256 = 256, Bits512 = 512 };

template <unsigned Bits>
using BinFloat = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<Bits, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

using Real53 = double;
using Real128 = BinFloat<128>;
using Real256 = BinFloat<256>;
using Real512 = BinFloat<512>;

template <class R>
using Complex = std::complex<R>;

template <class R>
inline constexpr int mantissa_bits = std::numeric_limits<R>::digits;

template <PrecisionTag P>
struct real_for;
template <>
struct real_for<PrecisionTag::Bits53> { using type = Real53; };
template <>
struct real_for<PrecisionTag::Bits128> { using type = Real128; };
template <>
struct real_for<PrecisionTag::Bits256> { using type = Real256; };
template <>
struct real_for<PrecisionTag::Bits512> { using type = Real512; };

template <PrecisionTag P>
using RealFor = typename real_for<P>::type;

/// Throws InputError unless bits is one of 53, 128, 256, 512.
PrecisionTag precision_from_bits(int bits);
inline int bits_of(PrecisionTag tag) { return static_cast<int>(tag); }
std::optional<PrecisionTag> next_precision(PrecisionTag tag);

template <class R>
PrecisionTag tag_of() {
  if constexpr (std::is_same_v<R, double>) return PrecisionTag::Bits53;
  else if constexpr (std::is_same_v<R, Real128>) return PrecisionTag::Bits128;
  else if constexpr (std::is_same_v<R, Real256>) return PrecisionTag::Bits256;
  else {
    static_assert(std::is_same_v<R, Real512>);
    return PrecisionTag::Bits512;
  }
}

/// Calls f(std::type_identity<R>{}) with R the real type for the tag.
template <class F>
decltype(auto) with_precision(PrecisionTag tag, F&& f) {
  switch (tag) {
    case PrecisionTag::Bits53:
      return f(std::type_identity<Real53>{});
    case PrecisionTag::Bits128:
      return f(std::type_identity<Real128>{});
    case PrecisionTag::Bits256:
      return f(std::type_identity<Real256>{});
    case PrecisionTag::Bits512:
      break;
  }
  return f(std::type_identity<Real512>{});
}

template <class R>
double to_double(const R& x) {
  return static_cast<double>(x);
}
template <class R>
std::complex<double> to_double(const std::complex<R>& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class R>
std::complex<R> widen(std::complex<double> z) {
  return {R(z.real()), R(z.imag())};
}

/// 2^(-bits/2) at the precision of R: the half-precision tolerance used by
/// the route-equivalence and feasibility checks.
template <class R>
R half_precision_tol() {
  using std::ldexp;
  return ldexp(R(1), -mantissa_bits<R> / 2);
}

}  // namespace szego
