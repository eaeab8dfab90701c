#pragma once

#include "szego/precision.hpp"

#include <algorithm>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace szego {

/// Integer power by repeated squaring; works for multiprecision complex types.
template <class T>
std::complex<T> ipow(std::complex<T> z, long long e) {
  if (e < 0) return ipow(std::complex<T>(T(1)) / z, -e);
  std::complex<T> acc(T(1));
  while (e > 0) {
    if (e & 1) acc *= z;
    z *= z;
    e >>= 1;
  }
  return acc;
}

/// Finitely supported two-sided coefficient sequence: coeffs()[i] multiplies z^(lo()+i).
template <class T>
class Laurent {
 public:
  using value_type = std::complex<T>;

  Laurent() : lo_(0), coeffs_{value_type{}} {}

  Laurent(int lo, std::vector<value_type> coeffs) : lo_(lo), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("Laurent: empty coefficient sequence");
  }

  static Laurent monomial(int exponent, value_type c = value_type(T(1))) {
    return Laurent(exponent, {c});
  }

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
  int span() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<value_type>& coeffs() const { return coeffs_; }
  int precision_bits() const { return mantissa_bits<T>; }

  value_type coeff(int exponent) const {
    if (exponent < lo_ || exponent > hi()) return value_type{};
    return coeffs_[static_cast<std::size_t>(exponent - lo_)];
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const value_type& c) { return c == value_type{}; });
  }

  /// True when no negative exponent carries a nonzero coefficient.
  bool is_analytic() const {
    for (int e = lo_; e < 0 && e <= hi(); ++e)
      if (coeff(e) != value_type{}) return false;
    return true;
  }

  /// Trims exact-zero leading and trailing coefficients; the zero polynomial becomes {0: 0}.
  Laurent normalized() const {
    std::size_t first = 0, last = coeffs_.size();
    while (first < last && coeffs_[first] == value_type{}) ++first;
    while (last > first && coeffs_[last - 1] == value_type{}) --last;
    if (first == last) return Laurent();
    return Laurent(lo_ + static_cast<int>(first),
                   std::vector<value_type>(coeffs_.begin() + static_cast<std::ptrdiff_t>(first),
                                           coeffs_.begin() + static_cast<std::ptrdiff_t>(last)));
  }

  value_type operator()(const value_type& z) const {
    value_type acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return lo_ == 0 ? acc : acc * ipow(z, lo_);
  }

  /// f(z)·z^m.
  Laurent shifted(int m) const { return Laurent(lo_ + m, coeffs_); }

  /// conj(f(1/conj(z))): exponent e goes to -e with conjugated coefficient.
  Laurent reflected() const {
    std::vector<value_type> out(coeffs_.rbegin(), coeffs_.rend());
    for (auto& c : out) c = std::conj(c);
    return Laurent(-hi(), std::move(out));
  }

  Laurent& operator*=(const value_type& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend Laurent operator*(Laurent f, const value_type& s) { return f *= s; }
  friend Laurent operator*(const value_type& s, Laurent f) { return f *= s; }

  friend Laurent operator+(const Laurent& f, const Laurent& g) { return combine(f, g, T(1)); }
  friend Laurent operator-(const Laurent& f, const Laurent& g) { return combine(f, g, T(-1)); }

  friend Laurent operator*(const Laurent& f, const Laurent& g) {
    std::vector<value_type> out(f.coeffs_.size() + g.coeffs_.size() - 1);
    for (std::size_t i = 0; i < f.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < g.coeffs_.size(); ++j) out[i + j] += f.coeffs_[i] * g.coeffs_[j];
    return Laurent(f.lo_ + g.lo_, std::move(out));
  }

  friend bool operator==(const Laurent& f, const Laurent& g) {
    const Laurent a = f.normalized(), b = g.normalized();
    return a.lo_ == b.lo_ && a.coeffs_ == b.coeffs_;
  }

 private:
  static Laurent combine(const Laurent& f, const Laurent& g, T sign) {
    const int lo = std::min(f.lo(), g.lo());
    const int hi = std::max(f.hi(), g.hi());
    std::vector<value_type> out(static_cast<std::size_t>(hi - lo + 1));
    for (int e = lo; e <= hi; ++e) out[static_cast<std::size_t>(e - lo)] = f.coeff(e) + sign * g.coeff(e);
    return Laurent(lo, std::move(out));
  }

  int lo_;
  std::vector<value_type> coeffs_;
};

using LaurentPolynomial = Laurent<double>;

}  // namespace szego
