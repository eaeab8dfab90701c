#pragma once

#include "szego/circle_fourier.hpp"
#include "szego/laurent.hpp"
#include "szego/precision.hpp"

#include <complex>
#include <span>
#include <vector>

namespace szego {

enum class Region { InsideDisk, OutsideDisk };

/// Finite multiset of zeros (multiplicity by repetition) strictly inside or
/// strictly outside the unit circle.
class ZeroSet {
 public:
  ZeroSet() = default;
  ZeroSet(std::vector<std::complex<double>> zeros, Region where);

  const std::vector<std::complex<double>>& zeros() const { return zeros_; }
  Region where() const { return where_; }
  std::size_t size() const { return zeros_.size(); }
  bool empty() const { return zeros_.empty(); }

  /// Σ(1 - |z|) inside, Σ(|z| - 1) outside.
  double blaschke_sum() const;
  /// z ↦ 1/conj(z); swaps the region.
  ZeroSet reflected() const;

 private:
  std::vector<std::complex<double>> zeros_;
  Region where_ = Region::InsideDisk;
};

/// rotation · Π b_k with b_k(z) = (|a|/a)(a - z)/(1 - conj(a) z) and b_k(z) = z for a = 0,
/// so that B(0) = rotation · Π|a_k|.
class BlaschkeProduct {
 public:
  /// Rotation 1: B(0) = Π|z_k| > 0 (or B ≡ 1 for no zeros).
  static BlaschkeProduct normalize_positive(ZeroSet zeros);
  BlaschkeProduct(ZeroSet zeros, std::complex<double> rotation);

  const ZeroSet& zeros() const { return zeros_; }
  std::complex<double> rotation() const { return rotation_; }
  std::complex<double> value_at_zero() const;

 private:
  ZeroSet zeros_;
  std::complex<double> rotation_;
};

/// Throws NumericError("PoleProximity") within 2^-40 of a pole.
std::complex<double> eval_blaschke(const BlaschkeProduct& b, std::complex<double> z);

/// The outer corrector φ0(z) = Π (1 - conj(a_k) z)/(1 - conj(a_k) z / R^2) built on
/// n zeros at dilation radius R; B·φ0 = R^n·B̃ with B̃ the Blaschke product of
/// the same zeros for the disk of radius R.
class DilatedCorrector {
 public:
  DilatedCorrector(ZeroSet zeros, double radius);

  const ZeroSet& zeros() const { return zeros_; }
  int degree() const { return static_cast<int>(zeros_.size()); }
  double radius() const { return radius_; }
  /// ε with R = 1 + ε/n.
  double epsilon() const { return (radius_ - 1.0) * degree(); }

 private:
  ZeroSet zeros_;
  double radius_;
};

/// R = 1 + ε/n with n = number of zeros; zeros nonempty, inside, 0 < ε <= 1.
DilatedCorrector build_corrector(const ZeroSet& zeros, double epsilon = 1.0);

std::complex<double> eval_phi(const DilatedCorrector& c, std::complex<double> z);
/// B·φ0 evaluated as the dilated product Π (|a|/a)(a - z)/(1 - conj(a) z/R^2).
std::complex<double> eval_B_phi(const DilatedCorrector& c, std::complex<double> z);
/// (B·φ0)' by the product rule over factors.
std::complex<double> eval_B_phi_derivative(const DilatedCorrector& c, std::complex<double> z);

/// Grid size used for circle sampling of the corrector: next_pow2(4·max(oversample,16)/(R-1)),
/// i.e. 64·n/ε nodes at the default oversample.
std::size_t corrector_grid_size(const DilatedCorrector& c, int oversample);

struct DerivativeSup {
  int order = 1;
  double value = 0.0;        // sup over the circle of |(Bφ0)^(order)|
  double cauchy_bound = 0.0; // order!·R^n·ρ·(1/2π)∫|ρe^{iθ} - 1|^{-order-1} dθ, ρ = (1+R)/2
  std::size_t grid_size = 0;
};

/// Order 1 by the closed-form derivative; order >= 2 by the trapezoidal Cauchy
/// integral on radius (1+R)/2, applied to all grid nodes at once by FFT convolution.
DerivativeSup derivative_sup(const DilatedCorrector& c, int order, int oversample = 16);

/// sup over the circle of |φ0|, sampled and refined.
double sup_phi(const DilatedCorrector& c, int oversample = 16);

/// Taylor coefficients 0..upto of B·φ0 by circle-sampled DFT; the grid is
/// doubled until the aliasing majorant R^n·R^(-M)/(1 - R^(-M)) drops below tol/2.
/// Throws NumericError("ToleranceUnreachable") with the achieved bound otherwise.
LaurentPolynomial taylor_coeffs(const DilatedCorrector& c, int upto, double tol);

/// Exact Taylor coefficients 0..upto of B·φ0 by series recurrence in the
/// arithmetic of R: one (a - z) multiply and one geometric divide per zero.
template <class R>
std::vector<Complex<R>> taylor_series(const DilatedCorrector& c, int upto) {
  std::vector<Complex<R>> s(static_cast<std::size_t>(upto) + 1);
  s[0] = Complex<R>(R(1));
  const R radius_sq = R(c.radius()) * R(c.radius());
  using std::abs;
  for (const auto& zd : c.zeros().zeros()) {
    const Complex<R> a = widen<R>(zd);
    const Complex<R> unit = zd == std::complex<double>{} ? Complex<R>(R(-1)) : std::conj(a) / abs(a);
    const Complex<R> b = std::conj(a) / radius_sq;
    for (std::size_t j = s.size(); j-- > 0;) s[j] = a * s[j] - (j > 0 ? s[j - 1] : Complex<R>{});
    for (std::size_t j = 0; j < s.size(); ++j) {
      s[j] *= unit;
      if (j > 0) s[j] += b * s[j - 1];
    }
  }
  return s;
}

struct SmoothnessEntry {
  int s = 1;
  double derivative_sup = 0.0;
  double cauchy_bound = 0.0;
  double derivative_ratio = 0.0;  // derivative_sup / n^s
  double besov_seminorm = 0.0;    // Besov (p = q = ∞) seminorm of the Taylor truncation
  double besov_ratio = 0.0;       // besov_seminorm / n^s
};

struct CorrectorCertificate {
  int n = 0;
  double epsilon = 1.0;
  double radius = 0.0;
  double sup_phi = 0.0;
  double phi0_error = 0.0;  // |φ0(0) - 1|
  std::vector<SmoothnessEntry> smoothness;
};

/// Degree of the Taylor truncation used for the Besov ratio: the tail majorant
/// times (4D)^s stays below 1e-10·n^s.
int besov_truncation_degree(const DilatedCorrector& c, int s);

CorrectorCertificate corrector_certificate(const DilatedCorrector& c, std::span<const int> s_list,
                                           int oversample = 16, bool with_besov = true);

}  // namespace szego
