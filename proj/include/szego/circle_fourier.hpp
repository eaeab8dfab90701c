#pragma once

#include "szego/laurent.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace szego {

/// Exact kernel multiplier value num/den (den > 0).
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num * b.den == b.num * a.den; }
  friend Rational operator*(const Rational& a, const Rational& b) { return {a.num * b.num, a.den * b.den}; }
};

/// Fourier-multiplier kernels on the circle.
///
///  - ValleePoussin(n): the dyadic block W_n. W_0 = 1 + z; for n >= 1 the
///    multiplier is 1 at 2^n, vanishes outside (2^(n-1), 2^(n+1)) and is
///    affine on both halves. One sided (zero on negative frequencies).
///  - ModifiedV(k): 1 for |j| <= 2^(k-1), 0 for |j| >= 2^k, affine between.
///  - ModifiedVP(n): 1 for |j| <= n, 0 for |j| >= 2n, affine between.
///  - Dirichlet(n): 1 on [0, n] (Taylor projection), 0 elsewhere.
class KernelSpec {
 public:
  enum class Kind { ValleePoussin, ModifiedV, ModifiedVP, Dirichlet };

  static KernelSpec vallee_poussin(int n) { return KernelSpec(Kind::ValleePoussin, n); }
  static KernelSpec modified_v(int k) { return KernelSpec(Kind::ModifiedV, k); }
  static KernelSpec modified_vp(int n) { return KernelSpec(Kind::ModifiedVP, n); }
  static KernelSpec dirichlet(int n) { return KernelSpec(Kind::Dirichlet, n); }

  Kind kind() const { return kind_; }
  int index() const { return index_; }
  std::string name() const;

  Rational multiplier(std::int64_t j) const;
  /// Closed frequency range outside of which the multiplier vanishes.
  std::pair<std::int64_t, std::int64_t> support() const;

 private:
  KernelSpec(Kind kind, int index);
  Kind kind_;
  int index_;
};

/// Exact Fourier coefficients of the kernel, trimmed to its nonzero range.
LaurentPolynomial kernel_coeffs(const KernelSpec& spec);

/// Coefficientwise product f̂(j)·k̂(j).
LaurentPolynomial convolve(const LaurentPolynomial& f, const KernelSpec& k);

/// Exhaustive exact check that ModifiedV(k)·ModifiedVP(n) = ModifiedV(k)
/// as multipliers. Requires 2^k <= n (PreconditionError otherwise).
bool kernel_identity_vk_vpn(int k, int n);

/// Samples on the M equispaced nodes exp(2πim/M).
struct CircleGrid {
  std::size_t size = 0;
  std::vector<std::complex<double>> values;
};

/// Evaluates f at the M-th roots of unity by one FFT (aliasing folded exactly).
CircleGrid sample_on_grid(const LaurentPolynomial& f, std::size_t M);

struct SupEstimate {
  double value = 0.0;        // best sampled/refined max |f|
  double upper_bound = 0.0;  // Bernstein-certified bound on the true sup
  std::size_t grid_size = 0;
};

/// max |f| on the circle: grid of next_pow2(oversample·(span+1)) nodes and
/// three Newton steps on |f|^2 from the best node. oversample >= 4.
SupEstimate sup_norm(const LaurentPolynomial& f, int oversample = 16);

enum class NormOrder { L1, L2, Linf };

/// L^p(m) norm with m normalized arc length. L2 is Parseval, L1 grid
/// quadrature refined until stable, Linf delegates to sup_norm.
double lp_norm(const LaurentPolynomial& f, NormOrder p);

/// sup over n >= 0 of 2^(ns)·‖W_n ⋆ f‖_p (the q = ∞ Besov seminorm).
/// f must be analytic (PreconditionError otherwise).
double besov_seminorm(const LaurentPolynomial& f, double s, NormOrder p);

/// Maximizes g on [center - half_width, center + half_width] by golden
/// section; returns the best value seen, never below g(center).
double golden_refine(const std::function<double(double)>& g, double center, double half_width,
                     int iterations = 48);

}  // namespace szego
