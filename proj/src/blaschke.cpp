#include "szego/blaschke.hpp"

#include "szego/errors.hpp"
#include "szego/fft.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace szego {
namespace {

using cd = std::complex<double>;

constexpr double kPoleGuard = 0x1p-40;

// (|a|/a) for a != 0 and -1 for a = 0, so that unit·(a - z) is z when a = 0.
cd factor_unit(cd a) { return a == cd{} ? cd(-1.0) : std::conj(a) / std::abs(a); }

double two_pi() { return 2 * std::numbers::pi; }

cd node(std::size_t m, std::size_t M) { return std::polar(1.0, two_pi() * static_cast<double>(m) / static_cast<double>(M)); }

// (1/2π)∫ |ρe^{iθ} - 1|^{-p} dθ.
double circle_kernel_integral(double rho, int p, std::size_t M) {
  if (p == 1) {
    const double k = 2 * std::sqrt(rho) / (rho + 1);
    return 2 * std::comp_ellint_1(k) / (std::numbers::pi * (rho + 1));
  }
  if (p == 2) return 1.0 / (rho * rho - 1);
  double s = 0.0;
  for (std::size_t q = 0; q < M; ++q) s += std::pow(std::abs(rho * node(q, M) - 1.0), -p);
  return s / static_cast<double>(M);
}

}  // namespace

ZeroSet::ZeroSet(std::vector<cd> zeros, Region where) : zeros_(std::move(zeros)), where_(where) {
  for (const cd& z : zeros_) {
    const double r = std::abs(z);
    if (!std::isfinite(r)) throw InputError("zeros", "non-finite zero");
    if (where_ == Region::InsideDisk && !(r < 1.0))
      throw InputError("zeros", "zero outside the open unit disk");
    if (where_ == Region::OutsideDisk && !(r > 1.0))
      throw InputError("zeros", "zero not strictly outside the closed unit disk");
  }
}

double ZeroSet::blaschke_sum() const {
  double s = 0.0;
  for (const cd& z : zeros_) s += where_ == Region::InsideDisk ? 1.0 - std::abs(z) : std::abs(z) - 1.0;
  return s;
}

ZeroSet ZeroSet::reflected() const {
  std::vector<cd> out;
  out.reserve(zeros_.size());
  for (const cd& z : zeros_) {
    if (z == cd{}) throw PreconditionError("cannot reflect a zero at the origin");
    out.push_back(1.0 / std::conj(z));
  }
  return ZeroSet(std::move(out), where_ == Region::InsideDisk ? Region::OutsideDisk : Region::InsideDisk);
}

BlaschkeProduct BlaschkeProduct::normalize_positive(ZeroSet zeros) { return BlaschkeProduct(std::move(zeros), cd(1.0)); }

BlaschkeProduct::BlaschkeProduct(ZeroSet zeros, cd rotation) : zeros_(std::move(zeros)), rotation_(rotation) {
  if (zeros_.where() != Region::InsideDisk) throw InputError("zeros", "Blaschke product needs zeros inside the disk");
  if (std::abs(std::abs(rotation) - 1.0) > 1e-12) throw InputError("rotation", "rotation must be unimodular");
}

cd BlaschkeProduct::value_at_zero() const {
  double p = 1.0;
  for (const cd& a : zeros_.zeros()) p *= std::abs(a);
  return rotation_ * p;
}

cd eval_blaschke(const BlaschkeProduct& b, cd z) {
  cd acc = b.rotation();
  for (const cd& a : b.zeros().zeros()) {
    const cd den = 1.0 - std::conj(a) * z;
    if (std::abs(den) < kPoleGuard) throw NumericError("PoleProximity", "evaluation point at a Blaschke pole");
    acc *= factor_unit(a) * (a - z) / den;
  }
  return acc;
}

DilatedCorrector::DilatedCorrector(ZeroSet zeros, double radius) : zeros_(std::move(zeros)), radius_(radius) {
  if (zeros_.where() != Region::InsideDisk) throw InputError("zeros", "corrector zeros must lie inside the disk");
  if (!(radius > 1.0) || !std::isfinite(radius)) throw PreconditionError("corrector radius must exceed 1");
}

DilatedCorrector build_corrector(const ZeroSet& zeros, double epsilon) {
  if (zeros.empty()) throw PreconditionError("build_corrector: empty zero set");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw PreconditionError("build_corrector: epsilon must lie in (0, 1]");
  return DilatedCorrector(zeros, 1.0 + epsilon / static_cast<double>(zeros.size()));
}

cd eval_phi(const DilatedCorrector& c, cd z) {
  const double r2 = c.radius() * c.radius();
  cd acc = 1.0;
  for (const cd& a : c.zeros().zeros()) {
    const cd den = 1.0 - std::conj(a) * z / r2;
    if (std::abs(den) < kPoleGuard) throw NumericError("PoleProximity", "evaluation point at a corrector pole");
    acc *= (1.0 - std::conj(a) * z) / den;
  }
  return acc;
}

cd eval_B_phi(const DilatedCorrector& c, cd z) {
  const double r2 = c.radius() * c.radius();
  cd acc = 1.0;
  for (const cd& a : c.zeros().zeros()) {
    const cd den = 1.0 - std::conj(a) * z / r2;
    if (std::abs(den) < kPoleGuard) throw NumericError("PoleProximity", "evaluation point at a corrector pole");
    acc *= factor_unit(a) * (a - z) / den;
  }
  return acc;
}

cd eval_B_phi_derivative(const DilatedCorrector& c, cd z) {
  const double r2 = c.radius() * c.radius();
  const auto& zs = c.zeros().zeros();
  const std::size_t n = zs.size();
  std::vector<cd> value(n), slope(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cd a = zs[k];
    const cd den = 1.0 - std::conj(a) * z / r2;
    if (std::abs(den) < kPoleGuard) throw NumericError("PoleProximity", "evaluation point at a corrector pole");
    const cd u = factor_unit(a);
    value[k] = u * (a - z) / den;
    slope[k] = u * (std::norm(a) / r2 - 1.0) / (den * den);
  }
  // Σ_k slope_k · Π_{j≠k} value_j via prefix/suffix products.
  std::vector<cd> suffix(n + 1, 1.0);
  for (std::size_t k = n; k-- > 0;) suffix[k] = suffix[k + 1] * value[k];
  cd prefix = 1.0, acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += prefix * slope[k] * suffix[k + 1];
    prefix *= value[k];
  }
  return acc;
}

std::size_t corrector_grid_size(const DilatedCorrector& c, int oversample) {
  const double width = 4.0 * std::max(oversample, 16) / (c.radius() - 1.0);
  return fft::next_pow2(static_cast<std::size_t>(std::ceil(std::max(width, 64.0))));
}

namespace {

template <class F>
double circle_sup(F&& modulus, std::size_t M) {
  std::size_t best = 0;
  double best_val = -1.0;
  for (std::size_t m = 0; m < M; ++m) {
    const double v = modulus(two_pi() * static_cast<double>(m) / static_cast<double>(M));
    if (v > best_val) {
      best_val = v;
      best = m;
    }
  }
  const double step = two_pi() / static_cast<double>(M);
  return golden_refine(modulus, step * static_cast<double>(best), step);
}

}  // namespace

double sup_phi(const DilatedCorrector& c, int oversample) {
  const std::size_t M = corrector_grid_size(c, oversample);
  return circle_sup([&](double t) { return std::abs(eval_phi(c, std::polar(1.0, t))); }, M);
}

DerivativeSup derivative_sup(const DilatedCorrector& c, int order, int oversample) {
  if (order < 1) throw PreconditionError("derivative_sup: order must be >= 1");
  const std::size_t M = corrector_grid_size(c, oversample);
  const double R = c.radius();
  const double rho = 0.5 * (1.0 + R);
  const double fact = std::tgamma(order + 1.0);

  DerivativeSup out;
  out.order = order;
  out.grid_size = M;
  out.cauchy_bound = fact * std::pow(R, c.degree()) * rho * circle_kernel_integral(rho, order + 1, M);

  if (order == 1) {
    out.value = circle_sup([&](double t) { return std::abs(eval_B_phi_derivative(c, std::polar(1.0, t))); }, M);
    return out;
  }

  // f^(s)(ω^m) = (s!/M) ω^{-ms} Σ_q F_q K_{q-m}, F_q = f(ρω^q), K_d = ρω^d/(ρω^d - 1)^{s+1}.
  std::vector<cd> samples(M), K(M);
  for (std::size_t q = 0; q < M; ++q) {
    samples[q] = eval_B_phi(c, rho * node(q, M));
    // K'_d = K_{-d}: correlation as a circular convolution.
    const cd w = rho * node((M - q) % M, M);
    K[q] = w / std::pow(w - 1.0, order + 1);
  }
  std::vector<cd> F = samples;
  fft::transform(F, fft::Direction::Forward);
  fft::transform(K, fft::Direction::Forward);
  for (std::size_t q = 0; q < M; ++q) F[q] *= K[q];
  fft::transform(F, fft::Direction::Backward);
  const double scale = fact / (static_cast<double>(M) * static_cast<double>(M));

  auto pointwise = [&](double theta) {
    const cd z0 = std::polar(1.0, theta);
    cd acc = 0.0;
    for (std::size_t q = 0; q < M; ++q) {
      const cd zq = rho * node(q, M);
      acc += samples[q] * zq / std::pow(zq - z0, order + 1);
    }
    return std::abs(acc) * fact / static_cast<double>(M);
  };

  std::size_t best = 0;
  for (std::size_t m = 1; m < M; ++m)
    if (std::abs(F[m]) > std::abs(F[best])) best = m;
  const double step = two_pi() / static_cast<double>(M);
  out.value = std::max(std::abs(F[best]) * scale,
                       golden_refine(pointwise, step * static_cast<double>(best), step, 24));
  return out;
}

LaurentPolynomial taylor_coeffs(const DilatedCorrector& c, int upto, double tol) {
  if (upto < 0) throw PreconditionError("taylor_coeffs: upto must be >= 0");
  if (!(tol > 0.0)) throw PreconditionError("taylor_coeffs: tol must be positive");
  const double R = c.radius();
  const double log_r = std::log(R);
  const double sup_outer = std::exp(c.degree() * log_r);  // |Bφ0| = R^n on the circle |z| = R
  constexpr std::size_t kMaxGrid = std::size_t{1} << 24;

  std::size_t M = fft::next_pow2(std::max<std::size_t>(4 * (static_cast<std::size_t>(upto) + 1), 64));
  auto alias_bound = [&](std::size_t m) {
    const double t = std::exp(-static_cast<double>(m) * log_r);
    return sup_outer * t / (1.0 - t);
  };
  while (alias_bound(M) > 0.5 * tol && M < kMaxGrid) M *= 2;
  const double roundoff = 4.0 * std::numeric_limits<double>::epsilon() * sup_outer * std::log2(static_cast<double>(M));
  const double achieved = alias_bound(M) + roundoff;
  if (achieved > tol)
  {
    char buf[96];
    std::snprintf(buf, sizeof buf, "taylor_coeffs: tolerance %.3g unreachable, achieved bound %.3g", tol, achieved);
    throw NumericError("ToleranceUnreachable", buf);
  }

  std::vector<cd> values(M);
  for (std::size_t m = 0; m < M; ++m) values[m] = eval_B_phi(c, node(m, M));
  fft::transform(values, fft::Direction::Forward);
  std::vector<cd> coeffs(static_cast<std::size_t>(upto) + 1);
  for (std::size_t j = 0; j < coeffs.size(); ++j) coeffs[j] = values[j] / static_cast<double>(M);
  return LaurentPolynomial(0, std::move(coeffs));
}

int besov_truncation_degree(const DilatedCorrector& c, int s) {
  const double R = c.radius();
  const double n = c.degree();
  const double head = std::pow(R, n) / (1.0 - 1.0 / R);
  const double step = std::max(1.0, n);
  double D = 4 * step;
  while (true) {
    const double tail = head * std::pow(R, -(D + 1));
    if (tail * std::pow(4 * D, s) <= 1e-10 * std::pow(n, s) || D > 1e7) break;
    D += step;
  }
  return static_cast<int>(D);
}

CorrectorCertificate corrector_certificate(const DilatedCorrector& c, std::span<const int> s_list, int oversample,
                                           bool with_besov) {
  CorrectorCertificate cert;
  cert.n = c.degree();
  cert.epsilon = c.epsilon();
  cert.radius = c.radius();
  cert.sup_phi = sup_phi(c, oversample);
  cert.phi0_error = std::abs(eval_phi(c, 0.0) - 1.0);
  const double n = cert.n;
  for (int s : s_list) {
    SmoothnessEntry e;
    e.s = s;
    const DerivativeSup d = derivative_sup(c, s, oversample);
    e.derivative_sup = d.value;
    e.cauchy_bound = d.cauchy_bound;
    e.derivative_ratio = d.value / std::pow(n, s);
    if (with_besov) {
      const LaurentPolynomial trunc = taylor_coeffs(c, besov_truncation_degree(c, s), 1e-13);
      e.besov_seminorm = besov_seminorm(trunc, s, NormOrder::Linf);
      e.besov_ratio = e.besov_seminorm / std::pow(n, s);
    }
    cert.smoothness.push_back(e);
  }
  return cert;
}

}  // namespace szego
