#include "szego/circle_fourier.hpp"

#include "szego/errors.hpp"
#include "szego/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace szego {
namespace {

using cd = std::complex<double>;

constexpr int kMaxDyadicIndex = 40;

std::int64_t pow2(int e) { return std::int64_t{1} << e; }

}  // namespace

KernelSpec::KernelSpec(Kind kind, int index) : kind_(kind), index_(index) {
  if (index < 0) throw PreconditionError("kernel index must be nonnegative");
  if ((kind == Kind::ValleePoussin || kind == Kind::ModifiedV) && index > kMaxDyadicIndex)
    throw PreconditionError("dyadic kernel index too large");
}

std::string KernelSpec::name() const {
  switch (kind_) {
    case Kind::ValleePoussin:
      return "ValleePoussin(" + std::to_string(index_) + ")";
    case Kind::ModifiedV:
      return "ModifiedV(" + std::to_string(index_) + ")";
    case Kind::ModifiedVP:
      return "ModifiedVP(" + std::to_string(index_) + ")";
    case Kind::Dirichlet:
      return "Dirichlet(" + std::to_string(index_) + ")";
  }
  return {};
}

Rational KernelSpec::multiplier(std::int64_t j) const {
  const std::int64_t a = j < 0 ? -j : j;
  switch (kind_) {
    case Kind::ValleePoussin: {
      if (index_ == 0) return {(j == 0 || j == 1) ? 1 : 0, 1};
      const std::int64_t left = pow2(index_ - 1), mid = pow2(index_), right = pow2(index_ + 1);
      if (j <= left || j >= right) return {0, 1};
      if (j <= mid) return {j - left, left};
      return {right - j, mid};
    }
    case Kind::ModifiedV: {
      if (index_ == 0) return {j == 0 ? 1 : 0, 1};
      const std::int64_t inner = pow2(index_ - 1), outer = pow2(index_);
      if (a <= inner) return {1, 1};
      if (a >= outer) return {0, 1};
      return {outer - a, inner};
    }
    case Kind::ModifiedVP: {
      const std::int64_t n = index_;
      if (a <= n) return {1, 1};
      if (a >= 2 * n) return {0, 1};
      return {2 * n - a, n};
    }
    case Kind::Dirichlet:
      return {(j >= 0 && j <= index_) ? 1 : 0, 1};
  }
  return {0, 1};
}

std::pair<std::int64_t, std::int64_t> KernelSpec::support() const {
  switch (kind_) {
    case Kind::ValleePoussin:
      if (index_ == 0) return {0, 1};
      return {pow2(index_ - 1), pow2(index_ + 1)};
    case Kind::ModifiedV:
      if (index_ == 0) return {0, 0};
      return {-pow2(index_), pow2(index_)};
    case Kind::ModifiedVP:
      return {-2 * std::int64_t{index_}, 2 * std::int64_t{index_}};
    case Kind::Dirichlet:
      return {0, index_};
  }
  return {0, 0};
}

LaurentPolynomial kernel_coeffs(const KernelSpec& spec) {
  const auto [lo, hi] = spec.support();
  std::vector<cd> c(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t j = lo; j <= hi; ++j) c[static_cast<std::size_t>(j - lo)] = spec.multiplier(j).value();
  return LaurentPolynomial(static_cast<int>(lo), std::move(c)).normalized();
}

LaurentPolynomial convolve(const LaurentPolynomial& f, const KernelSpec& k) {
  const auto [klo, khi] = k.support();
  const std::int64_t lo = std::max<std::int64_t>(f.lo(), klo);
  const std::int64_t hi = std::min<std::int64_t>(f.hi(), khi);
  if (lo > hi) return LaurentPolynomial();
  std::vector<cd> c(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t j = lo; j <= hi; ++j)
    c[static_cast<std::size_t>(j - lo)] = f.coeff(static_cast<int>(j)) * k.multiplier(j).value();
  return LaurentPolynomial(static_cast<int>(lo), std::move(c)).normalized();
}

bool kernel_identity_vk_vpn(int k, int n) {
  if (k < 0 || n < 0 || k > 62 || pow2(k) > n)
    throw PreconditionError("kernel identity V_k * VP_n = V_k requires 2^k <= n");
  const KernelSpec v = KernelSpec::modified_v(k);
  const KernelSpec vp = KernelSpec::modified_vp(n);
  const std::int64_t reach = std::max(v.support().second, vp.support().second) + 1;
  for (std::int64_t j = -reach; j <= reach; ++j) {
    const Rational a = v.multiplier(j);
    if (!(a * vp.multiplier(j) == a)) return false;
  }
  return true;
}

CircleGrid sample_on_grid(const LaurentPolynomial& f, std::size_t M) {
  std::vector<cd> buf(M);
  const auto m = static_cast<std::int64_t>(M);
  for (int i = 0; i <= f.span(); ++i) {
    std::int64_t e = (static_cast<std::int64_t>(f.lo()) + i) % m;
    if (e < 0) e += m;
    buf[static_cast<std::size_t>(e)] += f.coeffs()[static_cast<std::size_t>(i)];
  }
  fft::transform(buf, fft::Direction::Backward);
  return {M, std::move(buf)};
}

namespace {

// |f|^2 and its first two derivatives in θ at exp(iθ).
struct ModulusJet {
  double g, dg, d2g;
};

ModulusJet modulus_jet(const LaurentPolynomial& f, double theta) {
  cd v{}, v1{}, v2{};
  for (int i = 0; i <= f.span(); ++i) {
    const int e = f.lo() + i;
    const cd term = f.coeffs()[static_cast<std::size_t>(i)] * std::polar(1.0, e * theta);
    v += term;
    v1 += cd(0, e) * term;
    v2 -= static_cast<double>(e) * e * term;
  }
  return {std::norm(v), 2 * std::real(std::conj(v) * v1), 2 * (std::norm(v1) + std::real(std::conj(v) * v2))};
}

}  // namespace

SupEstimate sup_norm(const LaurentPolynomial& f, int oversample) {
  if (oversample < 4) throw PreconditionError("sup_norm: oversample must be >= 4");
  const LaurentPolynomial g = f.normalized();
  if (g.span() == 0) {
    const double v = std::abs(g.coeffs()[0]);
    return {v, v, 1};
  }
  const std::size_t M = fft::next_pow2(static_cast<std::size_t>(oversample) * (g.span() + 1));
  const CircleGrid grid = sample_on_grid(g, M);
  std::size_t best = 0;
  for (std::size_t m = 1; m < M; ++m)
    if (std::norm(grid.values[m]) > std::norm(grid.values[best])) best = m;

  double best_sq = std::norm(grid.values[best]);
  const double step = 2 * std::numbers::pi / static_cast<double>(M);
  double theta = step * static_cast<double>(best);
  for (int it = 0; it < 3; ++it) {
    const ModulusJet jet = modulus_jet(g, theta);
    if (!(jet.d2g < 0)) break;
    const double next = theta - jet.dg / jet.d2g;
    if (std::abs(next - step * static_cast<double>(best)) > step) break;
    const double val = modulus_jet(g, next).g;
    if (val < best_sq) break;
    best_sq = val;
    theta = next;
  }
  const double value = std::sqrt(best_sq);
  const double sigma = 0.5 * g.span();
  const double loss = std::numbers::pi * sigma / static_cast<double>(M);
  return {value, value / (1.0 - loss), M};
}

double lp_norm(const LaurentPolynomial& f, NormOrder p) {
  switch (p) {
    case NormOrder::L2: {
      double s = 0.0;
      for (const cd& c : f.coeffs()) s += std::norm(c);
      return std::sqrt(s);
    }
    case NormOrder::Linf:
      return sup_norm(f).value;
    case NormOrder::L1:
      break;
  }
  const LaurentPolynomial g = f.normalized();
  if (g.span() == 0) return std::abs(g.coeffs()[0]);
  std::size_t M = fft::next_pow2(std::max<std::size_t>(8 * static_cast<std::size_t>(g.span() + 1), 64));
  auto mean_abs = [&](std::size_t size) {
    const CircleGrid grid = sample_on_grid(g, size);
    double s = 0.0;
    for (const cd& v : grid.values) s += std::abs(v);
    return s / static_cast<double>(size);
  };
  double prev = mean_abs(M);
  constexpr std::size_t kMaxGrid = std::size_t{1} << 22;
  while (M < kMaxGrid) {
    M *= 2;
    const double cur = mean_abs(M);
    if (std::abs(cur - prev) <= 1e-11 * std::max(cur, 1e-300)) return cur;
    prev = cur;
  }
  return prev;
}

double besov_seminorm(const LaurentPolynomial& f, double s, NormOrder p) {
  const LaurentPolynomial g = f.normalized();
  if (!g.is_analytic()) throw PreconditionError("besov_seminorm: negative exponents present");
  if (g.is_zero()) return 0.0;
  double best = 0.0;
  for (int n = 0; n <= 40; ++n) {
    if (n >= 1 && (std::int64_t{1} << (n - 1)) >= g.hi()) break;
    const LaurentPolynomial block = convolve(g, KernelSpec::vallee_poussin(n));
    if (block.is_zero()) continue;
    best = std::max(best, std::exp2(n * s) * lp_norm(block, p));
  }
  return best;
}

double golden_refine(const std::function<double(double)>& g, double center, double half_width,
                     int iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double a = center - half_width, b = center + half_width;
  double best = g(center);
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = g(x1), f2 = g(x2);
  for (int i = 0; i < iterations; ++i) {
    if (f1 > f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = g(x2);
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

}  // namespace szego
