#include "szego/measure.hpp"

#include "szego/errors.hpp"
#include "szego/fft.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace szego {
namespace {

using cd = std::complex<double>;

constexpr std::size_t kMaxMomentGrid = std::size_t{1} << 20;
constexpr std::size_t kMaxResidueGrid = std::size_t{1} << 18;

LaurentPolynomial as_taylor(const LaurentPolynomial& psi) {
  const LaurentPolynomial p = psi.normalized();
  if (p.is_zero()) throw InputError("psi", "psi is identically zero");
  if (!p.is_analytic()) throw InputError("psi", "psi must be a polynomial (no negative powers)");
  std::vector<cd> c(static_cast<std::size_t>(p.hi()) + 1);
  for (int e = 0; e <= p.hi(); ++e) c[static_cast<std::size_t>(e)] = p.coeff(e);
  return LaurentPolynomial(0, std::move(c));
}

// cos/sin of 2πj/M for j < M, from a quarter-period table.
template <class R>
std::vector<Complex<R>> unit_roots(std::size_t M) {
  using std::cos;
  using std::sin;
  std::vector<Complex<R>> out(M);
  const std::size_t q = M / 4;
  const R step = 2 * boost::math::constants::pi<R>() / R(static_cast<double>(M));
  for (std::size_t j = 0; j < q; ++j) {
    const R t = step * R(static_cast<double>(j));
    const R c = cos(t), s = sin(t);
    out[j] = Complex<R>(c, s);
    out[j + q] = Complex<R>(-s, c);
    out[j + 2 * q] = Complex<R>(-c, -s);
    out[j + 3 * q] = Complex<R>(s, -c);
  }
  return out;
}

template <class R>
Complex<R> horner(const std::vector<Complex<R>>& c, const Complex<R>& z) {
  Complex<R> acc{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

template <class R>
std::vector<Complex<R>> widen_all(const std::vector<cd>& v) {
  std::vector<Complex<R>> out;
  out.reserve(v.size());
  for (const cd& z : v) out.push_back(widen<R>(z));
  return out;
}

// G(a, b) = <z^(lo+b), z^(lo+a)> over the contiguous exponents lo..hi.
template <class R>
HermitianMatrix<R> gram_range(const MomentTable<R>& table, int lo, int hi) {
  const std::size_t dim = static_cast<std::size_t>(hi - lo + 1);
  HermitianMatrix<R> g(dim);
  const auto& masses = table.measure().spectrum.masses();
  std::vector<std::vector<Complex<R>>> pw(masses.size(), std::vector<Complex<R>>(dim));
  for (std::size_t i = 0; i < masses.size(); ++i) {
    const Complex<R> z = widen<R>(masses[i].z);
    pw[i][0] = ipow(z, lo);
    for (std::size_t e = 1; e < dim; ++e) pw[i][e] = pw[i][e - 1] * z;
  }
  for (std::size_t b = 0; b < dim; ++b)
    for (std::size_t a = 0; a <= b; ++a) {
      Complex<R> v = table.weight_coeff(static_cast<int>(a) - static_cast<int>(b));
      for (std::size_t i = 0; i < masses.size(); ++i) v += R(masses[i].mu) * pw[i][b] * std::conj(pw[i][a]);
      if (a == b) v = Complex<R>(v.real());
      g(a, b) = v;
      g(b, a) = std::conj(v);
    }
  return g;
}

// Cholesky first as the conditioning guard (raises NotPositiveDefinite for
// escalation), then the elimination route for the witness.
template <class R>
ExtremalSolution<R> guarded_extremal(const HermitianMatrix<R>& g) {
  (void)cholesky(g);
  return constrained_max_leading(g);
}

void require_n(int n, int min, const char* what) {
  if (n < min) throw PreconditionError(std::string(what) + ": n must be >= " + std::to_string(min));
}

}  // namespace

OuterWeight::OuterWeight(LaurentPolynomial psi, std::string label) : psi_(as_taylor(psi)), label_(std::move(label)) {
  for (const cd& c : psi_.coeffs())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InputError("psi", "non-finite coefficient");
  const cd p0 = psi_.coeff(0);
  if (p0.imag() != 0.0) throw InputError("psi", "psi(0) must be real");
  if (!(p0.real() > 0.0)) throw InputError("psi", "psi(0) must be positive");

  // Zero-free on the closed disk: no zero on the circle and winding number 0.
  constexpr std::size_t M = 4096;
  double floor = std::numeric_limits<double>::infinity(), scale = 0.0, turn = 0.0;
  cd prev = psi_(cd(1.0));
  for (std::size_t m = 1; m <= M; ++m) {
    const cd v = psi_(std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(m) / M));
    floor = std::min(floor, std::abs(v));
    scale = std::max(scale, std::abs(v));
    turn += std::arg(v / prev);
    prev = v;
  }
  if (!(floor > 1e-12 * scale)) throw InputError("psi", "psi vanishes on the unit circle");
  if (std::abs(turn) > std::numbers::pi) throw InputError("psi", "psi has zeros inside the unit disk");
  delta_floor_ = floor;
}

PointSpectrum::PointSpectrum(std::vector<PointMass> masses) : masses_(std::move(masses)) {
  for (const PointMass& m : masses_) {
    if (!std::isfinite(m.z.real()) || !std::isfinite(m.z.imag()) || !std::isfinite(m.mu))
      throw InputError("masses", "non-finite mass entry");
    if (!(std::abs(m.z) > 1.0)) throw InputError("masses", "mass location must lie strictly outside the unit circle");
    if (!(m.mu > 0.0)) throw InputError("masses", "mass weight must be positive");
  }
}

double PointSpectrum::blaschke_sum() const {
  double s = 0.0;
  for (const PointMass& m : masses_) s += std::abs(m.z) - 1.0;
  return s;
}

double PointSpectrum::mass_sum() const {
  double s = 0.0;
  for (const PointMass& m : masses_) s += m.mu;
  return s;
}

ZeroSet PointSpectrum::reflected_zeros() const {
  std::vector<cd> z;
  z.reserve(masses_.size());
  for (const PointMass& m : masses_) z.push_back(1.0 / std::conj(m.z));
  return ZeroSet(std::move(z), Region::InsideDisk);
}

BlaschkeProduct reflected_blaschke(const PointSpectrum& spectrum) {
  return BlaschkeProduct::normalize_positive(spectrum.reflected_zeros());
}

double target_b0_psi0(const MeasureSpec& mu) {
  double b0 = 1.0;
  for (const PointMass& m : mu.spectrum.masses()) b0 /= std::abs(m.z);
  return b0 * mu.weight.value_at_zero();
}

// ---------------------------------------------------------------- moments

template <class R>
MomentTable<R>::MomentTable(MeasureSpec mu) : mu_(std::move(mu)) {
  for (const PointMass& m : mu_.spectrum.masses()) {
    masses_z_.push_back(widen<R>(m.z));
    masses_mu_.push_back(R(m.mu));
  }
}

template <class R>
std::size_t MomentTable<R>::max_grid() const {
  std::shared_lock lock(mutex_);
  return max_grid_;
}

template <class R>
Complex<R> MomentTable<R>::weight_coeff(int d) const {
  const OuterWeight& w = mu_.weight;
  if (w.is_constant()) {
    if (d != 0) return {};
    const R p0(w.value_at_zero());
    return Complex<R>(R(1) / (p0 * p0));
  }
  const int ad = d < 0 ? -d : d;
  const std::size_t b = static_cast<std::size_t>(ad / kBlock);
  const std::size_t i = static_cast<std::size_t>(ad % kBlock);
  {
    std::shared_lock lock(mutex_);
    if (b < blocks_.size() && !blocks_[b].empty()) return d < 0 ? std::conj(blocks_[b][i]) : blocks_[b][i];
  }
  fill_block(b);
  std::shared_lock lock(mutex_);
  return d < 0 ? std::conj(blocks_[b][i]) : blocks_[b][i];
}

template <class R>
void MomentTable<R>::fill_block(std::size_t b) const {
  std::unique_lock lock(mutex_);
  if (b < blocks_.size() && !blocks_[b].empty()) return;

  const std::vector<Complex<R>> psi = widen_all<R>(mu_.weight.psi().coeffs());
  const int d0 = static_cast<int>(b) * kBlock;

  auto quadrature = [&](std::size_t M) {
    const std::vector<Complex<R>> roots = unit_roots<R>(M);
    std::vector<R> w(M);
    for (std::size_t m = 0; m < M; ++m) w[m] = R(1) / std::norm(horner(psi, roots[m]));
    std::vector<Complex<R>> out(kBlock);
    const R inv_m = R(1) / R(static_cast<double>(M));
    for (int i = 0; i < kBlock; ++i) {
      const std::size_t d = static_cast<std::size_t>(d0 + i) % M;
      Complex<R> s{};
      std::size_t idx = 0;
      for (std::size_t m = 0; m < M; ++m) {
        s += w[m] * std::conj(roots[idx]);
        idx = (idx + d) % M;
      }
      out[static_cast<std::size_t>(i)] = s * inv_m;
    }
    // ŵ(0) at this grid sets the scale of the agreement test.
    R mean(0);
    for (const R& x : w) mean += x;
    return std::pair{std::move(out), R(mean * inv_m)};
  };

  using std::abs;
  using std::ldexp;
  std::size_t M = fft::next_pow2(static_cast<std::size_t>(std::max(64, 4 * (d0 + kBlock + mu_.weight.degree()))));
  auto [prev, scale] = quadrature(M);
  const R tol = ldexp(R(1), -mantissa_bits<R> + 8);
  for (;;) {
    M *= 2;
    if (M > kMaxMomentGrid)
      throw NumericError("QuadratureFailure", "trigonometric moments did not settle on grids up to 2^20 nodes");
    auto [cur, cur_scale] = quadrature(M);
    R diff(0);
    for (int i = 0; i < kBlock; ++i) diff = std::max(diff, R(abs(cur[i] - prev[i])));
    prev = std::move(cur);
    if (diff <= tol * cur_scale) break;
  }
  if (blocks_.size() <= b) blocks_.resize(b + 1);
  blocks_[b] = std::move(prev);
  max_grid_ = std::max(max_grid_, M);
}

template <class R>
Complex<R> MomentTable<R>::moment(int j, int k) const {
  Complex<R> v = weight_coeff(k - j);
  for (std::size_t i = 0; i < masses_z_.size(); ++i)
    v += masses_mu_[i] * ipow(masses_z_[i], j) * ipow(std::conj(masses_z_[i]), k);
  return v;
}

// ---------------------------------------------------------------- Gram and extremal

template <class R>
HermitianMatrix<R> gram_polynomial(const MomentTable<R>& table, int n) {
  require_n(n, 0, "gram_polynomial");
  return gram_range(table, 0, n);
}

template <class R>
HermitianMatrix<R> gram_laurent(const MomentTable<R>& table, int n) {
  require_n(n, 1, "gram_laurent");
  return gram_range(table, -(n - 1), n);
}

template <class R>
R tau_at(const MomentTable<R>& table, int n) {
  return schur_leading(gram_polynomial(table, n));
}

template <class R>
R eta_at(const MomentTable<R>& table, int n) {
  return schur_leading(gram_laurent(table, n));
}

template <class R>
Laurent<R> orthonormal_element(const MomentTable<R>& table, int n, bool laurent) {
  const HermitianMatrix<R> g = laurent ? gram_laurent(table, n) : gram_polynomial(table, n);
  ExtremalSolution<R> sol = guarded_extremal(g);
  sol.witness.back() = Complex<R>(sol.witness.back().real());
  return Laurent<R>(laurent ? -(n - 1) : 0, std::move(sol.witness));
}

template <class R>
R l2_norm_sq(const MomentTable<R>& table, const Laurent<R>& f) {
  return quadratic_form(gram_range(table, f.lo(), f.hi()), f.coeffs());
}

// ---------------------------------------------------------------- residue identity

template <class R>
ResidueCheck residue_identity_check(const MomentTable<R>& table, int n, int k) {
  require_n(n, 1, "residue_identity_check");
  const MeasureSpec& mu = table.measure();
  const auto& masses = mu.spectrum.masses();
  if (k < 0 || static_cast<std::size_t>(k) > masses.size())
    throw PreconditionError("residue_identity_check: k exceeds the number of masses");
  using std::abs;
  using std::ldexp;

  std::vector<Complex<R>> zs;
  for (int i = 0; i < k; ++i) zs.push_back(widen<R>(masses[static_cast<std::size_t>(i)].z));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < i; ++j)
      if (abs(zs[i] - zs[j]) <= R(1e-12) * abs(zs[i]))
        throw NumericError("DoublePoint", "residue check needs distinct points (B_*' vanishes at a double point)");

  // b_*(z) = (1/|z_i|)(z - z_i)/(z - 1/conj(z_i)).
  auto b_star_factor = [&](int i, const Complex<R>& z) {
    return (z - zs[i]) / ((z - R(1) / std::conj(zs[i])) * abs(zs[i]));
  };
  auto b_star = [&](const Complex<R>& z) {
    Complex<R> acc(R(1));
    for (int i = 0; i < k; ++i) acc *= b_star_factor(i, z);
    return acc;
  };
  const std::vector<Complex<R>> psi = widen_all<R>(mu.weight.psi().coeffs());
  // ψ_*(z) = Σ conj(c_j) z^-j, evaluated as conj-coefficient Horner in 1/z.
  auto psi_star = [&](const Complex<R>& z) {
    const Complex<R> w = Complex<R>(R(1)) / z;
    Complex<R> acc{};
    for (auto it = psi.rbegin(); it != psi.rend(); ++it) acc = acc * w + std::conj(*it);
    return acc;
  };

  const Laurent<R> rn = orthonormal_element(table, n, true);
  const R eta = rn.coeff(n).real();

  auto lhs_at = [&](std::size_t M) {
    const std::vector<Complex<R>> roots = unit_roots<R>(M);
    Complex<R> s{};
    for (std::size_t m = 0; m < M; ++m) {
      const Complex<R>& z = roots[m];
      s += rn(z) / (psi_star(z) * roots[(m * static_cast<std::size_t>(n)) % M] * b_star(z));
    }
    return s / R(static_cast<double>(M));
  };
  std::size_t M = fft::next_pow2(static_cast<std::size_t>(std::max(64, 4 * (2 * n + mu.weight.degree() + k + 8))));
  Complex<R> lhs = lhs_at(M);
  const R tol = ldexp(R(1), -mantissa_bits<R> / 2 - 8);
  for (;;) {
    M *= 2;
    if (M > kMaxResidueGrid) throw NumericError("QuadratureFailure", "residue-check contour quadrature did not settle");
    const Complex<R> next = lhs_at(M);
    const R diff = abs(next - lhs);
    lhs = next;
    if (diff <= tol * std::max(R(1), R(abs(lhs)))) break;
  }

  R b0(1);
  for (int i = 0; i < k; ++i) b0 /= abs(zs[i]);
  const R psi0 = psi.front().real();
  Complex<R> residues{};
  R majorant(0);
  for (int i = 0; i < k; ++i) {
    const Complex<R>& zi = zs[i];
    Complex<R> deriv = Complex<R>(R(1)) / ((zi - R(1) / std::conj(zi)) * abs(zi));
    for (int j = 0; j < k; ++j)
      if (j != i) deriv *= b_star_factor(j, zi);
    const Complex<R> denom = deriv * psi_star(zi) * ipow(zi, n + 1);
    residues += rn(zi) / denom;
    majorant += R(1) / (std::norm(denom) * R(masses[static_cast<std::size_t>(i)].mu));
  }
  const Complex<R> rhs = Complex<R>(eta / (b0 * psi0)) - residues;

  ResidueCheck out;
  out.n = n;
  out.k = k;
  out.lhs = to_double(lhs);
  out.rhs = to_double(rhs);
  out.abs_diff = to_double(R(abs(lhs - rhs)));
  out.residue_sum_abs = to_double(R(abs(residues)));
  out.majorant = to_double(majorant);
  out.eta = to_double(eta);
  out.lhs_abs = to_double(R(abs(lhs)));
  out.precision_bits = mantissa_bits<R>;
  out.grid_size = M;
  return out;
}

// ---------------------------------------------------------------- escalation

Opuc::Opuc(MeasureSpec mu) : mu_(std::move(mu)) {}

template <class R>
const MomentTable<R>& Opuc::table() const {
  constexpr std::size_t slot = std::is_same_v<R, Real53> ? 0 : std::is_same_v<R, Real128> ? 1 : std::is_same_v<R, Real256> ? 2 : 3;
  std::lock_guard lock(create_mutex_);
  auto& p = std::get<slot>(tables_);
  if (!p) p = std::make_unique<MomentTable<R>>(mu_);
  return *p;
}

template <class Fn>
LeadingCoefficient Opuc::escalate(Fn&& fn) const {
  PrecisionTag tag = mu_.precision;
  int steps = 0;
  for (;;) {
    try {
      const double v = with_precision(tag, [&](auto t) { return fn(t); });
      return {v, tag, steps};
    } catch (const NotPositiveDefinite& e) {
      const auto next = next_precision(tag);
      if (!next)
        throw NumericError("PrecisionExhausted", std::string(e.what()) + "; no wider precision than 512 bits available");
      tag = *next;
      ++steps;
    }
  }
}

LeadingCoefficient Opuc::tau(int n) const {
  require_n(n, 0, "tau_n");
  return escalate([&](auto t) {
    using R = typename decltype(t)::type;
    return to_double(tau_at(table<R>(), n));
  });
}

LeadingCoefficient Opuc::eta(int n) const {
  require_n(n, 1, "eta_n");
  return escalate([&](auto t) {
    using R = typename decltype(t)::type;
    return to_double(eta_at(table<R>(), n));
  });
}

ResidueCheck Opuc::residue_check(int n, int k) const {
  ResidueCheck out;
  (void)escalate([&](auto t) {
    using R = typename decltype(t)::type;
    out = residue_identity_check(table<R>(), n, k);
    return out.eta;
  });
  return out;
}

LeadingCoefficient tau_n(const MeasureSpec& mu, int n) { return Opuc(mu).tau(n); }
LeadingCoefficient eta_n(const MeasureSpec& mu, int n) { return Opuc(mu).eta(n); }
ResidueCheck residue_identity_check(const MeasureSpec& mu, int n, int k) { return Opuc(mu).residue_check(n, k); }

// ---------------------------------------------------------------- condition (log)

bool LogConditionReport::any_pass() const {
  return std::any_of(bounded.begin(), bounded.end(), [](bool b) { return b; });
}

LogConditionReport log_condition_report(const PointSpectrum& spectrum, std::span<const double> A_list, int n_max) {
  if (A_list.empty()) throw PreconditionError("log_condition_report: A_list is empty");
  if (n_max < 2) throw PreconditionError("log_condition_report: n_max must be >= 2");
  LogConditionReport rep;
  rep.A.assign(A_list.begin(), A_list.end());
  for (int n = 2; n <= n_max; n *= 2) rep.n_grid.push_back(n);
  if (rep.n_grid.back() != n_max) rep.n_grid.push_back(n_max);
  for (int n : rep.n_grid) {
    double tail = 0.0;
    for (const PointMass& m : spectrum.masses()) {
      const double r = std::abs(m.z);
      if (r > 1.0 && r < 1.0 + 1.0 / n) tail += m.mu;
    }
    rep.tail_mass.push_back(tail);
  }
  const std::size_t N = rep.n_grid.size();
  for (double A : rep.A) {
    std::vector<double> row(N);
    for (std::size_t i = 0; i < N; ++i) row[i] = std::pow(std::log(rep.n_grid[i]), A) * rep.tail_mass[i];
    const std::size_t half = N / 2;
    const double lower = half == 0 ? 0.0 : *std::max_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(half));
    const double upper = *std::max_element(row.begin() + static_cast<std::ptrdiff_t>(half), row.end());
    rep.bounded.push_back(half == 0 || upper <= lower);
    rep.scaled.push_back(std::move(row));
  }
  return rep;
}

#define SZEGO_INSTANTIATE_MEASURE(R)                                               \
  template class MomentTable<R>;                                                   \
  template HermitianMatrix<R> gram_polynomial<R>(const MomentTable<R>&, int);      \
  template HermitianMatrix<R> gram_laurent<R>(const MomentTable<R>&, int);         \
  template R tau_at<R>(const MomentTable<R>&, int);                                \
  template R eta_at<R>(const MomentTable<R>&, int);                                \
  template Laurent<R> orthonormal_element<R>(const MomentTable<R>&, int, bool);    \
  template R l2_norm_sq<R>(const MomentTable<R>&, const Laurent<R>&);              \
  template ResidueCheck residue_identity_check<R>(const MomentTable<R>&, int, int); \
  template const MomentTable<R>& Opuc::table<R>() const;

SZEGO_INSTANTIATE_MEASURE(Real53)
SZEGO_INSTANTIATE_MEASURE(Real128)
SZEGO_INSTANTIATE_MEASURE(Real256)
SZEGO_INSTANTIATE_MEASURE(Real512)

}  // namespace szego
