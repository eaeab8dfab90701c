#pragma once

#include "szego/blaschke.hpp"
#include "szego/laurent.hpp"
#include "szego/precision.hpp"
#include "szego/xlinalg.hpp"

#include <complex>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace szego {

/// ψ given by its Taylor coefficients: zero-free on the closed disk with ψ(0) > 0.
/// The absolutely continuous part of the measure is dm/|ψ|².
class OuterWeight {
 public:
  explicit OuterWeight(LaurentPolynomial psi, std::string label = {});
  static OuterWeight unit() { return OuterWeight(LaurentPolynomial::monomial(0, 1.0), "1"); }

  const LaurentPolynomial& psi() const { return psi_; }
  const std::string& label() const { return label_; }
  /// min |ψ| over a 4096-node grid.
  double delta_floor() const { return delta_floor_; }
  double value_at_zero() const { return psi_.coeff(0).real(); }
  int degree() const { return psi_.hi(); }
  bool is_constant() const { return psi_.hi() == 0; }

 private:
  LaurentPolynomial psi_;
  std::string label_;
  double delta_floor_ = 0.0;
};

struct PointMass {
  std::complex<double> z;  // |z| > 1
  double mu;               // > 0
};

class PointSpectrum {
 public:
  PointSpectrum() = default;
  explicit PointSpectrum(std::vector<PointMass> masses);

  const std::vector<PointMass>& masses() const { return masses_; }
  std::size_t size() const { return masses_.size(); }
  bool empty() const { return masses_.empty(); }
  /// Σ(|z_k| - 1).
  double blaschke_sum() const;
  double mass_sum() const;
  /// ζ_k = 1/conj(z_k), in the order of the masses.
  ZeroSet reflected_zeros() const;

 private:
  std::vector<PointMass> masses_;
};

/// Blaschke product on the reflected points ζ_k, normalized so B(0) = Π 1/|z_k|.
BlaschkeProduct reflected_blaschke(const PointSpectrum& spectrum);

struct MeasureSpec {
  OuterWeight weight = OuterWeight::unit();
  PointSpectrum spectrum;
  PrecisionTag precision = PrecisionTag::Bits256;
};

/// The limit value B(0)ψ(0) = ψ(0)·Π 1/|z_k|.
double target_b0_psi0(const MeasureSpec& mu);

/// Moments of μ at the arithmetic of R. The trigonometric moments
/// ŵ(d) = ∫ e^{-idθ}/|ψ|² dm come from power-of-two grid quadrature doubled
/// until two successive grids agree; they are cached in fixed blocks of 64
/// frequencies so results do not depend on request order. Safe for concurrent
/// readers; block fills are serialized.
template <class R>
class MomentTable {
 public:
  explicit MomentTable(MeasureSpec mu);
  MomentTable(const MomentTable&) = delete;
  MomentTable& operator=(const MomentTable&) = delete;

  const MeasureSpec& measure() const { return mu_; }
  Complex<R> weight_coeff(int d) const;
  /// ∫ z^j conj(z)^k dμ.
  Complex<R> moment(int j, int k) const;
  /// Largest quadrature grid used so far.
  std::size_t max_grid() const;

 private:
  static constexpr int kBlock = 64;
  void fill_block(std::size_t b) const;

  MeasureSpec mu_;
  std::vector<Complex<R>> masses_z_;
  std::vector<R> masses_mu_;
  mutable std::shared_mutex mutex_;
  mutable std::vector<std::vector<Complex<R>>> blocks_;
  mutable std::size_t max_grid_ = 0;
};

/// Gram of {1, z, ..., z^n}: G(a, b) = <z^b, z^a>, so v*Gv = ‖Σ v_i z^i‖².
template <class R>
HermitianMatrix<R> gram_polynomial(const MomentTable<R>& table, int n);

/// Gram of {z^-(n-1), ..., z^n} in increasing order; z^n is the last (pivot) coordinate.
template <class R>
HermitianMatrix<R> gram_laurent(const MomentTable<R>& table, int n);

template <class R>
R tau_at(const MomentTable<R>& table, int n);
template <class R>
R eta_at(const MomentTable<R>& table, int n);

/// The orthonormal element P_n (laurent = false) or R_{n,-(n-1)} (laurent = true),
/// with positive z^n coefficient.
template <class R>
Laurent<R> orthonormal_element(const MomentTable<R>& table, int n, bool laurent);

/// ‖f‖²_{L²(μ)} for a Laurent polynomial in the span of the table's moments.
template <class R>
R l2_norm_sq(const MomentTable<R>& table, const Laurent<R>& f);

struct ResidueCheck {
  int n = 0;
  int k = 0;
  std::complex<double> lhs;
  std::complex<double> rhs;
  double abs_diff = 0.0;
  double residue_sum_abs = 0.0;  // |Σ residue terms|
  double majorant = 0.0;         // Σ 1/(|(B^k_*)'(z_i) ψ_*(z_i) z_i^(n+1)|² μ_i)
  double eta = 0.0;
  double lhs_abs = 0.0;
  int precision_bits = 0;
  std::size_t grid_size = 0;
};

/// Contour-integral identity for R_n over the circle against the residue sum
/// at the first k masses.
template <class R>
ResidueCheck residue_identity_check(const MomentTable<R>& table, int n, int k);

struct LeadingCoefficient {
  double value = 0.0;
  PrecisionTag precision = PrecisionTag::Bits53;
  int escalations = 0;  // precision steps taken beyond the measure's tag
};

/// Owns one moment table per precision (created on demand) and applies the
/// escalation protocol: on NotPositiveDefinite the computation is repeated at
/// the next PrecisionTag and the tag actually used is reported.
class Opuc {
 public:
  explicit Opuc(MeasureSpec mu);

  const MeasureSpec& measure() const { return mu_; }

  template <class R>
  const MomentTable<R>& table() const;

  LeadingCoefficient tau(int n) const;
  LeadingCoefficient eta(int n) const;
  ResidueCheck residue_check(int n, int k) const;

 private:
  template <class Fn>
  LeadingCoefficient escalate(Fn&& fn) const;

  MeasureSpec mu_;
  mutable std::mutex create_mutex_;
  mutable std::tuple<std::unique_ptr<MomentTable<Real53>>, std::unique_ptr<MomentTable<Real128>>,
                     std::unique_ptr<MomentTable<Real256>>, std::unique_ptr<MomentTable<Real512>>>
      tables_;
};

LeadingCoefficient tau_n(const MeasureSpec& mu, int n);
LeadingCoefficient eta_n(const MeasureSpec& mu, int n);
ResidueCheck residue_identity_check(const MeasureSpec& mu, int n, int k);

struct LogConditionReport {
  std::vector<double> A;
  std::vector<int> n_grid;
  std::vector<double> tail_mass;            // Σ_{1<|z_k|<1+1/n} μ_k per n
  std::vector<std::vector<double>> scaled;  // scaled[a][i] = (log n_i)^A_a · tail_mass[i]
  std::vector<bool> bounded;                // per A: upper-half max <= lower-half max

  bool any_pass() const;
};

/// n runs over 2, 4, 8, ... up to n_max (n_max appended when not a power of two).
LogConditionReport log_condition_report(const PointSpectrum& spectrum, std::span<const double> A_list, int n_max);

#define SZEGO_EXTERN_MEASURE(R)                                                          \
  extern template class MomentTable<R>;                                                  \
  extern template HermitianMatrix<R> gram_polynomial<R>(const MomentTable<R>&, int);     \
  extern template HermitianMatrix<R> gram_laurent<R>(const MomentTable<R>&, int);        \
  extern template R tau_at<R>(const MomentTable<R>&, int);                               \
  extern template R eta_at<R>(const MomentTable<R>&, int);                               \
  extern template Laurent<R> orthonormal_element<R>(const MomentTable<R>&, int, bool);   \
  extern template R l2_norm_sq<R>(const MomentTable<R>&, const Laurent<R>&);             \
  extern template ResidueCheck residue_identity_check<R>(const MomentTable<R>&, int, int); \
  extern template const MomentTable<R>& Opuc::table<R>() const;

SZEGO_EXTERN_MEASURE(Real53)
SZEGO_EXTERN_MEASURE(Real128)
SZEGO_EXTERN_MEASURE(Real256)
SZEGO_EXTERN_MEASURE(Real512)

}  // namespace szego
