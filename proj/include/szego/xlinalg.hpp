#pragma once

#include "szego/errors.hpp"
#include "szego/precision.hpp"

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace szego {

/// Dense Hermitian matrix, column-major.
template <class R>
class HermitianMatrix {
 public:
  using value_type = Complex<R>;

  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

  static HermitianMatrix identity(std::size_t dim) {
    HermitianMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = value_type(R(1));
    return m;
  }

  std::size_t dim() const { return dim_; }
  value_type& operator()(std::size_t i, std::size_t j) { return a_[j * dim_ + i]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return a_[j * dim_ + i]; }

  /// Leading principal k×k block.
  HermitianMatrix leading_block(std::size_t k) const {
    HermitianMatrix m(k);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < k; ++i) m(i, j) = (*this)(i, j);
    return m;
  }

  R max_abs() const {
    using std::abs;
    R best(0);
    for (const auto& v : a_) best = std::max(best, R(abs(v)));
    return best;
  }

  bool is_hermitian(const R& rel_tol) const {
    using std::abs;
    const R scale = max_abs();
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t i = 0; i <= j; ++i)
        if (R(abs((*this)(i, j) - std::conj((*this)(j, i)))) > rel_tol * scale) return false;
    return true;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<value_type> a_;
};

/// Dense lower-triangular factor, row-major.
template <class R>
class LowerTriangular {
 public:
  using value_type = Complex<R>;
  explicit LowerTriangular(std::size_t dim) : dim_(dim), a_(dim * dim) {}
  std::size_t dim() const { return dim_; }
  value_type& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

 private:
  std::size_t dim_;
  std::vector<value_type> a_;
};

namespace detail {

template <class R>
void require_hermitian(const HermitianMatrix<R>& g) {
  using std::ldexp;
  if (!g.is_hermitian(ldexp(R(1), -mantissa_bits<R> + 8)))
    throw PreconditionError("matrix is not Hermitian to working precision");
}

}  // namespace detail

/// L·L* = G. A pivot that is not positive, or that has lost more than half
/// the mantissa to cancellation (pivot <= G_jj·2^(-bits/2)), raises
/// NotPositiveDefinite; callers retry at a wider PrecisionTag.
template <class R>
LowerTriangular<R> cholesky(const HermitianMatrix<R>& g) {
  using std::sqrt;
  detail::require_hermitian(g);
  const std::size_t n = g.dim();
  const R guard = half_precision_tol<R>();
  LowerTriangular<R> l(n);
  for (std::size_t j = 0; j < n; ++j) {
    R d = g(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(g(j, j).real() > R(0)) || !(d > g(j, j).real() * guard)) throw NotPositiveDefinite(j, mantissa_bits<R>);
    const R ljj = sqrt(d);
    l(j, j) = Complex<R>(ljj);
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex<R> s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

/// ‖L·L* − G‖_F / ‖G‖_F.
template <class R>
R cholesky_residual(const HermitianMatrix<R>& g, const LowerTriangular<R>& l) {
  using std::sqrt;
  R num(0), den(0);
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex<R> s{};
      for (std::size_t k = 0; k <= std::min(i, j); ++k) s += l(i, k) * std::conj(l(j, k));
      num += std::norm(s - g(i, j));
      den += std::norm(g(i, j));
    }
  return sqrt(num / den);
}

/// Reciprocal square root of the Schur complement of the last coordinate:
/// the positive leading coefficient of the orthonormal element whose top
/// basis vector is the last one. Equals 1/L_NN.
template <class R>
R schur_leading(const HermitianMatrix<R>& g) {
  if (g.dim() == 0) throw PreconditionError("schur_leading: empty matrix");
  const LowerTriangular<R> l = cholesky(g);
  return R(1) / l(g.dim() - 1, g.dim() - 1).real();
}

template <class R>
struct ExtremalSolution {
  R eta;
  std::vector<Complex<R>> witness;
};

/// Solves G x = e_N by Gaussian elimination with partial pivoting
/// (independent of the Cholesky route).
template <class R>
std::vector<Complex<R>> solve_last_unit(const HermitianMatrix<R>& g) {
  using std::abs;
  const std::size_t n = g.dim();
  std::vector<Complex<R>> a(n * n);
  std::vector<Complex<R>> b(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = g(i, j);
  b[n - 1] = Complex<R>(R(1));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (abs(a[r * n + col]) > abs(a[piv * n + col])) piv = r;
    if (a[piv * n + col] == Complex<R>{}) throw NotPositiveDefinite(col, mantissa_bits<R>);
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[col * n + j], a[piv * n + j]);
      std::swap(b[col], b[piv]);
    }
    const Complex<R> inv = Complex<R>(R(1)) / a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex<R> f = a[r * n + col] * inv;
      if (f == Complex<R>{}) continue;
      for (std::size_t j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
      b[r] -= f * b[col];
    }
  }
  std::vector<Complex<R>> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Complex<R> s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
    x[i] = s / a[i * n + i];
  }
  return x;
}

/// max |v_N| subject to v*Gv <= 1: v = G⁻¹e_N/√((G⁻¹)_NN), η = √((G⁻¹)_NN).
template <class R>
ExtremalSolution<R> constrained_max_leading(const HermitianMatrix<R>& g) {
  using std::sqrt;
  if (g.dim() == 0) throw PreconditionError("constrained_max_leading: empty matrix");
  detail::require_hermitian(g);
  std::vector<Complex<R>> x = solve_last_unit(g);
  const R xnn = x.back().real();
  if (!(xnn > R(0))) throw NotPositiveDefinite(g.dim() - 1, mantissa_bits<R>);
  const R eta = sqrt(xnn);
  for (auto& v : x) v /= eta;
  return {eta, std::move(x)};
}

/// Re(v* G v).
template <class R>
R quadratic_form(const HermitianMatrix<R>& g, const std::vector<Complex<R>>& v) {
  Complex<R> s{};
  for (std::size_t j = 0; j < g.dim(); ++j) {
    Complex<R> col{};
    for (std::size_t i = 0; i < g.dim(); ++i) col += std::conj(v[i]) * g(i, j);
    s += col * v[j];
  }
  return s.real();
}

}  // namespace szego
