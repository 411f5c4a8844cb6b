#pragma once

#include "qwmp/wmp.hpp"

namespace qwmp {

/// Minimum-N-norm weighted least-squares solution of A x = b, computed
/// entrywise as ratios of bordered minor sums instead of forming the
/// pseudoinverse. b is m x 1, the result n x 1.
template <class R>
QMatrix<R> solve_right(const QMatrix<R>& a, const WeightPair<R>& w,
                       const QMatrix<R>& b, double tol = kDefaultTol,
                       Exec exec = Exec::parallel) {
  detail::check_wmp_args(a, w);
  if (b.rows() != a.rows() || b.cols() != 1) {
    throw DimensionMismatch("right-hand side must be m x 1");
  }
  const std::size_t n = a.cols();
  const std::size_t r = rank(a, tol);
  if (r == 0) return QMatrix<R>(n, 1);
  if (r > size_cap()) throw SizeCapExceeded("rank exceeds size cap");

  const QMatrix<R> sharp = weighted_adjoint(a, w);
  const QMatrix<R> g = sharp * a;
  if (is_hermitian(g, tol)) {
    const QMatrix<R> f = sharp * b;
    const R den = detail::checked_denominator(principal_minor_sum(g, r, exec), g, r, tol);
    const R dinv = ScalarTraits<R>::recip(den);
    QMatrix<R> x(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      x.set(i, 0, bordered_minor_sum_col(g, f, i, r, exec) * dinv);
    }
    return x;
  }
  if (r == n) {
    const QMatrix<R> gram = conj_transpose(a) * w.m() * a;
    const QMatrix<R> f = conj_transpose(a) * w.m() * b;
    const R den = detail::checked_denominator(principal_minor_sum(gram, n, exec),
                                              gram, n, tol);
    const R dinv = ScalarTraits<R>::recip(den);
    QMatrix<R> x(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      x.set(i, 0, bordered_minor_sum_col(gram, f, i, n, exec) * dinv);
    }
    return x;
  }
  if constexpr (ScalarTraits<R>::is_exact) {
    throw BackendUnsupported(
        "deficient-rank solve with non-Hermitian Gram needs the float backend");
  } else {
    const auto& roots = weight_roots(w, tol);
    const QMatrix<double> half = roots.n_inv_sqrt * conj_transpose(a) * w.m();
    const QMatrix<double> gram = half * a * roots.n_inv_sqrt;
    const QMatrix<double> f = half * b;
    const R den = detail::checked_denominator(principal_minor_sum(gram, r, exec),
                                              gram, r, tol);
    const R dinv = ScalarTraits<R>::recip(den);
    QMatrix<double> y(n, 1);
    for (std::size_t k = 0; k < n; ++k) {
      y.set(k, 0, bordered_minor_sum_col(gram, f, k, r, exec) * dinv);
    }
    return roots.n_inv_sqrt * y;
  }
}

/// Minimum-M-norm weighted least-squares solution of x A = b for a row
/// vector b (1 x n); the result is 1 x m. Mirrors solve_right through
/// the row minor sums of A A_sharp.
template <class R>
QMatrix<R> solve_left(const QMatrix<R>& a, const WeightPair<R>& w,
                      const QMatrix<R>& b, double tol = kDefaultTol,
                      Exec exec = Exec::parallel) {
  detail::check_wmp_args(a, w);
  if (b.cols() != a.cols() || b.rows() != 1) {
    throw DimensionMismatch("left-hand side must be 1 x n");
  }
  const std::size_t m = a.rows();
  const std::size_t r = rank(a, tol);
  if (r == 0) return QMatrix<R>(1, m);
  if (r > size_cap()) throw SizeCapExceeded("rank exceeds size cap");

  const QMatrix<R> sharp = weighted_adjoint(a, w);
  const QMatrix<R> h = a * sharp;
  if (is_hermitian(h, tol)) {
    const QMatrix<R> g = b * sharp;
    const R den = detail::checked_denominator(principal_minor_sum(h, r, exec), h, r, tol);
    const R dinv = ScalarTraits<R>::recip(den);
    QMatrix<R> x(1, m);
    for (std::size_t j = 0; j < m; ++j) {
      x.set(0, j, bordered_minor_sum_row(h, g, j, r, exec) * dinv);
    }
    return x;
  }
  if (r == m) {
    const QMatrix<R> gram = a * w.n_inv() * conj_transpose(a);
    const QMatrix<R> g = b * w.n_inv() * conj_transpose(a);
    const R den = detail::checked_denominator(principal_minor_sum(gram, m, exec),
                                              gram, m, tol);
    const R dinv = ScalarTraits<R>::recip(den);
    QMatrix<R> x(1, m);
    for (std::size_t j = 0; j < m; ++j) {
      x.set(0, j, bordered_minor_sum_row(gram, g, j, m, exec) * dinv);
    }
    return x;
  }
  if constexpr (ScalarTraits<R>::is_exact) {
    throw BackendUnsupported(
        "deficient-rank solve with non-Hermitian Gram needs the float backend");
  } else {
    const auto& roots = weight_roots(w, tol);
    const QMatrix<double> half = w.n_inv() * conj_transpose(a) * roots.m_sqrt;
    const QMatrix<double> gram = roots.m_sqrt * a * half;
    const QMatrix<double> g = b * half;
    const R den = detail::checked_denominator(principal_minor_sum(gram, r, exec),
                                              gram, r, tol);
    const R dinv = ScalarTraits<R>::recip(den);
    QMatrix<double> y(1, m);
    for (std::size_t l = 0; l < m; ++l) {
      y.set(0, l, bordered_minor_sum_row(gram, g, l, r, exec) * dinv);
    }
    return y * roots.m_sqrt;
  }
}

}  // namespace qwmp
