#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qwmp/config.hpp"
#include "qwmp/kernels.hpp"
#include "qwmp/qmatrix.hpp"

namespace qwmp {

namespace detail {

// Product of a(c, sigma(c)) walking the cycle of sigma that starts at
// `start`, wrap-around factor included. Marks visited elements.
template <class R>
Quaternion<R> cycle_product(const QMatrix<R>& a, const std::vector<int>& sigma,
                            int start, std::uint32_t& visited) {
  Quaternion<R> prod = Quaternion<R>::one();
  int c = start;
  do {
    visited |= (1u << c);
    const int next = sigma[static_cast<std::size_t>(c)];
    prod *= a(static_cast<std::size_t>(c), static_cast<std::size_t>(next));
    c = next;
  } while (c != start);
  return prod;
}

// Signed term of the row expansion anchored at `anchor`: the anchor cycle
// first, beginning at the anchor itself; every remaining cycle begins at
// its smallest element and the cycles follow by increasing leader. The
// sign is (-1)^(n - #cycles), fixed points counted.
template <class R>
Quaternion<R> rdet_term(const QMatrix<R>& a, const std::vector<int>& sigma,
                        int anchor) {
  const int n = static_cast<int>(sigma.size());
  std::uint32_t visited = 0;
  int cycles = 1;
  Quaternion<R> prod = cycle_product(a, sigma, anchor, visited);
  for (int lead = 0; lead < n; ++lead) {
    if (visited & (1u << lead)) continue;
    prod *= cycle_product(a, sigma, lead, visited);
    ++cycles;
  }
  return ((n - cycles) % 2 != 0) ? -prod : prod;
}

// Signed term of the column expansion anchored at `anchor`: the same
// cycle groups, but multiplied with non-anchor cycles by decreasing
// leader and the anchor cycle last.
template <class R>
Quaternion<R> cdet_term(const QMatrix<R>& a, const std::vector<int>& sigma,
                        int anchor) {
  const int n = static_cast<int>(sigma.size());
  std::uint32_t visited = 0;
  int cycles = 1;
  const Quaternion<R> anchor_prod = cycle_product(a, sigma, anchor, visited);
  std::vector<Quaternion<R>> others;
  for (int lead = 0; lead < n; ++lead) {
    if (visited & (1u << lead)) continue;
    others.push_back(cycle_product(a, sigma, lead, visited));
    ++cycles;
  }
  Quaternion<R> prod = Quaternion<R>::one();
  for (auto it = others.rbegin(); it != others.rend(); ++it) prod *= *it;
  prod *= anchor_prod;
  return ((n - cycles) % 2 != 0) ? -prod : prod;
}

template <class R, class TermFn>
Quaternion<R> det_sum(const QMatrix<R>& a, int anchor, Exec exec, TermFn&& term) {
  const std::size_t n = a.rows();
  const std::uint64_t total = factorial(n);
  return chunked_sum(
      total, Quaternion<R>::zero(), exec,
      [&](std::uint64_t b, std::uint64_t e) {
        std::vector<int> sigma = perm_unrank(n, b);
        Quaternion<R> sum;
        for (std::uint64_t t = b; t < e; ++t) {
          sum += term(a, sigma, anchor);
          std::next_permutation(sigma.begin(), sigma.end());
        }
        return sum;
      });
}

template <class R>
void check_det_args(const QMatrix<R>& a, std::size_t anchor) {
  if (a.rows() != a.cols()) throw DimensionMismatch("determinant of non-square matrix");
  if (a.rows() == 0) throw DimensionMismatch("determinant of empty matrix");
  if (anchor >= a.rows()) throw IndexOutOfRange("determinant anchor out of range");
  if (a.rows() > size_cap()) throw SizeCapExceeded("matrix order exceeds size cap");
}

}  // namespace detail

/// Row determinant anchored at row i: the signed sum over all
/// permutations presented as ordered cycle products, the cycle through i
/// leading. Noncommutative; different anchors give different values in
/// general.
template <class R>
Quaternion<R> rdet(const QMatrix<R>& a, std::size_t i, Exec exec = Exec::parallel) {
  detail::check_det_args(a, i);
  return detail::det_sum(a, static_cast<int>(i), exec,
                         detail::rdet_term<R>);
}

/// Column determinant anchored at column j; the mirrored cycle ordering
/// of rdet.
template <class R>
Quaternion<R> cdet(const QMatrix<R>& a, std::size_t j, Exec exec = Exec::parallel) {
  detail::check_det_args(a, j);
  return detail::det_sum(a, static_cast<int>(j), exec,
                         detail::cdet_term<R>);
}

/// Determinant of a Hermitian matrix: every anchored expansion agrees and
/// the value is real, so the first row expansion is returned. With
/// check_expansions set, all 2n expansions are recomputed and compared.
template <class R>
R det_hermitian(const QMatrix<R>& a, double tol = kDefaultTol,
                Exec exec = Exec::parallel, bool check_expansions = false) {
  if (!is_hermitian(a, tol)) throw NotHermitian("determinant needs a Hermitian matrix");
  const Quaternion<R> d = rdet(a, 0, exec);
  if (check_expansions) {
    for (std::size_t t = 0; t < a.rows(); ++t) {
      if (!approx_equal(rdet(a, t, exec), d, tol) ||
          !approx_equal(cdet(a, t, exec), d, tol)) {
        throw NotHermitian("anchored expansions disagree");
      }
    }
  }
  return d.w;
}

namespace detail {

// Determinant of a principal submatrix of a Hermitian matrix; skips the
// Hermitian recheck the public entry point already performed.
template <class R>
R hermitian_minor(const QMatrix<R>& a, const std::vector<int>& idx, Exec exec) {
  return rdet(submatrix(a, idx, idx), 0, exec).w;
}

}  // namespace detail

/// Right and left cofactor matrices: rdet_i(A) expands to sum_j a_ij*R_ij
/// along any row and cdet_j(A) to sum_i L_ij*a_ij along any column.
template <class R>
struct Cofactors {
  QMatrix<R> right;
  QMatrix<R> left;
};

template <class R>
Cofactors<R> cofactors(const QMatrix<R>& a, Exec exec = Exec::parallel) {
  if (a.rows() != a.cols()) throw DimensionMismatch("cofactors of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) throw DimensionMismatch("cofactors of empty matrix");
  if (n > size_cap()) throw SizeCapExceeded("matrix order exceeds size cap");

  Cofactors<R> out{QMatrix<R>(n, n), QMatrix<R>(n, n)};
  if (n == 1) {
    out.right.set(0, 0, Quaternion<R>::one());
    out.left.set(0, 0, Quaternion<R>::one());
    return out;
  }

  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> rest = all;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    // Right cofactors from the submatrix without row and column i; the
    // off-diagonal entry replaces column j with column i of A.
    const QMatrix<R> sub_r = submatrix(a, rest, rest);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) {
        out.right.set(i, i, rdet(sub_r, 0, exec));
        continue;
      }
      const std::size_t lj = j < i ? j : j - 1;
      QMatrix<R> m = sub_r;
      for (std::size_t t = 0; t < rest.size(); ++t) {
        m.set(t, lj, a.at(static_cast<std::size_t>(rest[t]), i));
      }
      out.right.set(i, j, -rdet(m, lj, exec));
    }
  }
  // Left cofactors mirror with rows from the submatrix without row and
  // column j; the off-diagonal entry replaces row i with row j of A.
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<int> rest = all;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
    const QMatrix<R> sub_l = submatrix(a, rest, rest);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) {
        out.left.set(j, j, cdet(sub_l, 0, exec));
        continue;
      }
      const std::size_t li = i < j ? i : i - 1;
      QMatrix<R> m = sub_l;
      for (std::size_t t = 0; t < rest.size(); ++t) {
        m.set(li, t, a.at(j, static_cast<std::size_t>(rest[t])));
      }
      out.left.set(i, j, -cdet(m, li, exec));
    }
  }
  return out;
}

/// Inverse of a nonsingular Hermitian matrix through the right cofactor
/// matrix: entry (i, j) is R_ji / det(A).
template <class R>
QMatrix<R> hermitian_inverse(const QMatrix<R>& a, double tol = kDefaultTol,
                             Exec exec = Exec::parallel) {
  const R d = det_hermitian(a, tol, exec);
  const std::size_t n = a.rows();
  if constexpr (ScalarTraits<R>::is_exact) {
    if (ScalarTraits<R>::is_zero(d)) throw SingularMatrix("Hermitian matrix is singular");
  } else {
    double bound = static_cast<double>(detail::factorial(n));
    const double mu = 1.0 + max_entry_norm(a);
    for (std::size_t t = 0; t < n; ++t) bound *= mu;
    if (std::fabs(ScalarTraits<R>::to_double(d)) <= tol * bound) {
      throw SingularMatrix("Hermitian matrix is numerically singular");
    }
  }
  const Cofactors<R> cf = cofactors(a, exec);
  const R dinv = ScalarTraits<R>::recip(d);
  QMatrix<R> x(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x.set(i, j, cf.right(j, i) * dinv);
  return x;
}

/// Sums of principal minors: d[k-1] is the sum over all order-k principal
/// minors, so det(tI + A) = t^n + d_1 t^(n-1) + ... + d_n.
template <class R>
struct CharPolyCoeffs {
  enum class Convention { t_plus_a, t_minus_a };
  std::vector<R> d;
  Convention convention = Convention::t_plus_a;

  /// Evaluates det(tI + A) or det(tI - A) at a real t per the convention.
  R eval(const R& t) const {
    const std::size_t n = d.size();
    R result = ScalarTraits<R>::one();
    for (std::size_t k = 0; k < n; ++k) result = result * t;
    R tpow = ScalarTraits<R>::one();
    for (std::size_t k = n; k >= 1; --k) {
      R coeff = d[k - 1];
      if (convention == Convention::t_minus_a && k % 2 == 1) coeff = -coeff;
      result += coeff * tpow;
      tpow = tpow * t;
    }
    return result;
  }
};

/// Single order-k principal minor sum of a Hermitian matrix.
template <class R>
R principal_minor_sum(const QMatrix<R>& a, std::size_t k,
                      Exec exec = Exec::parallel) {
  if (a.rows() != a.cols()) throw DimensionMismatch("principal minors need a square matrix");
  const std::size_t n = a.rows();
  if (k < 1 || k > n) throw RankOutOfRange("minor order outside [1, n]");
  if (k > size_cap()) throw SizeCapExceeded("minor order exceeds size cap");
  const auto fams = combinations(n, k);
  return detail::chunked_sum(
      static_cast<std::uint64_t>(fams.size()), ScalarTraits<R>::zero(), exec,
      [&](std::uint64_t b, std::uint64_t e) {
        R sum = ScalarTraits<R>::zero();
        for (std::uint64_t t = b; t < e; ++t) {
          sum += detail::hermitian_minor(a, fams[static_cast<std::size_t>(t)],
                                         Exec::serial);
        }
        return sum;
      });
}

/// All principal minor sums d_1..d_n of a Hermitian matrix.
template <class R>
CharPolyCoeffs<R> principal_minor_sums(const QMatrix<R>& a,
                                       double tol = kDefaultTol,
                                       Exec exec = Exec::parallel) {
  if (!is_hermitian(a, tol)) throw NotHermitian("principal minor sums need a Hermitian matrix");
  if (a.rows() > size_cap()) throw SizeCapExceeded("matrix order exceeds size cap");
  CharPolyCoeffs<R> out;
  out.d.reserve(a.rows());
  for (std::size_t k = 1; k <= a.rows(); ++k) out.d.push_back(principal_minor_sum(a, k, exec));
  return out;
}

namespace detail {

template <class R>
void check_bordered_args(const QMatrix<R>& g, std::size_t n, std::size_t i,
                         std::size_t r) {
  if (g.rows() != g.cols()) throw DimensionMismatch("minor sums need a square matrix");
  if (i >= n) throw IndexOutOfRange("border index out of range");
  if (r < 1 || r > n) throw RankOutOfRange("minor order outside [1, n]");
  if (r > size_cap()) throw SizeCapExceeded("minor order exceeds size cap");
}

inline std::size_t local_index(const std::vector<int>& fam, std::size_t i) {
  return static_cast<std::size_t>(
      std::find(fam.begin(), fam.end(), static_cast<int>(i)) - fam.begin());
}

}  // namespace detail

/// Sum over all order-r principal minors of g that meet row/column i,
/// with column i replaced by b before restriction, each evaluated as a
/// column determinant anchored at i's position.
template <class R>
Quaternion<R> bordered_minor_sum_col(const QMatrix<R>& g, const QMatrix<R>& b,
                                     std::size_t i, std::size_t r,
                                     Exec exec = Exec::parallel) {
  const std::size_t n = g.rows();
  detail::check_bordered_args(g, n, i, r);
  if (b.rows() != n || b.cols() != 1) {
    throw DimensionMismatch("border column must be n x 1");
  }
  const QMatrix<R> gb = replace_col(g, i, b);
  const auto fams = combinations_containing(n, r, i);
  return detail::chunked_sum(
      static_cast<std::uint64_t>(fams.size()), Quaternion<R>::zero(), exec,
      [&](std::uint64_t lo, std::uint64_t hi) {
        Quaternion<R> sum;
        for (std::uint64_t t = lo; t < hi; ++t) {
          const auto& fam = fams[static_cast<std::size_t>(t)];
          sum += cdet(submatrix(gb, fam, fam), detail::local_index(fam, i),
                      Exec::serial);
        }
        return sum;
      });
}

/// Row mirror of bordered_minor_sum_col: row j of h is replaced by the
/// row vector b and each restricted minor is a row determinant anchored
/// at j's position.
template <class R>
Quaternion<R> bordered_minor_sum_row(const QMatrix<R>& h, const QMatrix<R>& b,
                                     std::size_t j, std::size_t r,
                                     Exec exec = Exec::parallel) {
  const std::size_t m = h.rows();
  detail::check_bordered_args(h, m, j, r);
  if (b.cols() != m || b.rows() != 1) {
    throw DimensionMismatch("border row must be 1 x m");
  }
  const QMatrix<R> hb = replace_row(h, j, b);
  const auto fams = combinations_containing(m, r, j);
  return detail::chunked_sum(
      static_cast<std::uint64_t>(fams.size()), Quaternion<R>::zero(), exec,
      [&](std::uint64_t lo, std::uint64_t hi) {
        Quaternion<R> sum;
        for (std::uint64_t t = lo; t < hi; ++t) {
          const auto& fam = fams[static_cast<std::size_t>(t)];
          sum += rdet(submatrix(hb, fam, fam), detail::local_index(fam, j),
                      Exec::serial);
        }
        return sum;
      });
}

/// Coefficients c_1..c_n with cdet_i((tI + G) with column i replaced by
/// b) = sum_k c_k t^(n-k) for every real t.
template <class R>
std::vector<Quaternion<R>> charpoly_border_coeffs(const QMatrix<R>& g,
                                                  const QMatrix<R>& b,
                                                  std::size_t i,
                                                  Exec exec = Exec::parallel) {
  const std::size_t n = g.rows();
  std::vector<Quaternion<R>> c;
  c.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) c.push_back(bordered_minor_sum_col(g, b, i, k, exec));
  return c;
}

}  // namespace qwmp
