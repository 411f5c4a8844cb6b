#pragma once

#include <Eigen/Core>

#include <atomic>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "qwmp/errors.hpp"
#include "qwmp/quaternion.hpp"

namespace qwmp {

/// Dense row-major quaternion matrix. The rank computed at the default
/// tolerance is cached; any entry write invalidates the cache, so
/// observable behavior is as-if pure.
template <class R>
class QMatrix {
 public:
  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols) {}
  QMatrix(std::size_t rows, std::size_t cols,
          std::initializer_list<Quaternion<R>> entries)
      : rows_(rows), cols_(cols), e_(entries) {
    if (e_.size() != rows * cols) {
      throw DimensionMismatch("entry list does not fill the matrix");
    }
  }

  QMatrix(const QMatrix& o) : rows_(o.rows_), cols_(o.cols_), e_(o.e_) {
    rank_cache_.store(o.rank_cache_.load());
  }
  QMatrix(QMatrix&& o) noexcept
      : rows_(o.rows_), cols_(o.cols_), e_(std::move(o.e_)) {
    rank_cache_.store(o.rank_cache_.load());
  }
  QMatrix& operator=(const QMatrix& o) {
    rows_ = o.rows_;
    cols_ = o.cols_;
    e_ = o.e_;
    rank_cache_.store(o.rank_cache_.load());
    return *this;
  }
  QMatrix& operator=(QMatrix&& o) noexcept {
    rows_ = o.rows_;
    cols_ = o.cols_;
    e_ = std::move(o.e_);
    rank_cache_.store(o.rank_cache_.load());
    return *this;
  }

  static QMatrix identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.e_[i * n + i] = Quaternion<R>::one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return e_.empty(); }

  const Quaternion<R>& operator()(std::size_t i, std::size_t j) const {
    return e_[i * cols_ + j];
  }
  const Quaternion<R>& at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw IndexOutOfRange("matrix index out of range");
    return e_[i * cols_ + j];
  }
  void set(std::size_t i, std::size_t j, Quaternion<R> q) {
    if (i >= rows_ || j >= cols_) throw IndexOutOfRange("matrix index out of range");
    e_[i * cols_ + j] = std::move(q);
    rank_cache_.store(-1);
  }

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }
  friend bool operator!=(const QMatrix& a, const QMatrix& b) { return !(a == b); }

  long cached_rank() const { return rank_cache_.load(); }
  void store_rank(long r) const { rank_cache_.store(r); }

 private:
  std::size_t rows_, cols_;
  std::vector<Quaternion<R>> e_;
  mutable std::atomic<long> rank_cache_{-1};
};

template <class R>
QMatrix<R> operator+(const QMatrix<R>& a, const QMatrix<R>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("matrix sum shape mismatch");
  }
  QMatrix<R> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.set(i, j, a(i, j) + b(i, j));
  return c;
}

template <class R>
QMatrix<R> operator-(const QMatrix<R>& a, const QMatrix<R>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("matrix difference shape mismatch");
  }
  QMatrix<R> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.set(i, j, a(i, j) - b(i, j));
  return c;
}

template <class R>
QMatrix<R> operator*(const QMatrix<R>& a, const QMatrix<R>& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
  QMatrix<R> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Quaternion<R> s;
      for (std::size_t t = 0; t < a.cols(); ++t) s += a(i, t) * b(t, j);
      c.set(i, j, s);
    }
  }
  return c;
}

template <class R>
QMatrix<R> operator*(const QMatrix<R>& a, const R& s) {
  QMatrix<R> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.set(i, j, a(i, j) * s);
  return c;
}

template <class R>
QMatrix<R> operator*(const R& s, const QMatrix<R>& a) {
  return a * s;
}

template <class R>
QMatrix<R> conj_transpose(const QMatrix<R>& a) {
  QMatrix<R> c(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.set(j, i, conj(a(i, j)));
  return c;
}

template <class R>
R max_entry_norm_sq(const QMatrix<R>& a) {
  R m = ScalarTraits<R>::zero();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      R n = norm_sq(a(i, j));
      if (m < n) m = n;
    }
  }
  return m;
}

template <class R>
double max_entry_norm(const QMatrix<R>& a) {
  return std::sqrt(ScalarTraits<R>::to_double(max_entry_norm_sq(a)));
}

/// Largest entry norm of a - b; the distance used by every tolerance test.
template <class R>
double max_entry_dist(const QMatrix<R>& a, const QMatrix<R>& b) {
  return max_entry_norm(a - b);
}

template <class R>
bool is_hermitian(const QMatrix<R>& a, double tol = kDefaultTol) {
  if (a.rows() != a.cols()) return false;
  if constexpr (ScalarTraits<R>::is_exact) {
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = i; j < a.cols(); ++j)
        if (a(i, j) != conj(a(j, i))) return false;
    return true;
  } else {
    const double scale = 1.0 + max_entry_norm(a);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = i; j < a.cols(); ++j)
        if (norm(a(i, j) - conj(a(j, i))) > tol * scale) return false;
    return true;
  }
}

template <class R>
QMatrix<R> col(const QMatrix<R>& a, std::size_t j) {
  if (j >= a.cols()) throw IndexOutOfRange("column index out of range");
  QMatrix<R> c(a.rows(), 1);
  for (std::size_t i = 0; i < a.rows(); ++i) c.set(i, 0, a(i, j));
  return c;
}

template <class R>
QMatrix<R> row(const QMatrix<R>& a, std::size_t i) {
  if (i >= a.rows()) throw IndexOutOfRange("row index out of range");
  QMatrix<R> c(1, a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) c.set(0, j, a(i, j));
  return c;
}

/// Copy of a with column j replaced by the column vector b.
template <class R>
QMatrix<R> replace_col(const QMatrix<R>& a, std::size_t j, const QMatrix<R>& b) {
  if (j >= a.cols()) throw IndexOutOfRange("column index out of range");
  if (b.rows() != a.rows() || b.cols() != 1) {
    throw DimensionMismatch("replacement column shape mismatch");
  }
  QMatrix<R> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) c.set(i, j, b(i, 0));
  return c;
}

/// Copy of a with row i replaced by the row vector b.
template <class R>
QMatrix<R> replace_row(const QMatrix<R>& a, std::size_t i, const QMatrix<R>& b) {
  if (i >= a.rows()) throw IndexOutOfRange("row index out of range");
  if (b.cols() != a.cols() || b.rows() != 1) {
    throw DimensionMismatch("replacement row shape mismatch");
  }
  QMatrix<R> c = a;
  for (std::size_t j = 0; j < a.cols(); ++j) c.set(i, j, b(0, j));
  return c;
}

/// Submatrix picking the given row and column index lists in order.
template <class R>
QMatrix<R> submatrix(const QMatrix<R>& a, const std::vector<int>& rows,
                     const std::vector<int>& cols) {
  QMatrix<R> c(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      c.set(i, j, a.at(static_cast<std::size_t>(rows[i]),
                       static_cast<std::size_t>(cols[j])));
    }
  }
  return c;
}

namespace detail {

template <class R>
double zero_threshold_nsq(const QMatrix<R>& a, double tol) {
  const double scale = std::max(1.0, ScalarTraits<R>::to_double(max_entry_norm_sq(a)));
  return tol * tol * scale;
}

// Picks the elimination pivot in rows [from, m) of column c: the entry of
// largest norm on the float backend, the first nonzero entry on the exact
// backend. Returns m when the column is (numerically) zero.
template <class R>
std::size_t pick_pivot(const std::vector<std::vector<Quaternion<R>>>& w,
                       std::size_t from, std::size_t c, double thr_nsq) {
  const std::size_t m = w.size();
  if constexpr (ScalarTraits<R>::is_exact) {
    for (std::size_t r = from; r < m; ++r)
      if (!w[r][c].is_zero()) return r;
    return m;
  } else {
    std::size_t best = m;
    double best_nsq = thr_nsq;
    for (std::size_t r = from; r < m; ++r) {
      const double nsq = ScalarTraits<R>::to_double(norm_sq(w[r][c]));
      if (nsq > best_nsq) {
        best = r;
        best_nsq = nsq;
      }
    }
    return best;
  }
}

}  // namespace detail

/// Rank by Gaussian elimination with left-division updates. The division
/// ring has no zero divisors, so the pivot count is exact on rationals;
/// the float backend zeroes entries below tol relative to the largest
/// input entry.
template <class R>
std::size_t rank(const QMatrix<R>& a, double tol = kDefaultTol) {
  if (tol == kDefaultTol && a.cached_rank() >= 0) {
    return static_cast<std::size_t>(a.cached_rank());
  }
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::vector<Quaternion<R>>> w(m, std::vector<Quaternion<R>>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) w[i][j] = a(i, j);
  const double thr = detail::zero_threshold_nsq(a, tol);

  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    const std::size_t p = detail::pick_pivot(w, r, c, thr);
    if (p == m) continue;
    std::swap(w[p], w[r]);
    const Quaternion<R> pinv = inv(w[r][c]);
    for (std::size_t rr = r + 1; rr < m; ++rr) {
      if (w[rr][c].is_zero()) continue;
      const Quaternion<R> f = w[rr][c] * pinv;
      for (std::size_t j = c; j < n; ++j) w[rr][j] -= f * w[r][j];
    }
    ++r;
  }
  if (tol == kDefaultTol) a.store_rank(static_cast<long>(r));
  return r;
}

/// Inverse of a square matrix by Gauss-Jordan elimination over the
/// division ring. Exact on rationals. Throws SingularMatrix.
template <class R>
QMatrix<R> inverse(const QMatrix<R>& a, double tol = kDefaultTol) {
  if (a.rows() != a.cols()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = a.rows();
  std::vector<std::vector<Quaternion<R>>> w(n, std::vector<Quaternion<R>>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i][j] = a(i, j);
    w[i][n + i] = Quaternion<R>::one();
  }
  const double thr = detail::zero_threshold_nsq(a, tol);

  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t p = detail::pick_pivot(w, c, c, thr);
    if (p == n) throw SingularMatrix("matrix has no inverse");
    std::swap(w[p], w[c]);
    const Quaternion<R> pinv = inv(w[c][c]);
    for (std::size_t j = c; j < 2 * n; ++j) w[c][j] = pinv * w[c][j];
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || w[r][c].is_zero()) continue;
      const Quaternion<R> f = w[r][c];
      for (std::size_t j = c; j < 2 * n; ++j) w[r][j] -= f * w[c][j];
    }
  }
  QMatrix<R> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.set(i, j, w[i][n + j]);
  return out;
}

/// Dense complex matrix carrying an embedded quaternion matrix as
/// [[A1, A2], [-conj(A2), conj(A1)]] for A = A1 + A2*j.
using ComplexBlockMatrix = Eigen::MatrixXcd;

inline ComplexBlockMatrix complex_embed(const QMatrix<double>& a) {
  const auto m = static_cast<Eigen::Index>(a.rows());
  const auto n = static_cast<Eigen::Index>(a.cols());
  ComplexBlockMatrix e(2 * m, 2 * n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Quaternion<double>& q = a(static_cast<std::size_t>(i),
                                      static_cast<std::size_t>(j));
      const std::complex<double> a1(q.w, q.x), a2(q.y, q.z);
      e(i, j) = a1;
      e(i, n + j) = a2;
      e(m + i, j) = -std::conj(a2);
      e(m + i, n + j) = std::conj(a1);
    }
  }
  return e;
}

inline QMatrix<double> complex_unembed(const ComplexBlockMatrix& e,
                                       double tol = kDefaultTol) {
  if (e.rows() % 2 != 0 || e.cols() % 2 != 0) {
    throw DimensionMismatch("embedded matrix must have even dimensions");
  }
  const Eigen::Index m = e.rows() / 2, n = e.cols() / 2;
  const double scale = 1.0 + e.cwiseAbs().maxCoeff();
  QMatrix<double> a(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const std::complex<double> a1 = e(i, j), a2 = e(i, n + j);
      if (std::abs(e(m + i, j) + std::conj(a2)) > tol * scale ||
          std::abs(e(m + i, n + j) - std::conj(a1)) > tol * scale) {
        throw NotInImage("complex matrix violates embedding block symmetry");
      }
      a.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
            Quaternion<double>(a1.real(), a1.imag(), a2.real(), a2.imag()));
    }
  }
  return a;
}

}  // namespace qwmp
