#pragma once

#include <memory>
#include <mutex>
#include <optional>

#include "qwmp/qmatrix.hpp"

namespace qwmp {

/// Weight pair (M, N) for the weighted pseudoinverse. Built from N or
/// from N^{-1} directly; whichever was not supplied is inverted lazily,
/// as are the positive-definite square roots on the float backend.
/// Copies share the lazy cache; the stored matrices never change.
template <class R>
class WeightPair {
 public:
  static WeightPair with_n(QMatrix<R> m, QMatrix<R> n) {
    check_square(m, n);
    WeightPair w;
    w.m_ = std::move(m);
    w.cache_->n = std::move(n);
    return w;
  }
  static WeightPair with_n_inv(QMatrix<R> m, QMatrix<R> n_inv) {
    check_square(m, n_inv);
    WeightPair w;
    w.m_ = std::move(m);
    w.cache_->n_inv = std::move(n_inv);
    return w;
  }
  static WeightPair identity(std::size_t rows, std::size_t cols) {
    WeightPair w;
    w.m_ = QMatrix<R>::identity(rows);
    w.cache_->n = QMatrix<R>::identity(cols);
    w.cache_->n_inv = QMatrix<R>::identity(cols);
    return w;
  }

  const QMatrix<R>& m() const { return m_; }
  std::size_t m_dim() const { return m_.rows(); }
  std::size_t n_dim() const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    return cache_->n ? cache_->n->rows() : cache_->n_inv->rows();
  }

  const QMatrix<R>& n() const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (!cache_->n) cache_->n = inverse(*cache_->n_inv);
    return *cache_->n;
  }
  const QMatrix<R>& n_inv() const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (!cache_->n_inv) cache_->n_inv = inverse(*cache_->n);
    return *cache_->n_inv;
  }

  /// True when this pair was built as (I, I).
  bool is_identity() const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (m_ != QMatrix<R>::identity(m_.rows())) return false;
    const QMatrix<R>& nn = cache_->n ? *cache_->n : *cache_->n_inv;
    return nn == QMatrix<R>::identity(nn.rows());
  }

  struct Roots {
    QMatrix<double> m_sqrt, m_inv_sqrt, n_sqrt, n_inv_sqrt;
  };
  /// Slot the spectral layer fills with the weight square roots.
  std::optional<Roots>& roots_cache() const {
    return cache_->roots;
  }
  std::mutex& cache_mutex() const { return cache_->mu; }

 private:
  WeightPair() : cache_(std::make_shared<Cache>()) {}
  static void check_square(const QMatrix<R>& m, const QMatrix<R>& n) {
    if (m.rows() != m.cols() || n.rows() != n.cols()) {
      throw DimensionMismatch("weights must be square");
    }
  }

  struct Cache {
    std::mutex mu;
    std::optional<QMatrix<R>> n, n_inv;
    std::optional<Roots> roots;
  };
  QMatrix<R> m_;
  mutable std::shared_ptr<Cache> cache_;
};

/// Weighted adjoint N^{-1} A* M, shared by every determinantal route.
template <class R>
QMatrix<R> weighted_adjoint(const QMatrix<R>& a, const WeightPair<R>& w) {
  if (w.m_dim() != a.rows() || w.n_dim() != a.cols()) {
    throw DimensionMismatch("weight dimensions must match the matrix");
  }
  return w.n_inv() * conj_transpose(a) * w.m();
}

}  // namespace qwmp
