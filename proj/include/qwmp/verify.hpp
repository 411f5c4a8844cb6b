#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <random>

#include "qwmp/qmatrix.hpp"
#include "qwmp/weights.hpp"

namespace qwmp {

namespace detail {

inline ComplexBlockMatrix complex_pinv(const ComplexBlockMatrix& e, double tol) {
  Eigen::JacobiSVD<ComplexBlockMatrix> svd(e, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double thr = std::max(tol, 1e-12) * std::max(1.0, smax);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index t = 0; t < sv.size(); ++t) {
    if (sv(t) > thr) inv(t) = 1.0 / sv(t);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

inline ComplexBlockMatrix complex_sqrt_pd(const ComplexBlockMatrix& e,
                                          const char* what) {
  Eigen::SelfAdjointEigenSolver<ComplexBlockMatrix> es(
      ComplexBlockMatrix((e + e.adjoint()) / 2.0));
  Eigen::VectorXd lam = es.eigenvalues();
  for (Eigen::Index t = 0; t < lam.size(); ++t) {
    if (lam(t) <= 0) throw NotPositiveDefinite(what);
    lam(t) = std::sqrt(lam(t));
  }
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

/// Reference pseudoinverse through the complex block embedding and a
/// dense SVD; shares no code with the determinantal or spectral routes.
inline QMatrix<double> brute_force_mp(const QMatrix<double>& a,
                                      double tol = kDefaultTol) {
  return complex_unembed(detail::complex_pinv(complex_embed(a), tol), 1e-6);
}

/// Weighted reference: conjugates the embedded matrix by the embedded
/// weight roots, pseudoinverts with a dense SVD, and conjugates back.
inline QMatrix<double> brute_force_wmp(const QMatrix<double>& a,
                                       const WeightPair<double>& w,
                                       double tol = kDefaultTol) {
  if (w.m_dim() != a.rows() || w.n_dim() != a.cols()) {
    throw DimensionMismatch("weight dimensions must match the matrix");
  }
  const ComplexBlockMatrix msqrt =
      detail::complex_sqrt_pd(complex_embed(w.m()), "weight M must be positive definite");
  const ComplexBlockMatrix ninvsqrt = detail::complex_sqrt_pd(
      complex_embed(w.n_inv()), "weight N must be positive definite");
  const ComplexBlockMatrix core =
      detail::complex_pinv(msqrt * complex_embed(a) * ninvsqrt, tol);
  return complex_unembed(ninvsqrt * core * msqrt, 1e-6);
}

template <class R>
QMatrix<double> to_float(const QMatrix<R>& a) {
  QMatrix<double> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& q = a(i, j);
      c.set(i, j, Quaternion<double>(
                      ScalarTraits<R>::to_double(q.w), ScalarTraits<R>::to_double(q.x),
                      ScalarTraits<R>::to_double(q.y), ScalarTraits<R>::to_double(q.z)));
    }
  }
  return c;
}

/// Uniform integer-component quaternion matrix, reproducible from the
/// caller's generator.
template <class R, class Rng>
QMatrix<R> random_qmatrix(Rng& rng, std::size_t m, std::size_t n, int lo = -3,
                          int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  QMatrix<R> a(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a.set(i, j, Quaternion<R>::from_ints(d(rng), d(rng), d(rng), d(rng)));
    }
  }
  return a;
}

/// Hermitian positive definite integer matrix: B* B + I.
template <class R, class Rng>
QMatrix<R> random_hpd(Rng& rng, std::size_t k, int lo = -2, int hi = 2) {
  const QMatrix<R> b = random_qmatrix<R>(rng, k, k, lo, hi);
  return conj_transpose(b) * b + QMatrix<R>::identity(k);
}

/// Product of m x r and r x n integer factors, redrawn until the rank
/// is exactly r.
template <class R, class Rng>
QMatrix<R> random_rank_deficient(Rng& rng, std::size_t m, std::size_t n,
                                 std::size_t r) {
  for (int tries = 0; tries < 64; ++tries) {
    const QMatrix<R> p = random_qmatrix<R>(rng, m, r, -2, 2);
    const QMatrix<R> q = random_qmatrix<R>(rng, r, n, -2, 2);
    const QMatrix<R> a = p * q;
    if (rank(a) == r) return a;
  }
  throw Error("failed to draw a matrix of the requested rank");
}

}  // namespace qwmp
