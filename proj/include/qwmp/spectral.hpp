#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

#include "qwmp/qmatrix.hpp"
#include "qwmp/rcdet.hpp"
#include "qwmp/weights.hpp"

namespace qwmp {

namespace detail {

// Quaternion column of the embedded complex vector [z_u; z_l]:
// x = z_u - conj(z_l) j, the first embedded column of x.
inline QMatrix<double> quat_column(const Eigen::VectorXcd& z) {
  const Eigen::Index n = z.size() / 2;
  QMatrix<double> x(static_cast<std::size_t>(n), 1);
  for (Eigen::Index t = 0; t < n; ++t) {
    const std::complex<double> a1 = z(t), a2 = -std::conj(z(n + t));
    x.set(static_cast<std::size_t>(t), 0,
          Quaternion<double>(a1.real(), a1.imag(), a2.real(), a2.imag()));
  }
  return x;
}

inline Quaternion<double> dot(const QMatrix<double>& u, const QMatrix<double>& v) {
  Quaternion<double> s;
  for (std::size_t t = 0; t < u.rows(); ++t) s += conj(u(t, 0)) * v(t, 0);
  return s;
}

inline double vec_norm(const QMatrix<double>& v) {
  double s = 0;
  for (std::size_t t = 0; t < v.rows(); ++t) {
    s += ScalarTraits<double>::to_double(norm_sq(v(t, 0)));
  }
  return std::sqrt(s);
}

// Removes the right-span of the accepted columns from v (twice, for
// numerical stability) and returns the remaining norm.
inline double project_out(const std::vector<QMatrix<double>>& basis,
                          QMatrix<double>& v) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& u : basis) {
      const Quaternion<double> c = dot(u, v);
      for (std::size_t t = 0; t < v.rows(); ++t) v.set(t, 0, v(t, 0) - u(t, 0) * c);
    }
  }
  return vec_norm(v);
}

inline void scale_column(QMatrix<double>& v, double s) {
  for (std::size_t t = 0; t < v.rows(); ++t) v.set(t, 0, v(t, 0) * s);
}

}  // namespace detail

/// Eigendecomposition A = U diag(lambda) U* of a Hermitian quaternion
/// matrix; eigenvalues are real and descending, U is unitary.
struct HermitianEig {
  QMatrix<double> u;
  std::vector<double> lambda;
};

/// Computes the eigendecomposition through the complex adjoint embedding:
/// eigenvalues of the 2n x 2n embedded matrix come in coincident pairs,
/// one quaternion eigenvector per pair. Throws EmbeddingPairingFailure
/// when the pair structure or the reconstruction fails beyond tolerance.
inline HermitianEig eig_hermitian(const QMatrix<double>& a,
                                  double tol = kDefaultTol) {
  if (!is_hermitian(a, tol)) throw NotHermitian("eigendecomposition needs a Hermitian matrix");
  const std::size_t n = a.rows();
  HermitianEig out;
  out.u = QMatrix<double>(n, n);
  if (n == 0) return out;

  ComplexBlockMatrix e = complex_embed(a);
  e = (e + e.adjoint()).eval() * 0.5;
  Eigen::SelfAdjointEigenSolver<ComplexBlockMatrix> es(e);
  if (es.info() != Eigen::Success) {
    throw EmbeddingPairingFailure("complex eigensolver did not converge");
  }
  const Eigen::VectorXd w = es.eigenvalues();
  const double spread = std::max(1.0, std::max(std::fabs(w(0)), std::fabs(w(2 * n - 1))));
  const double gap = std::max(tol, 1e-12) * spread;

  // Ascending eigenvalues pair up as (0,1), (2,3), ...; a broken pair
  // means the input was not an embedding of a Hermitian matrix.
  std::vector<double> lam;
  for (std::size_t s = 0; s < n; ++s) {
    const double lo = w(static_cast<Eigen::Index>(2 * s));
    const double hi = w(static_cast<Eigen::Index>(2 * s + 1));
    if (hi - lo > gap) throw EmbeddingPairingFailure("embedded eigenvalues do not pair");
    lam.push_back(0.5 * (lo + hi));
  }

  // Reconstruct per cluster of equal eigenvalues: map the cluster's
  // complex eigenvectors to quaternion columns and keep an orthonormal
  // subset of half the size.
  std::vector<QMatrix<double>> cols(n, QMatrix<double>(n, 1));
  std::size_t s = 0;
  while (s < n) {
    std::size_t e2 = s + 1;
    while (e2 < n && lam[e2] - lam[e2 - 1] <= gap) ++e2;
    const std::size_t mult = e2 - s;
    std::vector<QMatrix<double>> accepted;
    for (std::size_t p = 2 * s; p < 2 * e2 && accepted.size() < mult; ++p) {
      QMatrix<double> cand = detail::quat_column(es.eigenvectors().col(
          static_cast<Eigen::Index>(p)));
      if (detail::project_out(accepted, cand) < 0.3) continue;
      detail::scale_column(cand, 1.0 / detail::vec_norm(cand));
      accepted.push_back(std::move(cand));
    }
    if (accepted.size() < mult) {
      throw EmbeddingPairingFailure("quaternion eigenvector reconstruction failed");
    }
    for (std::size_t t = 0; t < mult; ++t) cols[s + t] = std::move(accepted[t]);
    s = e2;
  }

  // Ascending to descending.
  for (std::size_t t = 0; t < n; ++t) {
    out.lambda.push_back(lam[n - 1 - t]);
    for (std::size_t rr = 0; rr < n; ++rr) out.u.set(rr, t, cols[n - 1 - t](rr, 0));
  }
  const QMatrix<double> gram = conj_transpose(out.u) * out.u;
  if (max_entry_dist(gram, QMatrix<double>::identity(n)) > 1e-8) {
    throw EmbeddingPairingFailure("reconstructed eigenvectors are not unitary");
  }
  return out;
}

/// Signature of a Hermitian matrix: eigenvalue counts above, below, and
/// within tolerance of zero.
struct Inertia {
  std::size_t pos = 0, neg = 0, zero = 0;
};

inline Inertia inertia(const QMatrix<double>& a, double tol = kDefaultTol) {
  const HermitianEig eig = eig_hermitian(a, tol);
  double amax = 1.0;
  for (double l : eig.lambda) amax = std::max(amax, std::fabs(l));
  Inertia out;
  for (double l : eig.lambda) {
    if (std::fabs(l) <= tol * amax) {
      ++out.zero;
    } else if (l > 0) {
      ++out.pos;
    } else {
      ++out.neg;
    }
  }
  return out;
}

/// Positive definiteness by the leading-principal-minor criterion, the
/// float backend falling back to eigenvalues past the size cap. Minors of
/// a positive definite matrix are all strictly positive.
template <class R>
bool is_positive_definite(const QMatrix<R>& a, double tol = kDefaultTol) {
  if (!is_hermitian(a, tol)) return false;
  const std::size_t n = a.rows();
  if (n == 0) return false;
  if constexpr (!ScalarTraits<R>::is_exact) {
    if (n > size_cap()) {
      const HermitianEig eig = eig_hermitian(a, tol);
      double amax = 1.0;
      for (double l : eig.lambda) amax = std::max(amax, std::fabs(l));
      return eig.lambda.back() > tol * amax;
    }
  } else {
    if (n > size_cap()) throw SizeCapExceeded("matrix order exceeds size cap");
  }
  std::vector<int> lead;
  for (std::size_t k = 0; k < n; ++k) {
    lead.push_back(static_cast<int>(k));
    const R minor = rdet(submatrix(a, lead, lead), 0, Exec::serial).w;
    if (!(ScalarTraits<R>::zero() < minor)) return false;
  }
  return true;
}

namespace detail {

inline QMatrix<double> eig_function(const QMatrix<double>& a, double tol,
                                    double (*f)(double), const char* what) {
  const HermitianEig eig = eig_hermitian(a, tol);
  const std::size_t n = a.rows();
  double amax = 1.0;
  for (double l : eig.lambda) amax = std::max(amax, std::fabs(l));
  QMatrix<double> d(n, n);
  for (std::size_t t = 0; t < n; ++t) {
    if (eig.lambda[t] <= tol * amax) throw NotPositiveDefinite(what);
    d.set(t, t, Quaternion<double>(f(eig.lambda[t])));
  }
  return eig.u * d * conj_transpose(eig.u);
}

}  // namespace detail

/// Unique positive definite square root of a positive definite matrix.
inline QMatrix<double> sqrt_pd(const QMatrix<double>& a, double tol = kDefaultTol) {
  return detail::eig_function(a, tol, [](double l) { return std::sqrt(l); },
                              "square root needs a positive definite matrix");
}

inline QMatrix<double> inv_sqrt_pd(const QMatrix<double>& a,
                                   double tol = kDefaultTol) {
  return detail::eig_function(a, tol, [](double l) { return 1.0 / std::sqrt(l); },
                              "inverse square root needs a positive definite matrix");
}

/// Singular value decomposition A = U Sigma V* with unitary factors, or
/// the weighted variant where U* M U = I and V* N^{-1} V = I.
struct SVDResult {
  QMatrix<double> u;
  QMatrix<double> v;
  std::vector<double> sigma;
  std::size_t r = 0;
};

/// SVD through the eigendecomposition of A*A: right vectors are its
/// eigenvectors, left vectors A w_i / sigma_i completed to a unitary
/// basis. Singular values are descending with exactly r positive.
inline SVDResult qsvd(const QMatrix<double>& a, double tol = kDefaultTol) {
  const std::size_t m = a.rows(), n = a.cols();
  const HermitianEig eig = eig_hermitian(conj_transpose(a) * a, tol);
  double lmax = 1.0;
  for (double l : eig.lambda) lmax = std::max(lmax, l);

  SVDResult out;
  out.v = eig.u;
  out.sigma.assign(std::min(m, n), 0.0);
  std::vector<QMatrix<double>> basis;
  for (std::size_t t = 0; t < n && t < std::min(m, n); ++t) {
    if (eig.lambda[t] <= tol * lmax) break;
    const double s = std::sqrt(eig.lambda[t]);
    QMatrix<double> u = a * col(eig.u, t);
    detail::scale_column(u, 1.0 / s);
    out.sigma[t] = s;
    basis.push_back(std::move(u));
    ++out.r;
  }
  // Complete the left factor to an m x m unitary basis.
  for (std::size_t t = 0; t < m && basis.size() < m; ++t) {
    QMatrix<double> cand(m, 1);
    cand.set(t, 0, Quaternion<double>(1.0));
    if (detail::project_out(basis, cand) < 0.3) continue;
    detail::scale_column(cand, 1.0 / detail::vec_norm(cand));
    basis.push_back(std::move(cand));
  }
  if (basis.size() < m) throw EmbeddingPairingFailure("left factor completion failed");
  out.u = QMatrix<double>(m, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) out.u.set(i, j, basis[j](i, 0));
  return out;
}

/// The weight square roots, computed once per pair and cached.
inline const WeightPair<double>::Roots& weight_roots(const WeightPair<double>& w,
                                                     double tol = kDefaultTol) {
  {
    std::lock_guard<std::mutex> lock(w.cache_mutex());
    if (w.roots_cache()) return *w.roots_cache();
  }
  // Computed outside the cache lock: the accessors lock it themselves.
  const QMatrix<double> ninv = w.n_inv();
  WeightPair<double>::Roots r;
  r.m_sqrt = sqrt_pd(w.m(), tol);
  r.m_inv_sqrt = inv_sqrt_pd(w.m(), tol);
  r.n_inv_sqrt = sqrt_pd(ninv, tol);
  r.n_sqrt = inv_sqrt_pd(ninv, tol);
  std::lock_guard<std::mutex> lock(w.cache_mutex());
  auto& slot = w.roots_cache();
  if (!slot) slot = std::move(r);
  return *slot;
}

/// Hermitian positive definite check of both weights.
template <class R>
void validate_weights(const WeightPair<R>& w, double tol = kDefaultTol) {
  if (!is_hermitian(w.m(), tol)) throw NotHermitian("weight M must be Hermitian");
  if (!is_positive_definite(w.m(), tol)) {
    throw NotPositiveDefinite("weight M must be positive definite");
  }
  const QMatrix<R>& ninv = w.n_inv();
  if (!is_hermitian(ninv, tol)) throw NotHermitian("weight N must be Hermitian");
  if (!is_positive_definite(ninv, tol)) {
    throw NotPositiveDefinite("weight N must be positive definite");
  }
}

/// Weighted SVD A = U D V* with U* M U = I and V* N^{-1} V = I, built by
/// plain SVD of M^{1/2} A N^{-1/2} conjugated back by the weight roots.
inline SVDResult wsvd(const QMatrix<double>& a, const WeightPair<double>& w,
                      double tol = kDefaultTol) {
  if (w.m_dim() != a.rows() || w.n_dim() != a.cols()) {
    throw DimensionMismatch("weight dimensions must match the matrix");
  }
  const auto& roots = weight_roots(w, tol);
  SVDResult s = qsvd(roots.m_sqrt * a * roots.n_inv_sqrt, tol);
  s.u = roots.m_inv_sqrt * s.u;
  s.v = roots.n_sqrt * s.v;
  return s;
}

/// Weighted pseudoinverse N^{-1} V diag(Sigma^{-1}, 0) U* M from the
/// weighted SVD factors.
inline QMatrix<double> wmp_wsvd(const QMatrix<double>& a,
                                const WeightPair<double>& w,
                                double tol = kDefaultTol) {
  const SVDResult s = wsvd(a, w, tol);
  const std::size_t m = a.rows(), n = a.cols();
  QMatrix<double> sp(n, m);
  for (std::size_t t = 0; t < s.r; ++t) {
    sp.set(t, t, Quaternion<double>(1.0 / s.sigma[t]));
  }
  return w.n_inv() * s.v * sp * conj_transpose(s.u) * w.m();
}

/// Regularized route: iterates X(l) = (l I + G)^{-1} A_sharp (right side,
/// G = A_sharp A) or A_sharp (l I + H)^{-1} (left side, H = A A_sharp)
/// along a decreasing schedule of l values. The two forms are equal for
/// every l since A_sharp (l I + H) = (l I + G) A_sharp, but they condition
/// differently: the smaller Gram is nonsingular whenever the matrix has
/// full rank, so its inversion stays well conditioned as l shrinks.
enum class LimitSide { right, left };

struct LimitTrace {
  std::vector<double> lambda;
  std::vector<QMatrix<double>> iterates;
  /// Distance between consecutive iterates; step_dist[t] compares
  /// iterates t and t+1.
  std::vector<double> step_dist;
  /// Index of the returned iterate: the one right after the smallest
  /// step, where shrinking regularization error meets growing roundoff.
  std::size_t best = 0;
  const QMatrix<double>& x() const { return iterates[best]; }
};

inline std::vector<double> default_limit_schedule() {
  std::vector<double> s;
  double l = 1e-1;
  for (int t = 0; t < 8; ++t, l *= 0.1) s.push_back(l);
  return s;
}

/// Runs the regularized iteration over the whole schedule. Consecutive
/// iterates approach the limit like lambda until the conditioning of
/// lambda I + Gram reverses the trend, so the iterate after the smallest
/// step is returned. NonConvergence if no step ever becomes small.
inline LimitTrace wmp_limit(const QMatrix<double>& a, const WeightPair<double>& w,
                            LimitSide side,
                            std::vector<double> schedule = default_limit_schedule(),
                            [[maybe_unused]] double tol = kDefaultTol) {
  if (schedule.empty()) throw ScheduleEmpty("regularization schedule is empty");
  const QMatrix<double> sharp = weighted_adjoint(a, w);
  const QMatrix<double> gram =
      side == LimitSide::right ? sharp * a : a * sharp;
  const std::size_t k = gram.rows();

  LimitTrace out;
  out.lambda = std::move(schedule);
  for (double l : out.lambda) {
    QMatrix<double> reg = gram;
    for (std::size_t t = 0; t < k; ++t) {
      reg.set(t, t, reg(t, t) + Quaternion<double>(l));
    }
    // reg is positive definite by construction; pivots shrink to the
    // smallest lambda, so the rank-decision tolerance must not apply.
    const QMatrix<double> reg_inv = inverse(reg, 1e-15);
    out.iterates.push_back(side == LimitSide::right ? reg_inv * sharp
                                                    : sharp * reg_inv);
  }
  for (std::size_t t = 0; t + 1 < out.iterates.size(); ++t) {
    out.step_dist.push_back(max_entry_dist(out.iterates[t], out.iterates[t + 1]));
  }
  out.best = out.iterates.size() - 1;
  if (!out.step_dist.empty()) {
    std::size_t tmin = 0;
    for (std::size_t t = 1; t < out.step_dist.size(); ++t) {
      if (out.step_dist[t] < out.step_dist[tmin]) tmin = t;
    }
    out.best = tmin + 1;
    const double scale = 1.0 + max_entry_norm(out.iterates[out.best]);
    if (out.step_dist[tmin] > 1e-6 * scale) {
      throw NonConvergence("regularized iterates stopped approaching a limit");
    }
  }
  return out;
}

/// Default side: invert the Gram on the smaller side of the matrix.
inline LimitTrace wmp_limit(const QMatrix<double>& a, const WeightPair<double>& w) {
  return wmp_limit(a, w, a.rows() < a.cols() ? LimitSide::left : LimitSide::right);
}

}  // namespace qwmp
