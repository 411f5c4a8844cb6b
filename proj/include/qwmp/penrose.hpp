#pragma once

#include <cmath>

#include "qwmp/qmatrix.hpp"

namespace qwmp {

/// Defects of the four equations a weighted pseudoinverse X must satisfy:
/// AXA = A, XAX = X, (MAX)* = MAX, (NXA)* = NXA. Each residual is the
/// largest entry norm of the defect matrix, kept as an exact squared norm
/// so the rational backend can certify zero.
template <class R>
struct PenroseResiduals {
  R nsq1{ScalarTraits<R>::zero()};
  R nsq2{ScalarTraits<R>::zero()};
  R nsq3m{ScalarTraits<R>::zero()};
  R nsq4n{ScalarTraits<R>::zero()};

  double rho1() const { return std::sqrt(ScalarTraits<R>::to_double(nsq1)); }
  double rho2() const { return std::sqrt(ScalarTraits<R>::to_double(nsq2)); }
  double rho3m() const { return std::sqrt(ScalarTraits<R>::to_double(nsq3m)); }
  double rho4n() const { return std::sqrt(ScalarTraits<R>::to_double(nsq4n)); }
  double max_rho() const {
    return std::max(std::max(rho1(), rho2()), std::max(rho3m(), rho4n()));
  }
  bool exact_zero() const {
    return ScalarTraits<R>::is_zero(nsq1) && ScalarTraits<R>::is_zero(nsq2) &&
           ScalarTraits<R>::is_zero(nsq3m) && ScalarTraits<R>::is_zero(nsq4n);
  }
};

template <class R>
PenroseResiduals<R> penrose_residuals(const QMatrix<R>& a, const QMatrix<R>& m,
                                      const QMatrix<R>& n, const QMatrix<R>& x) {
  if (x.rows() != a.cols() || x.cols() != a.rows()) {
    throw DimensionMismatch("candidate inverse has the wrong shape");
  }
  if (m.rows() != a.rows() || m.cols() != a.rows() || n.rows() != a.cols() ||
      n.cols() != a.cols()) {
    throw DimensionMismatch("weight dimensions must match the matrix");
  }
  PenroseResiduals<R> out;
  const QMatrix<R> ax = a * x, xa = x * a;
  out.nsq1 = max_entry_norm_sq(ax * a - a);
  out.nsq2 = max_entry_norm_sq(xa * x - x);
  const QMatrix<R> max_ = m * ax;
  out.nsq3m = max_entry_norm_sq(conj_transpose(max_) - max_);
  const QMatrix<R> nxa = n * xa;
  out.nsq4n = max_entry_norm_sq(conj_transpose(nxa) - nxa);
  return out;
}

}  // namespace qwmp
