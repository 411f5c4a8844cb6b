#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qwmp/penrose.hpp"
#include "qwmp/rcdet.hpp"
#include "qwmp/spectral.hpp"
#include "qwmp/weights.hpp"

namespace qwmp {

/// Hermitian-ness of the two weighted Gram matrices; decides which
/// determinantal representation applies directly.
struct SharpFlags {
  bool left = false;   // A_sharp A
  bool right = false;  // A A_sharp
};

template <class R>
SharpFlags sharp_hermitian_flags(const QMatrix<R>& a, const WeightPair<R>& w,
                                 double tol = kDefaultTol) {
  const QMatrix<R> sharp = weighted_adjoint(a, w);
  return SharpFlags{is_hermitian(sharp * a, tol), is_hermitian(a * sharp, tol)};
}

namespace detail {

template <class R, class F>
QMatrix<R> entry_map(std::size_t rows, std::size_t cols, Exec exec, F&& f) {
  QMatrix<R> x(rows, cols);
  if (exec == Exec::parallel) {
#pragma omp parallel for collapse(2) schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(rows); ++i) {
      for (std::int64_t j = 0; j < static_cast<std::int64_t>(cols); ++j) {
        x.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
              f(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
      }
    }
  } else {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) x.set(i, j, f(i, j));
  }
  return x;
}

// Denominators are minor sums of positive semidefinite Gram matrices and
// must be positive when the minor order equals the rank.
template <class R>
R checked_denominator(const R& den, const QMatrix<R>& gram, std::size_t r,
                      double tol) {
  if constexpr (ScalarTraits<R>::is_exact) {
    if (ScalarTraits<R>::is_zero(den)) {
      throw ZeroDenominator("minor-sum denominator vanished");
    }
  } else {
    const std::size_t n = gram.rows();
    double bound = 1.0;
    const double mu = 1.0 + max_entry_norm(gram);
    for (std::size_t t = 0; t < r; ++t) bound *= mu * static_cast<double>(t + 1);
    for (std::size_t t = 0; t < r; ++t) bound *= static_cast<double>(n - t) /
                                                 static_cast<double>(t + 1);
    if (std::fabs(ScalarTraits<R>::to_double(den)) <= tol * bound) {
      throw ZeroDenominator("minor-sum denominator vanished");
    }
  }
  return den;
}

template <class R>
void check_wmp_args(const QMatrix<R>& a, const WeightPair<R>& w) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw DimensionMismatch("matrix must be nonempty");
  }
  if (w.m_dim() != a.rows() || w.n_dim() != a.cols()) {
    throw DimensionMismatch("weight dimensions must match the matrix");
  }
}

}  // namespace detail

/// Weighted pseudoinverse by the column determinantal representation,
/// valid when A_sharp A is Hermitian: entry (i, j) is the bordered
/// minor sum of A_sharp A against column j of A_sharp, anchored at i,
/// divided by the order-r principal minor sum.
template <class R>
QMatrix<R> wmp_det_hermitian_col(const QMatrix<R>& a, const WeightPair<R>& w,
                                 double tol = kDefaultTol,
                                 Exec exec = Exec::parallel) {
  detail::check_wmp_args(a, w);
  const std::size_t m = a.rows(), n = a.cols();
  const QMatrix<R> sharp = weighted_adjoint(a, w);
  const QMatrix<R> g = sharp * a;
  if (!is_hermitian(g, tol)) {
    throw NotHermitianSharp("A_sharp A is not Hermitian");
  }
  const std::size_t r = rank(a, tol);
  if (r == 0) return QMatrix<R>(n, m);
  if (r > size_cap()) throw SizeCapExceeded("rank exceeds size cap");
  const R den = detail::checked_denominator(principal_minor_sum(g, r, exec), g, r, tol);
  const R dinv = ScalarTraits<R>::recip(den);
  std::vector<QMatrix<R>> sharp_cols;
  for (std::size_t j = 0; j < m; ++j) sharp_cols.push_back(col(sharp, j));
  return detail::entry_map<R>(n, m, exec, [&](std::size_t i, std::size_t j) {
    return bordered_minor_sum_col(g, sharp_cols[j], i, r, Exec::serial) * dinv;
  });
}

/// Row mirror: valid when A A_sharp is Hermitian; entry (i, j) borders
/// A A_sharp with row i of A_sharp, anchored at j.
template <class R>
QMatrix<R> wmp_det_hermitian_row(const QMatrix<R>& a, const WeightPair<R>& w,
                                 double tol = kDefaultTol,
                                 Exec exec = Exec::parallel) {
  detail::check_wmp_args(a, w);
  const std::size_t m = a.rows(), n = a.cols();
  const QMatrix<R> sharp = weighted_adjoint(a, w);
  const QMatrix<R> h = a * sharp;
  if (!is_hermitian(h, tol)) {
    throw NotHermitianSharp("A A_sharp is not Hermitian");
  }
  const std::size_t r = rank(a, tol);
  if (r == 0) return QMatrix<R>(n, m);
  if (r > size_cap()) throw SizeCapExceeded("rank exceeds size cap");
  const R den = detail::checked_denominator(principal_minor_sum(h, r, exec), h, r, tol);
  const R dinv = ScalarTraits<R>::recip(den);
  std::vector<QMatrix<R>> sharp_rows;
  for (std::size_t i = 0; i < n; ++i) sharp_rows.push_back(row(sharp, i));
  return detail::entry_map<R>(n, m, exec, [&](std::size_t i, std::size_t j) {
    return bordered_minor_sum_row(h, sharp_rows[i], j, r, Exec::serial) * dinv;
  });
}

/// Unweighted pseudoinverse side selector.
enum class DetSide { col, row };

/// Unweighted Moore-Penrose inverse: the Hermitian representations with
/// identity weights, where both Gram matrices are Hermitian by
/// construction.
template <class R>
QMatrix<R> mp_det(const QMatrix<R>& a, DetSide side = DetSide::col,
                  double tol = kDefaultTol, Exec exec = Exec::parallel) {
  const WeightPair<R> w = WeightPair<R>::identity(a.rows(), a.cols());
  return side == DetSide::col ? wmp_det_hermitian_col(a, w, tol, exec)
                              : wmp_det_hermitian_row(a, w, tol, exec);
}

/// Column representation without the Hermitian assumption. Full column
/// rank works on both backends through the Hermitian Gram A*MA; the
/// deficient-rank branch conjugates by N^{-1/2} and needs the float
/// backend.
template <class R>
QMatrix<R> wmp_det_general_col(const QMatrix<R>& a, const WeightPair<R>& w,
                               double tol = kDefaultTol,
                               Exec exec = Exec::parallel) {
  detail::check_wmp_args(a, w);
  const std::size_t m = a.rows(), n = a.cols();
  const std::size_t r = rank(a, tol);
  if (r == 0) return QMatrix<R>(n, m);
  if (r > size_cap()) throw SizeCapExceeded("rank exceeds size cap");

  if (r == n) {
    const QMatrix<R> gram = conj_transpose(a) * w.m() * a;
    const QMatrix<R> ahat = conj_transpose(a) * w.m();
    const R den = detail::checked_denominator(principal_minor_sum(gram, n, exec),
                                              gram, n, tol);
    const R dinv = ScalarTraits<R>::recip(den);
    std::vector<QMatrix<R>> cols_;
    for (std::size_t j = 0; j < m; ++j) cols_.push_back(col(ahat, j));
    return detail::entry_map<R>(n, m, exec, [&](std::size_t i, std::size_t j) {
      return bordered_minor_sum_col(gram, cols_[j], i, n, Exec::serial) * dinv;
    });
  }

  if constexpr (ScalarTraits<R>::is_exact) {
    throw BackendUnsupported(
        "deficient-rank general column route needs the float backend");
  } else {
    const auto& roots = weight_roots(w, tol);
    const QMatrix<double> half = roots.n_inv_sqrt * conj_transpose(a) * w.m();
    const QMatrix<double> gram = half * a * roots.n_inv_sqrt;
    const R den = detail::checked_denominator(principal_minor_sum(gram, r, exec),
                                              gram, r, tol);
    const R dinv = ScalarTraits<R>::recip(den);
    std::vector<QMatrix<double>> cols_;
    for (std::size_t j = 0; j < m; ++j) cols_.push_back(col(half, j));
    const QMatrix<double> num =
        detail::entry_map<double>(n, m, exec, [&](std::size_t k, std::size_t j) {
          return bordered_minor_sum_col(gram, cols_[j], k, r, Exec::serial) * dinv;
        });
    return roots.n_inv_sqrt * num;
  }
}

/// Row mirror of the general representation: full row rank through
/// AN^{-1}A*, deficient rank through the M^{1/2}-conjugated Gram.
template <class R>
QMatrix<R> wmp_det_general_row(const QMatrix<R>& a, const WeightPair<R>& w,
                               double tol = kDefaultTol,
                               Exec exec = Exec::parallel) {
  detail::check_wmp_args(a, w);
  const std::size_t m = a.rows(), n = a.cols();
  const std::size_t r = rank(a, tol);
  if (r == 0) return QMatrix<R>(n, m);
  if (r > size_cap()) throw SizeCapExceeded("rank exceeds size cap");

  if (r == m) {
    const QMatrix<R> gram = a * w.n_inv() * conj_transpose(a);
    const QMatrix<R> achk = w.n_inv() * conj_transpose(a);
    const R den = detail::checked_denominator(principal_minor_sum(gram, m, exec),
                                              gram, m, tol);
    const R dinv = ScalarTraits<R>::recip(den);
    std::vector<QMatrix<R>> rows_;
    for (std::size_t i = 0; i < n; ++i) rows_.push_back(row(achk, i));
    return detail::entry_map<R>(n, m, exec, [&](std::size_t i, std::size_t j) {
      return bordered_minor_sum_row(gram, rows_[i], j, m, Exec::serial) * dinv;
    });
  }

  if constexpr (ScalarTraits<R>::is_exact) {
    throw BackendUnsupported(
        "deficient-rank general row route needs the float backend");
  } else {
    const auto& roots = weight_roots(w, tol);
    const QMatrix<double> half = w.n_inv() * conj_transpose(a) * roots.m_sqrt;
    const QMatrix<double> gram = roots.m_sqrt * a * half;
    const R den = detail::checked_denominator(principal_minor_sum(gram, r, exec),
                                              gram, r, tol);
    const R dinv = ScalarTraits<R>::recip(den);
    std::vector<QMatrix<double>> rows_;
    for (std::size_t i = 0; i < n; ++i) rows_.push_back(row(half, i));
    const QMatrix<double> num =
        detail::entry_map<double>(n, m, exec, [&](std::size_t i, std::size_t l) {
          return bordered_minor_sum_row(gram, rows_[i], l, r, Exec::serial) * dinv;
        });
    return num * roots.m_sqrt;
  }
}

/// Reduction to the unweighted problem: the pseudoinverse of
/// M^{1/2} A N^{-1/2} conjugated back by the weight roots. Float only.
inline QMatrix<double> wmp_reduction(const QMatrix<double>& a,
                                     const WeightPair<double>& w,
                                     double tol = kDefaultTol,
                                     Exec exec = Exec::parallel) {
  detail::check_wmp_args(a, w);
  const auto& roots = weight_roots(w, tol);
  const QMatrix<double> at = roots.m_sqrt * a * roots.n_inv_sqrt;
  const DetSide side = a.cols() <= a.rows() ? DetSide::col : DetSide::row;
  return roots.n_inv_sqrt * mp_det(at, side, tol, exec) * roots.m_sqrt;
}

/// Projection P = A_dagger A through the column minor sums of A_sharp A.
template <class R>
QMatrix<R> projection_p(const QMatrix<R>& a, const WeightPair<R>& w,
                        double tol = kDefaultTol, Exec exec = Exec::parallel) {
  detail::check_wmp_args(a, w);
  const std::size_t n = a.cols();
  const QMatrix<R> g = weighted_adjoint(a, w) * a;
  if (!is_hermitian(g, tol)) throw NotHermitianSharp("A_sharp A is not Hermitian");
  const std::size_t r = rank(a, tol);
  if (r == n) return QMatrix<R>::identity(n);
  if (r == 0) return QMatrix<R>(n, n);
  if (r > size_cap()) throw SizeCapExceeded("rank exceeds size cap");
  const R den = detail::checked_denominator(principal_minor_sum(g, r, exec), g, r, tol);
  const R dinv = ScalarTraits<R>::recip(den);
  std::vector<QMatrix<R>> g_cols;
  for (std::size_t j = 0; j < n; ++j) g_cols.push_back(col(g, j));
  return detail::entry_map<R>(n, n, exec, [&](std::size_t i, std::size_t j) {
    return bordered_minor_sum_col(g, g_cols[j], i, r, Exec::serial) * dinv;
  });
}

/// Projection Q = A A_dagger through the row minor sums of A A_sharp.
template <class R>
QMatrix<R> projection_q(const QMatrix<R>& a, const WeightPair<R>& w,
                        double tol = kDefaultTol, Exec exec = Exec::parallel) {
  detail::check_wmp_args(a, w);
  const std::size_t m = a.rows();
  const QMatrix<R> h = a * weighted_adjoint(a, w);
  if (!is_hermitian(h, tol)) throw NotHermitianSharp("A A_sharp is not Hermitian");
  const std::size_t r = rank(a, tol);
  if (r == m) return QMatrix<R>::identity(m);
  if (r == 0) return QMatrix<R>(m, m);
  if (r > size_cap()) throw SizeCapExceeded("rank exceeds size cap");
  const R den = detail::checked_denominator(principal_minor_sum(h, r, exec), h, r, tol);
  const R dinv = ScalarTraits<R>::recip(den);
  std::vector<QMatrix<R>> h_rows;
  for (std::size_t i = 0; i < m; ++i) h_rows.push_back(row(h, i));
  return detail::entry_map<R>(m, m, exec, [&](std::size_t i, std::size_t j) {
    return bordered_minor_sum_row(h, h_rows[i], j, r, Exec::serial) * dinv;
  });
}

enum class WmpMethod {
  auto_,
  hermitian_col,
  hermitian_row,
  general_col,
  general_row,
  wsvd,
  limit,
  reduction,
  all,
};

inline const char* method_name(WmpMethod m) {
  switch (m) {
    case WmpMethod::auto_: return "auto";
    case WmpMethod::hermitian_col: return "hermitian-col";
    case WmpMethod::hermitian_row: return "hermitian-row";
    case WmpMethod::general_col: return "general-col";
    case WmpMethod::general_row: return "general-row";
    case WmpMethod::wsvd: return "wsvd";
    case WmpMethod::limit: return "limit";
    case WmpMethod::reduction: return "reduction";
    case WmpMethod::all: return "all";
  }
  return "?";
}

template <class R>
struct MethodResult {
  WmpMethod method = WmpMethod::auto_;
  QMatrix<R> x;
  PenroseResiduals<R> residuals;
  double axiom_tol = 0;
};

template <class R>
struct WmpReport {
  QMatrix<R> inverse;
  SharpFlags flags;
  std::size_t rank = 0;
  std::vector<MethodResult<R>> results;
  /// Largest entry distance between any two computed inverses; the
  /// regularized limit route dominates it when present.
  double max_pairwise = 0.0;
};

struct WmpOptions {
  WmpMethod method = WmpMethod::auto_;
  double tol = kDefaultTol;
  /// Residual acceptance for float results; exact results must be
  /// exactly zero. The limit route gets max(1e-4, axiom_tol).
  double axiom_tol = 1e-8;
  Exec exec = Exec::parallel;
  bool validate = true;
  std::vector<double> limit_schedule;
};

namespace detail {

template <class R>
WmpMethod resolve_auto(const SharpFlags& flags, std::size_t r, std::size_t m,
                       std::size_t n) {
  if constexpr (ScalarTraits<R>::is_exact) {
    if (flags.left) return WmpMethod::hermitian_col;
    if (flags.right) return WmpMethod::hermitian_row;
    if (r == n) return WmpMethod::general_col;
    if (r == m) return WmpMethod::general_row;
    throw BackendUnsupported(
        "no exact route: deficient rank with non-Hermitian Gram matrices "
        "needs the float backend");
  } else {
    return n <= m ? WmpMethod::general_col : WmpMethod::general_row;
  }
}

template <class R>
bool method_applicable(WmpMethod m, const SharpFlags& flags, std::size_t r,
                       std::size_t rows, std::size_t cols) {
  switch (m) {
    case WmpMethod::hermitian_col: return flags.left;
    case WmpMethod::hermitian_row: return flags.right;
    case WmpMethod::general_col:
      return !ScalarTraits<R>::is_exact || r == cols || r == 0;
    case WmpMethod::general_row:
      return !ScalarTraits<R>::is_exact || r == rows || r == 0;
    case WmpMethod::wsvd:
    case WmpMethod::limit:
    case WmpMethod::reduction:
      return !ScalarTraits<R>::is_exact;
    default: return false;
  }
}

template <class R>
QMatrix<R> run_method(WmpMethod m, const QMatrix<R>& a, const WeightPair<R>& w,
                      const WmpOptions& opts) {
  switch (m) {
    case WmpMethod::hermitian_col:
      return wmp_det_hermitian_col(a, w, opts.tol, opts.exec);
    case WmpMethod::hermitian_row:
      return wmp_det_hermitian_row(a, w, opts.tol, opts.exec);
    case WmpMethod::general_col:
      return wmp_det_general_col(a, w, opts.tol, opts.exec);
    case WmpMethod::general_row:
      return wmp_det_general_row(a, w, opts.tol, opts.exec);
    default: break;
  }
  if constexpr (ScalarTraits<R>::is_exact) {
    throw BackendUnsupported("method needs the float backend");
  } else {
    switch (m) {
      case WmpMethod::wsvd: return wmp_wsvd(a, w, opts.tol);
      case WmpMethod::reduction: return wmp_reduction(a, w, opts.tol, opts.exec);
      case WmpMethod::limit: {
        auto schedule = opts.limit_schedule.empty() ? default_limit_schedule()
                                                    : opts.limit_schedule;
        const LimitSide side =
            a.rows() < a.cols() ? LimitSide::left : LimitSide::right;
        return wmp_limit(a, w, side, std::move(schedule), opts.tol).x();
      }
      default: throw Error("unresolved method");
    }
  }
}

}  // namespace detail

namespace detail {

template <class R>
WmpReport<R> run_and_check(const QMatrix<R>& a, const WeightPair<R>& w,
                           const std::vector<WmpMethod>& methods,
                           const WmpOptions& opts) {
  detail::check_wmp_args(a, w);
  if (opts.validate) validate_weights(w, opts.tol);

  WmpReport<R> report;
  report.flags = sharp_hermitian_flags(a, w, opts.tol);
  report.rank = rank(a, opts.tol);

  for (WmpMethod m : methods) {
    MethodResult<R> res;
    res.method = m;
    res.x = detail::run_method(m, a, w, opts);
    res.residuals = penrose_residuals(a, w.m(), w.n(), res.x);
    res.axiom_tol = m == WmpMethod::limit ? std::max(1e-4, opts.axiom_tol)
                                          : opts.axiom_tol;
    if constexpr (ScalarTraits<R>::is_exact) {
      if (!res.residuals.exact_zero()) {
        throw AxiomViolation(std::string("method ") + method_name(m) +
                             " violates the defining equations exactly");
      }
    } else {
      if (res.residuals.max_rho() > res.axiom_tol) {
        throw AxiomViolation(std::string("method ") + method_name(m) +
                             " residual " + std::to_string(res.residuals.max_rho()) +
                             " exceeds " + std::to_string(res.axiom_tol));
      }
    }
    report.results.push_back(std::move(res));
  }
  if (report.results.empty()) throw Error("no method ran");
  report.inverse = report.results.front().x;

  for (std::size_t s = 0; s < report.results.size(); ++s) {
    for (std::size_t t = s + 1; t < report.results.size(); ++t) {
      report.max_pairwise =
          std::max(report.max_pairwise,
                   max_entry_dist(report.results[s].x, report.results[t].x));
    }
  }
  return report;
}

}  // namespace detail

/// Runs the requested methods, checks every result against the four
/// defining equations, and cross-compares the inverses. Throws
/// AxiomViolation when any residual exceeds its method tolerance.
template <class R>
WmpReport<R> cross_check(const QMatrix<R>& a, const WeightPair<R>& w,
                         const std::vector<WmpMethod>& methods,
                         const WmpOptions& opts = {}) {
  if (methods.size() < 2) throw Error("cross_check needs at least two methods");
  return detail::run_and_check(a, w, methods, opts);
}

/// Front door: resolves the method (auto picks the Hermitian
/// representation on the exact backend when available, the size-matched
/// general one otherwise; "all" runs every applicable route) and returns
/// the checked report.
template <class R>
WmpReport<R> wmp(const QMatrix<R>& a, const WeightPair<R>& w,
                 const WmpOptions& opts = {}) {
  detail::check_wmp_args(a, w);
  if (opts.validate) validate_weights(w, opts.tol);
  WmpOptions inner = opts;
  inner.validate = false;

  const SharpFlags flags = sharp_hermitian_flags(a, w, opts.tol);
  const std::size_t r = rank(a, opts.tol);

  std::vector<WmpMethod> methods;
  if (opts.method == WmpMethod::auto_) {
    methods.push_back(detail::resolve_auto<R>(flags, r, a.rows(), a.cols()));
  } else if (opts.method == WmpMethod::all) {
    for (WmpMethod m :
         {WmpMethod::hermitian_col, WmpMethod::hermitian_row,
          WmpMethod::general_col, WmpMethod::general_row, WmpMethod::reduction,
          WmpMethod::wsvd, WmpMethod::limit}) {
      if (detail::method_applicable<R>(m, flags, r, a.rows(), a.cols())) {
        methods.push_back(m);
      }
    }
  } else {
    methods.push_back(opts.method);
  }
  return detail::run_and_check(a, w, methods, inner);
}

}  // namespace qwmp
