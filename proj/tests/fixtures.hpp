#pragma once

// Shared test fixtures: small matrix builders and the reference
// instance, a 4x3 rank-2 matrix with nontrivial weights whose weighted
// pseudoinverse is known exactly. Frozen values were cross-checked two
// ways: exactly zero Penrose residuals on the rational backend (the
// inverse is unique) and the complex-embedding SVD oracle.
#include <array>
#include <initializer_list>
#include <random>
#include <vector>

#include "qwmp/qmatrix.hpp"
#include "qwmp/weights.hpp"

namespace qwmp::testing {

/// Real-entry matrix with integer components drawn from [lo, hi].
template <class R>
QMatrix<R> real_random(std::mt19937_64& rng, std::size_t n, int lo = -4,
                       int hi = 4) {
  std::uniform_int_distribution<int> dist(lo, hi);
  QMatrix<R> a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a.set(i, j, Quaternion<R>(ScalarTraits<R>::from_int(dist(rng))));
    }
  }
  return a;
}

/// Classical determinant of the real parts by Gaussian elimination;
/// independent of the permutation-sum code under test.
template <class R>
R classical_det(const QMatrix<R>& a) {
  const std::size_t n = a.rows();
  std::vector<std::vector<R>> m(n, std::vector<R>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j).w;
  R det = ScalarTraits<R>::one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && ScalarTraits<R>::is_zero(m[p][c])) ++p;
    if (p == n) return ScalarTraits<R>::zero();
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det = det * m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const R f = m[r][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return det;
}

template <class R>
QMatrix<R> mk(std::size_t rows, std::size_t cols,
              std::initializer_list<std::array<int, 4>> es) {
  QMatrix<R> a(rows, cols);
  std::size_t t = 0;
  for (const auto& e : es) {
    a.set(t / cols, t % cols, Quaternion<R>::from_ints(e[0], e[1], e[2], e[3]));
    ++t;
  }
  if (t != rows * cols) throw DimensionMismatch("fixture entry count");
  return a;
}

template <class R>
struct Reference {
  QMatrix<R> a = mk<R>(4, 3,
      {{{1, 0, 0, 0}}, {{0, 1, 0, 0}}, {{0, 0, 1, 0}},
       {{0, 0, 0, -1}}, {{0, 1, 0, 0}}, {{1, 0, 0, 0}},
       {{0, 0, 0, 1}}, {{0, 0, 1, 0}}, {{0, -1, 0, 0}},
       {{0, 0, 1, 0}}, {{-1, 0, 0, 0}}, {{0, 1, 0, 0}}});
  QMatrix<R> m = mk<R>(4, 4,
      {{{2, 0, 0, 0}}, {{0, 0, 0, 1}}, {{0, 1, 0, 0}}, {{0, 0, 0, 0}},
       {{0, 0, 0, -1}}, {{2, 0, 0, 0}}, {{0, 0, 0, 0}}, {{0, 0, 1, 0}},
       {{0, -1, 0, 0}}, {{0, 0, 0, 0}}, {{2, 0, 0, 0}}, {{0, 0, 0, 1}},
       {{0, 0, 0, 0}}, {{0, 0, -1, 0}}, {{0, 0, 0, -1}}, {{2, 0, 0, 0}}});
  QMatrix<R> n_inv = mk<R>(3, 3,
      {{{23, 0, 0, 0}}, {{16, -2, -2, 10}}, {{-16, 10, -2, -2}},
       {{16, 2, 2, -10}}, {{29, 0, 0, 0}}, {{-19, -1, -13, -1}},
       {{-16, -10, 2, 2}}, {{-19, 1, 13, 1}}, {{29, 0, 0, 0}}});
  WeightPair<R> w = WeightPair<R>::with_n_inv(m, n_inv);

  QMatrix<R> sharp = mk<R>(3, 4,
      {{{51, -12, 25, -24}}, {{-43, -18, 0, 39}}, {{-18, 26, -30, -38}}, {{19, -1, -50, -42}},
       {{0, -32, 17, -37}}, {{-24, -50, 26, 24}}, {{-5, -24, -56, 1}}, {{-38, -25, -18, -67}},
       {{-5, -6, -50, 11}}, {{44, 23, -12, 7}}, {{30, 38, 5, 37}}, {{18, -44, 6, 54}}});
  QMatrix<R> gram = mk<R>(3, 3,
      {{{178, 0, 0, 0}}, {{41, 47, 47, 43}}, {{-41, 43, 47, 47}},
       {{41, -47, -47, -43}}, {{176, 0, 0, 0}}, {{-40, -46, -42, -46}},
       {{-41, -43, -47, -47}}, {{-40, 46, 42, 46}}, {{176, 0, 0, 0}}});
  // Pseudoinverse entries times 42.
  QMatrix<R> x42 = mk<R>(3, 4,
      {{{8, -2, 4, -4}}, {{-7, -3, 0, 6}}, {{-3, 4, -5, -6}}, {{3, 0, -8, -7}},
       {{0, -5, 3, -6}}, {{-4, -8, 4, 4}}, {{-1, -4, -9, 0}}, {{-6, -4, -3, -11}},
       {{-1, -1, -8, 2}}, {{7, 4, -2, 1}}, {{5, 6, 1, 6}}, {{3, -7, 1, 9}}});
  QMatrix<R> x = x42 * ScalarTraits<R>::recip(ScalarTraits<R>::from_int(42));

  QMatrix<R> b = mk<R>(4, 1,
      {{{1, 0, 0, 0}}, {{0, 0, 0, 0}}, {{0, 1, 0, 0}}, {{0, 0, 0, 1}}});
  QMatrix<R> f = mk<R>(3, 1,
      {{{67, -80, -12, 25}}, {{91, -55, 43, -19}}, {{-97, 30, 31, 24}}});
  // Solution entries times 42.
  QMatrix<R> sol42 = mk<R>(3, 1,
      {{{11, -13, -2, 4}}, {{15, -9, 7, -3}}, {{-16, 5, 5, 4}}});
  QMatrix<R> sol = sol42 * ScalarTraits<R>::recip(ScalarTraits<R>::from_int(42));
};

}  // namespace qwmp::testing
