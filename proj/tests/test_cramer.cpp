#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "qwmp/cramer.hpp"
#include "qwmp/verify.hpp"
#include "qwmp/wmp.hpp"

using namespace qwmp;
using MR = QMatrix<Rational>;
using MD = QMatrix<double>;

TEST_SUITE("cramer") {
  TEST_CASE("reference system solved exactly") {
    const qwmp::testing::Reference<Rational> ref;
    CHECK(ref.sharp * ref.b == ref.f);
    const MR x = solve_right(ref.a, ref.w, ref.b);
    CHECK(x == ref.sol);
    // The solution is the weighted least squares point: X b.
    CHECK(x == ref.x * ref.b);
    // Entry numerators over the order-2 minor sum 70140.
    const auto num = [&](std::size_t i) {
      return bordered_minor_sum_col(ref.gram, ref.f, i, 2);
    };
    CHECK(num(0) == Quaternion<Rational>::from_ints(18370, -21710, -3340, 6680));
    CHECK(num(1) == Quaternion<Rational>::from_ints(25050, -15030, 11690, -5010));
    CHECK(num(2) == Quaternion<Rational>::from_ints(-26720, 8350, 8350, 6680));
  }

  TEST_CASE("left systems need a usable route on the exact backend") {
    const qwmp::testing::Reference<Rational> ref;
    // A A_sharp is not Hermitian and the rank is below the row count, so
    // no exact representation applies.
    MR brow(1, 3);
    brow.set(0, 0, Quaternion<Rational>::one());
    CHECK_THROWS_AS(solve_left(ref.a, ref.w, brow), BackendUnsupported);
    // The float backend solves the same system.
    const qwmp::testing::Reference<double> reff;
    const MD xf = solve_left(reff.a, reff.w, to_float(brow));
    CHECK(max_entry_dist(xf, to_float(brow) * reff.x) <= 1e-9);
  }

  TEST_CASE("right solutions match the inverse applied to the data") {
    std::mt19937_64 rng(71);
    for (int t = 0; t < 3; ++t) {
      const MR a = random_rank_deficient<Rational>(rng, 4, 3, 2);
      const WeightPair<Rational> w = WeightPair<Rational>::identity(4, 3);
      const MR b = random_qmatrix<Rational>(rng, 4, 1);
      const MR x = solve_right(a, w, b);
      CHECK(x == mp_det(a) * b);
    }
  }

  TEST_CASE("left solutions match the data applied to the inverse") {
    std::mt19937_64 rng(72);
    for (int t = 0; t < 3; ++t) {
      const MR a = random_rank_deficient<Rational>(rng, 3, 4, 2);
      const WeightPair<Rational> w = WeightPair<Rational>::identity(3, 4);
      const MR b = random_qmatrix<Rational>(rng, 1, 4);
      const MR x = solve_left(a, w, b);
      CHECK(x == b * mp_det(a));
    }
  }

  TEST_CASE("consistent full rank systems recover the generator") {
    std::mt19937_64 rng(73);
    MR a = random_qmatrix<Rational>(rng, 4, 3);
    while (rank(a) < 3) a = random_qmatrix<Rational>(rng, 4, 3);
    const WeightPair<Rational> w =
        WeightPair<Rational>::with_n(random_hpd<Rational>(rng, 4), random_hpd<Rational>(rng, 3));
    const MR y = random_qmatrix<Rational>(rng, 3, 1);
    const MR x = solve_right(a, w, a * y);
    CHECK(x == y);  // full column rank: the consistent solution is unique

    MR c = random_qmatrix<Rational>(rng, 3, 4);
    while (rank(c) < 3) c = random_qmatrix<Rational>(rng, 3, 4);
    const WeightPair<Rational> wc =
        WeightPair<Rational>::with_n(random_hpd<Rational>(rng, 3), random_hpd<Rational>(rng, 4));
    const MR z = random_qmatrix<Rational>(rng, 1, 3);
    CHECK(solve_left(c, wc, z * c) == z);
  }

  TEST_CASE("float weighted systems agree with the oracle inverse") {
    std::mt19937_64 rng(74);
    for (int t = 0; t < 3; ++t) {
      const MD a = random_rank_deficient<double>(rng, 4, 3, 2);
      const WeightPair<double> w =
          WeightPair<double>::with_n(random_hpd<double>(rng, 4), random_hpd<double>(rng, 3));
      const MD xw = brute_force_wmp(a, w);
      const MD b = random_qmatrix<double>(rng, 4, 1);
      CHECK(max_entry_dist(solve_right(a, w, b), xw * b) <= 1e-6);
      const MD brow = random_qmatrix<double>(rng, 1, 3);
      CHECK(max_entry_dist(solve_left(a, w, brow), brow * xw) <= 1e-6);
    }
  }

  TEST_CASE("argument guards") {
    const qwmp::testing::Reference<Rational> ref;
    CHECK_THROWS_AS(solve_right(ref.a, ref.w, MR(3, 1)), DimensionMismatch);
    CHECK_THROWS_AS(solve_right(ref.a, ref.w, MR(4, 2)), DimensionMismatch);
    CHECK_THROWS_AS(solve_left(ref.a, ref.w, MR(1, 4)), DimensionMismatch);
  }
}
