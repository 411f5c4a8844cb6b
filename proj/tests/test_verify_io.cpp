#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "qwmp/io.hpp"
#include "qwmp/penrose.hpp"
#include "qwmp/spectral.hpp"
#include "qwmp/verify.hpp"

using namespace qwmp;
using MR = QMatrix<Rational>;
using MD = QMatrix<double>;

TEST_SUITE("verify") {
  TEST_CASE("oracle inverts a diagonal by reciprocals") {
    MD a(2, 2);
    a.set(0, 0, Quaternion<double>(2.0));
    const MD x = brute_force_mp(a);
    CHECK(x(0, 0).w == doctest::Approx(0.5));
    CHECK(max_entry_norm(x - conj_transpose(x)) <= 1e-12);  // real diagonal
    CHECK(std::fabs(x(1, 1).w) <= 1e-12);
  }

  TEST_CASE("oracle satisfies the defining equations") {
    std::mt19937_64 rng(81);
    for (const auto [m, n, r] : {std::array<std::size_t, 3>{3, 4, 3},
                                 {4, 4, 2},
                                 {5, 2, 2}}) {
      const MD a = r < std::min(m, n) ? random_rank_deficient<double>(rng, m, n, r)
                                      : random_qmatrix<double>(rng, m, n);
      const MD x = brute_force_mp(a);
      const auto id = WeightPair<double>::identity(m, n);
      CHECK(penrose_residuals(a, id.m(), id.n(), x).max_rho() <= 1e-9);
    }
  }

  TEST_CASE("weighted oracle satisfies the weighted equations") {
    std::mt19937_64 rng(82);
    for (int t = 0; t < 3; ++t) {
      const MD a = random_rank_deficient<double>(rng, 4, 3, 2);
      const WeightPair<double> w =
          WeightPair<double>::with_n(random_hpd<double>(rng, 4), random_hpd<double>(rng, 3));
      const MD x = brute_force_wmp(a, w);
      CHECK(penrose_residuals(a, w.m(), w.n(), x).max_rho() <= 1e-8);
    }
    // Identity weights reduce the weighted oracle to the plain one.
    const MD a = random_qmatrix<double>(rng, 3, 4);
    CHECK(max_entry_dist(brute_force_wmp(a, WeightPair<double>::identity(3, 4)),
                         brute_force_mp(a)) <= 1e-9);
  }

  TEST_CASE("float conversion keeps values") {
    MR a(1, 2);
    a.set(0, 0, Quaternion<Rational>(Rational(1, 3), Rational(-5), Rational(0), Rational(7, 2)));
    const MD f = to_float(a);
    CHECK(f(0, 0).w == doctest::Approx(1.0 / 3.0));
    CHECK(f(0, 0).x == doctest::Approx(-5.0));
    CHECK(f(0, 0).z == doctest::Approx(3.5));
  }

  TEST_CASE("random generators honor their contracts") {
    std::mt19937_64 rng(83);
    const MR a = random_qmatrix<Rational>(rng, 2, 5);
    CHECK(a.rows() == 2);
    CHECK(a.cols() == 5);
    CHECK(ScalarTraits<Rational>::to_double(max_entry_norm_sq(a)) <= 4.0 * 9.0);
    CHECK(is_positive_definite(random_hpd<Rational>(rng, 3)));
    for (std::size_t r = 0; r <= 3; ++r) {
      CHECK(rank(random_rank_deficient<Rational>(rng, 3, 4, r)) == r);
    }
  }
}

TEST_SUITE("io") {
  TEST_CASE("json round trip on both backends") {
    std::mt19937_64 rng(84);
    const MR a = random_qmatrix<Rational>(rng, 3, 2);
    CHECK(io::matrix_from_json<Rational>(io::matrix_to_json(a)) == a);
    MR frac(1, 1);
    frac.set(0, 0, Quaternion<Rational>(Rational(5, 3), Rational(-7, 6)));
    CHECK(io::matrix_from_json<Rational>(io::matrix_to_json(frac)) == frac);
    const MD f = random_qmatrix<double>(rng, 2, 4);
    CHECK(io::matrix_from_json<double>(io::matrix_to_json(f)) == f);
  }

  TEST_CASE("fraction strings parse on the float backend too") {
    const auto j = nlohmann::json::parse(
        R"({"rows": 1, "cols": 1, "entries": [[["1/4", -0.5, 3, "2/5"]]]})");
    const MD a = io::matrix_from_json<double>(j);
    CHECK(a(0, 0).w == doctest::Approx(0.25));
    CHECK(a(0, 0).x == doctest::Approx(-0.5));
    CHECK(a(0, 0).z == doctest::Approx(0.4));
  }

  TEST_CASE("exact backend rejects non integer numbers") {
    const auto j = nlohmann::json::parse(
        R"({"rows": 1, "cols": 1, "entries": [[[1.5, 0, 0, 0]]]})");
    CHECK_THROWS_AS(io::matrix_from_json<Rational>(j), ParseError);
    CHECK_NOTHROW(io::matrix_from_json<double>(j));
  }

  TEST_CASE("shape and key errors carry positions") {
    using nlohmann::json;
    CHECK_THROWS_AS(io::matrix_from_json<double>(json::parse("[1]")), ParseError);
    CHECK_THROWS_AS(io::matrix_from_json<double>(
                        json::parse(R"({"rows": 1, "cols": 1})")),
                    ParseError);
    CHECK_THROWS_AS(io::matrix_from_json<double>(json::parse(
                        R"({"rows": 2, "cols": 1, "entries": [[[1,0,0,0]]]})")),
                    ParseError);
    CHECK_THROWS_AS(io::matrix_from_json<double>(json::parse(
                        R"({"rows": 1, "cols": 2, "entries": [[[1,0,0,0]]]})")),
                    ParseError);
    CHECK_THROWS_AS(io::matrix_from_json<double>(json::parse(
                        R"({"rows": 1, "cols": 1, "entries": [[[1,0,0]]]})")),
                    ParseError);
    CHECK_THROWS_AS(io::matrix_from_json<double>(json::parse(
                        R"({"rows": 0, "cols": 1, "entries": []})")),
                    ParseError);
    CHECK_THROWS_AS(io::matrix_from_json<double>(json::parse(
                        R"({"rows": 1, "cols": 1, "entries": [[[1,0,0,[]]]]})")),
                    ParseError);
    try {
      io::matrix_from_json<Rational>(json::parse(
          R"({"rows": 1, "cols": 2, "entries": [[[1,0,0,0],[0,2.5,0,0]]]})"));
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("(0, 1)") != std::string::npos);
    }
  }

  TEST_CASE("file loading reports the path on failure") {
    const std::string path = "qwmp_io_test.json";
    const qwmp::testing::Reference<Rational> ref;
    io::write_file(path, io::matrix_to_json(ref.a).dump());
    CHECK(io::load_matrix<Rational>(path) == ref.a);
    io::write_file(path, "{not json");
    try {
      io::load_matrix<Rational>(path);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(path) != std::string::npos);
    }
    std::remove(path.c_str());
    CHECK_THROWS_AS(io::load_matrix<double>("missing_file.json"), ParseError);
  }

  TEST_CASE("text rendering") {
    MR a(1, 2);
    a.set(0, 0, Quaternion<Rational>(Rational(1, 2), Rational(-1)));
    a.set(0, 1, Quaternion<Rational>::one());
    const std::string text = io::matrix_to_text(a);
    CHECK(text.find("1/2") != std::string::npos);
    CHECK(text.find('[') != std::string::npos);
    CHECK(text.back() == '\n');
  }
}
