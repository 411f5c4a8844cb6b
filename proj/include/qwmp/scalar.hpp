#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "qwmp/config.hpp"
#include "qwmp/errors.hpp"

namespace qwmp {

/// Arbitrary-precision rational scalar, always kept in canonical reduced
/// form with a positive denominator. Arithmetic is exact; division by
/// zero throws ZeroDivision instead of trapping.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}                // NOLINT(google-explicit-constructor)
  Rational(long n) : v_(static_cast<long>(n)) {}  // NOLINT
  Rational(long num, long den);
  /// Parses "p", "-p", or "p/q" in base 10. Throws ParseError on anything
  /// else and ZeroDivision when q is zero.
  explicit Rational(const std::string& s);

  Rational(const Rational&) = default;
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational&) = default;
  Rational& operator=(Rational&&) noexcept = default;

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.v_ + b.v_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.v_ - b.v_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.v_ * b.v_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.v_ == 0) throw ZeroDivision("rational division by zero");
    return Rational(a.v_ / b.v_);
  }
  Rational operator-() const { return Rational(-v_); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return a.v_ != b.v_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.v_ < b.v_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.v_ <= b.v_;
  }
  friend bool operator>(const Rational& a, const Rational& b) {
    return a.v_ > b.v_;
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return a.v_ >= b.v_;
  }

  bool is_zero() const { return v_ == 0; }
  int sign() const { return sgn(v_); }
  Rational abs() const { return Rational(::abs(v_)); }
  double to_double() const { return v_.get_d(); }

  /// Canonical decimal rendering: "p" when integral, "p/q" otherwise.
  std::string str() const;

 private:
  explicit Rational(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

/// Uniform access to the two scalar backends. The rational backend is
/// exact; the double backend compares through relative tolerances.
template <class R>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool is_exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(long n) { return static_cast<double>(n); }
  static double to_double(double x) { return x; }
  static double abs(double x) { return std::fabs(x); }
  static bool is_zero(double x) { return x == 0.0; }
  static double recip(double x) {
    if (x == 0.0) throw ZeroDivision("scalar division by zero");
    return 1.0 / x;
  }
  static const char* name() { return "float"; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool is_exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long n) { return Rational(n); }
  static double to_double(const Rational& x) { return x.to_double(); }
  static Rational abs(const Rational& x) { return x.abs(); }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static Rational recip(const Rational& x) { return Rational(1) / x; }
  static const char* name() { return "rational"; }
};

/// Exact equality on the rational backend; relative comparison on doubles.
inline bool approx_equal(double a, double b, double tol = kDefaultTol) {
  return std::fabs(a - b) <= tol * (1.0 + std::max(std::fabs(a), std::fabs(b)));
}
inline bool approx_equal(const Rational& a, const Rational& b,
                         double /*tol*/ = kDefaultTol) {
  return a == b;
}

}  // namespace qwmp
