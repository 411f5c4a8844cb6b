#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "qwmp/scalar.hpp"

namespace qwmp {

/// Quaternion w + x*i + y*j + z*k over a real scalar backend R, with
/// i*i = j*j = k*k = -1 and i*j = k.
template <class R>
struct Quaternion {
  R w{ScalarTraits<R>::zero()};
  R x{ScalarTraits<R>::zero()};
  R y{ScalarTraits<R>::zero()};
  R z{ScalarTraits<R>::zero()};

  Quaternion() = default;
  Quaternion(R w_, R x_ = ScalarTraits<R>::zero(),
             R y_ = ScalarTraits<R>::zero(), R z_ = ScalarTraits<R>::zero())
      : w(std::move(w_)), x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

  static Quaternion zero() { return Quaternion(); }
  static Quaternion one() { return Quaternion(ScalarTraits<R>::one()); }
  static Quaternion from_ints(long a0, long a1, long a2, long a3) {
    return Quaternion(ScalarTraits<R>::from_int(a0), ScalarTraits<R>::from_int(a1),
                      ScalarTraits<R>::from_int(a2), ScalarTraits<R>::from_int(a3));
  }

  bool is_zero() const {
    return ScalarTraits<R>::is_zero(w) && ScalarTraits<R>::is_zero(x) &&
           ScalarTraits<R>::is_zero(y) && ScalarTraits<R>::is_zero(z);
  }
  bool is_real() const {
    return ScalarTraits<R>::is_zero(x) && ScalarTraits<R>::is_zero(y) &&
           ScalarTraits<R>::is_zero(z);
  }

  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return Quaternion(a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z);
  }
  friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return Quaternion(a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z);
  }
  Quaternion operator-() const { return Quaternion(-w, -x, -y, -z); }
  Quaternion& operator+=(const Quaternion& o) { return *this = *this + o; }
  Quaternion& operator-=(const Quaternion& o) { return *this = *this - o; }

  /// Hamilton product; order matters.
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return Quaternion(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w);
  }
  Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }

  friend Quaternion operator*(const Quaternion& a, const R& s) {
    return Quaternion(a.w * s, a.x * s, a.y * s, a.z * s);
  }
  friend Quaternion operator*(const R& s, const Quaternion& a) { return a * s; }

  friend bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend bool operator!=(const Quaternion& a, const Quaternion& b) {
    return !(a == b);
  }
};

template <class R>
Quaternion<R> conj(const Quaternion<R>& q) {
  return Quaternion<R>(q.w, -q.x, -q.y, -q.z);
}

/// Squared Euclidean norm; exact on the rational backend.
template <class R>
R norm_sq(const Quaternion<R>& q) {
  return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
}

template <class R>
double norm(const Quaternion<R>& q) {
  return std::sqrt(ScalarTraits<R>::to_double(norm_sq(q)));
}

/// Multiplicative inverse conj(q) / |q|^2. Throws ZeroDivision at zero.
template <class R>
Quaternion<R> inv(const Quaternion<R>& q) {
  const R n = norm_sq(q);
  if (ScalarTraits<R>::is_zero(n)) throw ZeroDivision("inverse of zero quaternion");
  const R r = ScalarTraits<R>::recip(n);
  return conj(q) * r;
}

template <class R>
bool approx_equal(const Quaternion<R>& a, const Quaternion<R>& b,
                  double tol = kDefaultTol) {
  if constexpr (ScalarTraits<R>::is_exact) {
    return a == b;
  } else {
    const double scale = 1.0 + std::max(norm(a), norm(b));
    return norm(a - b) <= tol * scale;
  }
}

template <class R>
std::string to_string(const Quaternion<R>& q) {
  const auto comp = [](const R& v) {
    if constexpr (ScalarTraits<R>::is_exact) {
      return v.str();
    } else {
      std::ostringstream os;
      os << v;
      return os.str();
    }
  };
  std::ostringstream os;
  os << comp(q.w);
  const char* units[3] = {"i", "j", "k"};
  const R* parts[3] = {&q.x, &q.y, &q.z};
  for (int t = 0; t < 3; ++t) {
    std::string s = comp(*parts[t]);
    if (!s.empty() && s[0] == '-') {
      os << " - " << s.substr(1) << units[t];
    } else {
      os << " + " << s << units[t];
    }
  }
  return os.str();
}

}  // namespace qwmp
