#include "qwmp/scalar.hpp"

#include <cctype>

namespace qwmp {

namespace {

bool valid_integer(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den) : v_(0) {
  if (den == 0) throw ZeroDivision("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const std::string& s) : v_(0) {
  const std::size_t slash = s.find('/');
  const std::string num = s.substr(0, slash);
  if (!valid_integer(num)) throw ParseError("bad rational literal: " + s);
  if (slash == std::string::npos) {
    v_ = mpq_class(mpz_class(num, 10));
    return;
  }
  const std::string den = s.substr(slash + 1);
  if (!valid_integer(den) || den[0] == '-' || den[0] == '+') {
    throw ParseError("bad rational literal: " + s);
  }
  mpz_class d(den, 10);
  if (d == 0) throw ZeroDivision("rational with zero denominator: " + s);
  v_ = mpq_class(mpz_class(num, 10), d);
  v_.canonicalize();
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

}  // namespace qwmp
