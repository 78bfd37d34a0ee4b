#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ff {

/// Arbitrary-precision rational, always in canonical form:
/// denominator > 0, gcd(|num|, den) = 1, zero is 0/1.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integer literals
  Rational(long n, long d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  /// Parses "a", "-a", or "a/b". Throws on malformed input or b = 0.
  static Rational from_string(const std::string& s);

  /// Exact value of a decimal literal such as "0.25" or "-1.5".
  static Rational from_decimal_string(const std::string& s);

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }
  std::string to_string() const {
    return v_.get_den() == 1 ? v_.get_num().get_str()
                             : v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }
  std::string numerator_str() const { return v_.get_num().get_str(); }
  std::string denominator_str() const { return v_.get_den().get_str(); }

  const mpq_class& raw() const { return v_; }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

 private:
  mpq_class v_;
};

inline Rational Rational::from_string(const std::string& s) {
  if (s.find('.') != std::string::npos) return from_decimal_string(s);
  try {
    mpq_class v(s, 10);
    if (v.get_den() == 0) throw std::invalid_argument("zero denominator");
    v.canonicalize();
    return Rational(v);
  } catch (const std::exception&) {
    throw std::invalid_argument("Rational: cannot parse '" + s + "'");
  }
}

inline Rational Rational::from_decimal_string(const std::string& s) {
  auto dot = s.find('.');
  std::string head = s.substr(0, dot);
  std::string tail = s.substr(dot + 1);
  if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("Rational: cannot parse decimal '" + s + "'");
  bool neg = !head.empty() && head[0] == '-';
  if (!head.empty() && (head[0] == '+' || head[0] == '-')) head = head.substr(1);
  if (head.empty()) head = "0";
  if (head.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("Rational: cannot parse decimal '" + s + "'");
  mpz_class num(head + tail, 10);
  mpz_class den(1);
  for (size_t i = 0; i < tail.size(); ++i) den *= 10;
  mpq_class v(num, den);
  v.canonicalize();
  if (neg) v = -v;
  return Rational(v);
}

}  // namespace ff
