#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace svrk {

// Exact rational scalar backed by GMP. Kept canonical at all times:
// gcd(numerator, denominator) = 1 and denominator > 0.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long n, long d);
  explicit Rational(const mpq_class& q);
  explicit Rational(const mpz_class& z) : v_(z) {}

  // Accepts "7", "-3/4", "0.05", "1.01/24", "-1.1/720". Decimal parts are
  // converted exactly (0.05 -> 1/20). Throws std::invalid_argument on
  // malformed input or zero denominator.
  static Rational parse(const std::string& text);

  const mpq_class& raw() const { return v_; }
  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  double to_double() const { return v_.get_d(); }

  // "num/den", or just "num" when the denominator is 1.
  std::string str() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

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

 private:
  mpq_class v_;
};

Rational abs(const Rational& a);
Rational pow(const Rational& base, int exp);

// 1/k! as an exact rational.
Rational factorial_reciprocal(int k);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace svrk
