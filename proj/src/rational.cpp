#include "svrk/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace svrk {

Rational::Rational(long n, long d) : v_(n, d) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  v_.canonicalize();
}

Rational::Rational(const mpq_class& q) : v_(q) {
  if (sgn(v_.get_den()) == 0) throw std::invalid_argument("rational with zero denominator");
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::invalid_argument("rational division by zero");
  v_ /= o.v_;
  return *this;
}

namespace {

// Parses a signed decimal literal ("-1.25", "7") into an exact rational.
mpq_class parse_decimal(const std::string& s) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    negative = (s[pos] == '-');
    ++pos;
  }
  std::string digits;
  long frac_digits = -1;
  bool saw_digit = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c == '.') {
      if (frac_digits >= 0) throw std::invalid_argument("malformed rational: " + s);
      frac_digits = 0;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      saw_digit = true;
      if (frac_digits >= 0) ++frac_digits;
    } else {
      throw std::invalid_argument("malformed rational: " + s);
    }
  }
  if (!saw_digit) throw std::invalid_argument("malformed rational: " + s);
  mpz_class num(digits.empty() ? "0" : digits, 10);
  mpz_class den(1);
  for (long i = 0; i < (frac_digits > 0 ? frac_digits : 0); ++i) den *= 10;
  mpq_class q(num, den);
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

std::string trimmed(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  const std::string s = trimmed(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const std::size_t slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_decimal(s));
  mpq_class num = parse_decimal(trimmed(s.substr(0, slash)));
  mpq_class den = parse_decimal(trimmed(s.substr(slash + 1)));
  if (sgn(den) == 0) throw std::invalid_argument("rational with zero denominator: " + text);
  mpq_class q = num / den;
  q.canonicalize();
  return Rational(q);
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

Rational pow(const Rational& base, int exp) {
  if (exp < 0) return Rational(1) / pow(base, -exp);
  Rational out(1);
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

Rational factorial_reciprocal(int k) {
  if (k < 0) throw std::invalid_argument("factorial of negative integer");
  mpz_class f(1);
  for (int i = 2; i <= k; ++i) f *= i;
  return Rational(mpq_class(mpz_class(1), f));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace svrk
