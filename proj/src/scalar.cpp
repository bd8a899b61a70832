#include "torcx/scalar.hpp"

#include "torcx/error.hpp"

#include <cmath>

namespace torcx {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '+') s.push_back(c);
  if (s.empty()) throw DomainError("empty rational literal");
  const auto dot = s.find('.');
  Rational q;
  try {
    if (dot != std::string::npos) {
      // decimal literal: exact value of the written digits
      const bool neg = s[0] == '-';
      std::string digits = s.substr(neg ? 1 : 0);
      const auto d = digits.find('.');
      std::string int_part = digits.substr(0, d);
      std::string frac_part = digits.substr(d + 1);
      if (int_part.empty()) int_part = "0";
      BigInt num(int_part + frac_part, 10);
      q = Rational(num, ipow10(frac_part.size()));
      if (neg) q = -q;
    } else {
      q = Rational(s, 10);
    }
  } catch (const std::invalid_argument&) {
    throw DomainError("malformed rational literal '" + text + "'");
  }
  if (q.get_den() == 0) throw DomainError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

double to_double(const Rational& q) { return mpq_get_d(q.get_mpq_t()); }

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  const Rational d = o.norm_sq();
  if (sgn(d) == 0) throw DomainError("division by zero Gaussian rational");
  Rational r = (re * o.re + im * o.im) / d;
  Rational i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::string to_string(const GaussRational& z) {
  return "(" + to_string(z.re) + ", " + to_string(z.im) + ")";
}

Rational pow(const Rational& base, unsigned long exponent) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

BigInt ipow10(unsigned long exponent) { return pow(BigInt(10), exponent); }

BigInt floor(const Rational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt ceil(const Rational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt nearest(const Rational& q) { return floor(q + Rational(1, 2)); }

Rational dist_to_integer(const Rational& q) {
  Rational d = q - Rational(nearest(q));
  return abs(d);
}

double log10_abs(const BigInt& z) {
  if (sgn(z) == 0) return -INFINITY;
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log10(std::abs(mant)) + static_cast<double>(exp2) * std::log10(2.0);
}

double log10_abs(const Rational& q) {
  if (sgn(q) == 0) return -INFINITY;
  return log10_abs(q.get_num()) - log10_abs(q.get_den());
}

}  // namespace torcx
