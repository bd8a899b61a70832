#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

namespace torcx {

using BigInt = mpz_class;
using Rational = mpq_class;
using Complex = std::complex<double>;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

/// Complex number with exact rational real and imaginary parts.
struct GaussRational {
  Rational re{0};
  Rational im{0};

  GaussRational() = default;
  GaussRational(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }
  GaussRational(long r) : re(r), im(0) {}

  static GaussRational imag_unit() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  GaussRational conj() const { return {re, -im}; }
  Rational norm_sq() const { return re * re + im * im; }
  Complex to_complex() const { return {to_double(re), to_double(im)}; }

  GaussRational& operator+=(const GaussRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

std::string to_string(const GaussRational& z);

/// Per-scalar-mode operations. Every generic algorithm in the library is
/// written against this interface so that exact and floating modes share code.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  using Magnitude = double;  // ordered quantity used for pivoting
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex i() { return {0.0, 1.0}; }
  static Complex from_int(std::int64_t v) { return {static_cast<double>(v), 0.0}; }
  static Complex from_rational(const Rational& q) { return {to_double(q), 0.0}; }
  static Complex from_gauss(const GaussRational& z) { return z.to_complex(); }
  static double abs(const Complex& z) { return std::abs(z); }
  static double magnitude(const Complex& z) { return std::norm(z); }
  static Complex to_complex(const Complex& z) { return z; }
  static bool is_literal_zero(const Complex& z) { return z.real() == 0.0 && z.imag() == 0.0; }
  /// Zero test relative to `scale` (the largest magnitude in play).
  static bool is_zero(const Complex& z, double scale, double rel_tol) {
    return std::abs(z) <= rel_tol * std::max(scale, 1.0);
  }
  static Complex conj(const Complex& z) { return std::conj(z); }
};

template <>
struct ScalarTraits<GaussRational> {
  static constexpr bool exact = true;
  using Magnitude = Rational;
  static GaussRational zero() { return {}; }
  static GaussRational one() { return GaussRational(1L); }
  static GaussRational i() { return GaussRational::imag_unit(); }
  static GaussRational from_int(std::int64_t v) { return GaussRational(Rational(static_cast<long>(v))); }
  static GaussRational from_rational(const Rational& q) { return GaussRational(q); }
  static GaussRational from_gauss(const GaussRational& z) { return z; }
  static double abs(const GaussRational& z) { return std::abs(z.to_complex()); }
  static Rational magnitude(const GaussRational& z) { return z.norm_sq(); }
  static Complex to_complex(const GaussRational& z) { return z.to_complex(); }
  static bool is_literal_zero(const GaussRational& z) { return z.is_zero(); }
  static bool is_zero(const GaussRational& z, double, double) { return z.is_zero(); }
  static GaussRational conj(const GaussRational& z) { return z.conj(); }
};

/// Exact integer power of a rational.
Rational pow(const Rational& base, unsigned long exponent);
BigInt pow(const BigInt& base, unsigned long exponent);
BigInt ipow10(unsigned long exponent);

/// floor/ceil/round-half-up of a rational as big integers.
BigInt floor(const Rational& q);
BigInt ceil(const Rational& q);
BigInt nearest(const Rational& q);

/// Distance of q to the nearest integer.
Rational dist_to_integer(const Rational& q);

/// log10 of a positive rational, accurate for arbitrarily large/small values.
double log10_abs(const Rational& q);
double log10_abs(const BigInt& z);

}  // namespace torcx
