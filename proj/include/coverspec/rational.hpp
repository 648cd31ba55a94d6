#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace coverspec {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p", "p/q", "-p/q" (optionally a decimal "1.25") into a canonical rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
// num/den in canonical form.
Rational make_rational(const Integer& num, const Integer& den);
double to_double(const Rational& q);

// Exact x + iy with rational x, y.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)), im(0) {}  // NOLINT: implicit by design of the field embedding
  GaussianRational(int r) : re(r), im(0) {}                  // NOLINT
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  GaussianRational conj() const { return {re, -im}; }
  // |z|^2, always rational.
  Rational norm() const { return re * re + im * im; }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

// Weight literal grammar: "<x/y>", "<x/y>+<x/y>i", "<x/y>-<x/y>i", "<x/y>i", "i", "-i".
GaussianRational parse_gaussian(std::string_view text);
// Canonical form: "x" when real, otherwise "x+yi" / "x-yi" (y printed without sign).
std::string to_string(const GaussianRational& z);

}  // namespace coverspec
