#include "coverspec/rational.hpp"

#include <cctype>

#include "coverspec/errors.hpp"

namespace coverspec {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw PreconditionError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool is_integer_literal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

bool is_unsigned_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational literal");

  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    std::string digits = whole;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits.erase(0, 1);
    if (digits.empty()) digits = "0";
    if (!is_unsigned_digits(digits) || !is_unsigned_digits(frac)) {
      throw ParseError("bad decimal literal '" + s + "'");
    }
    Integer num(digits + frac, 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational q(num, den);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  }

  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!is_integer_literal(num)) throw ParseError("bad rational literal '" + s + "'");
  if (slash == std::string::npos) return Rational(Integer(num, 10));

  std::string den = s.substr(slash + 1);
  if (!is_unsigned_digits(den)) throw ParseError("bad rational literal '" + s + "'");
  Integer d(den, 10);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  Rational q(Integer(num, 10), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  Rational n = o.norm();
  if (sgn(n) == 0) throw PreconditionError("division by zero Gaussian rational");
  Rational r = (re * o.re + im * o.im) / n;
  Rational i = (im * o.re - re * o.im) / n;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussianRational parse_gaussian(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty weight literal");
  if (s.back() != 'i') return GaussianRational(parse_rational(s));

  std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not the leading one.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  std::string real_part = split == std::string::npos ? "" : body.substr(0, split);
  std::string imag_part = split == std::string::npos ? body : body.substr(split);

  Rational im;
  if (imag_part.empty() || imag_part == "+") {
    im = 1;
  } else if (imag_part == "-") {
    im = -1;
  } else {
    im = parse_rational(imag_part);
  }
  Rational re = real_part.empty() ? Rational(0) : parse_rational(real_part);
  return {re, im};
}

std::string to_string(const GaussianRational& z) {
  if (z.is_real()) return to_string(z.re);
  // Unit imaginary coefficients print as a bare i.
  std::string im = abs(z.im) == 1 ? "" : to_string(Rational(abs(z.im)));
  std::string sign = sgn(z.im) < 0 ? "-" : (sgn(z.re) == 0 ? "" : "+");
  return (sgn(z.re) == 0 ? "" : to_string(z.re)) + sign + im + "i";
}

}  // namespace coverspec
