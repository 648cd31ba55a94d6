#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coverspec/rational.hpp"

namespace coverspec {

// Univariate polynomial over Q in the variable z. Coefficients are stored in
// increasing degree with no trailing zeros; the zero polynomial is empty.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(const Rational& c);  // NOLINT: constants embed implicitly
  Polynomial(int c);              // NOLINT

  static Polynomial z();
  static Polynomial monomial(std::size_t degree, const Rational& c = 1);
  // (z - r)
  static Polynomial linear(const Rational& root);

  bool is_zero() const { return c_.empty(); }
  // Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& coeff(std::size_t k) const;
  const Rational& leading() const { return c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational eval(const Rational& x) const;
  int sign_at(const Rational& x) const { return sgn(eval(x)); }
  double eval(double x) const;

  Polynomial derivative() const;
  Polynomial monic() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator-(const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  void trim();
  std::vector<Rational> c_;
};

// a = q*b + r with deg r < deg b. Throws on b == 0.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
Polynomial operator/(const Polynomial& a, const Polynomial& b);
Polynomial operator%(const Polynomial& a, const Polynomial& b);
bool divides(const Polynomial& d, const Polynomial& p);

// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
Polynomial pow(const Polynomial& p, unsigned k);

struct Factor {
  Polynomial poly;
  unsigned multiplicity = 0;
};

// Yun's algorithm: p = lc * prod f_k^k with f_k monic, squarefree, pairwise coprime.
std::vector<Factor> squarefree_decomposition(const Polynomial& p);

// Factorization into monic irreducibles over Q, sorted by (degree, coefficients).
std::vector<Factor> factor(const Polynomial& p);

// Irreducible factors of a squarefree polynomial (Zassenhaus).
std::vector<Polynomial> factor_squarefree(const Polynomial& p);

// "c0 + c1 z + c2 z^2 + ... + z^n", zero terms omitted.
std::string to_string(const Polynomial& p);
Polynomial parse_polynomial(std::string_view text);

}  // namespace coverspec
