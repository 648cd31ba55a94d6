#include <doctest.h>

#include <random>

#include "coverspec/polynomial.hpp"
#include "coverspec/real_roots.hpp"
#include "support.hpp"

using namespace coverspec;

namespace {

Polynomial P(const char* s) { return parse_polynomial(s); }

Polynomial random_poly(std::mt19937_64& rng, int degree) {
  std::vector<Rational> c;
  for (int k = 0; k <= degree; ++k) c.push_back(testing::random_rational(rng, 6, 3));
  if (sgn(c.back()) == 0) c.back() = 1;
  return Polynomial(c);
}

// Rational roots by the rational root theorem, for the irreducibility oracle.
bool has_rational_root(const Polynomial& p) {
  Integer lcm = 1;
  for (const auto& c : p.coeffs()) lcm = lcm * c.get_den() / gcd(lcm, c.get_den());
  std::vector<Integer> z;
  for (const auto& c : p.coeffs()) z.push_back(Integer(c * Rational(lcm)));
  auto divisors = [](Integer n) {
    std::vector<Integer> d;
    n = abs(n);
    for (Integer k = 1; k * k <= n; ++k) {
      if (n % k == 0) {
        d.push_back(k);
        d.push_back(n / k);
      }
    }
    return d;
  };
  if (z.front() == 0) return true;
  for (const auto& num : divisors(z.front())) {
    for (const auto& den : divisors(z.back())) {
      for (int s : {1, -1}) {
        if (p.eval(make_rational(s * num, den)) == 0) return true;
      }
    }
  }
  return false;
}

Polynomial expand(const std::vector<Factor>& fs) {
  Polynomial out(std::vector<Rational>{Rational(1)});
  for (const auto& f : fs) out = out * pow(f.poly, f.multiplicity);
  return out;
}

}  // namespace

TEST_CASE("printing and parsing") {
  CHECK(to_string(P("1 - 3 z^2 + z^4")) == "1 - 3 z^2 + z^4");
  CHECK(to_string(P("-z + 1/2 z^3")) == "-z + 1/2 z^3");
  CHECK(to_string(P("-2")) == "-2");
  CHECK(P("z^2 - 1") == P("-1 + z^2"));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    Polynomial p = random_poly(rng, 5);
    CHECK(parse_polynomial(to_string(p)) == p);
  }
}

TEST_CASE("division and gcd") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 30; ++i) {
    Polynomial a = random_poly(rng, 6), b = random_poly(rng, 3), c = random_poly(rng, 2);
    auto [q, r] = divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
    Polynomial g = gcd(a * c, b * c);
    CHECK(divides(c, g));
    CHECK(divides(g, a * c));
    CHECK(divides(g, b * c));
    CHECK(g.coeffs().back() == 1);
  }
  CHECK(P("6 z + 3 z^2").eval(Rational(2)) == 24);
  CHECK(P("z^3").derivative() == P("3 z^2"));
}

TEST_CASE("squarefree decomposition") {
  Polynomial p = pow(P("z - 1"), 3) * pow(P("z^2 + 1"), 2) * P("z + 5");
  auto sf = squarefree_decomposition(p);
  CHECK(expand(sf) == p.monic());
  for (const auto& f : sf) CHECK(gcd(f.poly, f.poly.derivative()).degree() == 0);
}

TEST_CASE("factorization over the rationals") {
  CHECK(factor(P("z^4 - 10 z^2 + 1")).size() == 1);  // irreducible, reducible modulo every prime
  CHECK(factor(P("z^4 + 1")).size() == 1);
  auto f = factor(P("z^4 - 5 z^2 + 6"));
  REQUIRE(f.size() == 2);
  CHECK(f[0].poly == P("z^2 - 3"));
  CHECK(f[1].poly == P("z^2 - 2"));

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    Polynomial p = random_poly(rng, 2) * random_poly(rng, 3) * pow(P("z - 1/2"), 2);
    auto fs = factor(p);
    CHECK(expand(fs) == p.monic());
    for (const auto& fc : fs) {
      CHECK(fc.poly.coeffs().back() == 1);
      if (fc.poly.degree() >= 2 && fc.poly.degree() <= 3) CHECK_FALSE(has_rational_root(fc.poly));
    }
  }
  // Product of many linear and quadratic factors; recombination must find them all.
  Polynomial big = P("z^2 - 2") * P("z^2 - 3") * P("z^2 - 5") * P("z - 7") * P("z^2 + z + 1") * P("z + 2");
  CHECK(factor(big).size() == 6);
  CHECK(expand(factor(big)) == big);
}

TEST_CASE("real root isolation") {
  Polynomial p = P("z^4 - 10 z^2 + 1");
  auto roots = isolate_real_roots(p);
  REQUIRE(roots.size() == 4);
  double expected[] = {-std::sqrt(2.0) - std::sqrt(3.0), std::sqrt(2.0) - std::sqrt(3.0), std::sqrt(3.0) - std::sqrt(2.0),
                       std::sqrt(2.0) + std::sqrt(3.0)};
  for (int i = 0; i < 4; ++i) {
    CHECK(roots[i].value.float_hint == doctest::Approx(expected[i]).epsilon(1e-14));
    CHECK(roots[i].value.lo < roots[i].value.hi);
    CHECK(roots[i].value.minpoly.sign_at(roots[i].value.lo) * roots[i].value.minpoly.sign_at(roots[i].value.hi) <= 0);
  }
  for (int i = 0; i + 1 < 4; ++i) CHECK(compare(roots[i].value, roots[i + 1].value) < 0);

  auto mult = isolate_real_roots(pow(P("z^2 - 2"), 3) * P("z"));
  REQUIRE(mult.size() == 3);
  CHECK(mult[0].multiplicity == 3);
  CHECK(mult[1].multiplicity == 1);
  CHECK(mult[1].value.is_rational());
  CHECK(mult[1].value.rational_value() == 0);

  CHECK(real_root_count(P("z^2 + 1")) == 0);
  CHECK(isolate_real_roots(P("z^2 + 1")).empty());
}

TEST_CASE("algebraic number equality across representations") {
  auto a = isolate_real_roots(P("z^2 - 2"));
  auto b = isolate_real_roots(P("z^4 - 4") * P("z - 9"));
  REQUIRE(a.size() == 2);
  REQUIRE(b.size() == 3);
  CHECK(a[1].value == b[1].value);
  CHECK(a[0].value == b[0].value);
  CHECK(a[1].value != b[2].value);
  CHECK(is_root_of(a[1].value, P("z^4 - 4")));
  CHECK_FALSE(is_root_of(a[1].value, P("z^2 - 3")));
  CHECK(b[2].value == make_rational_root(Rational(9)));
}

TEST_CASE("certified distance lower bounds") {
  auto s2 = isolate_real_roots(P("z^2 - 2"))[1].value;
  auto s3 = isolate_real_roots(P("z^2 - 3"))[1].value;
  Rational lb = distance_lower_bound(s2, s3);
  double truth = std::sqrt(3.0) - std::sqrt(2.0);
  CHECK(to_double(lb) <= truth);
  CHECK(to_double(lb) >= truth * (1 - 1.0 / 32));
  AlgebraicEigenvalue x = s2;
  refine(x, make_rational(1, Integer(1) << 80));
  CHECK(x.hi - x.lo <= make_rational(1, Integer(1) << 80));
  CHECK(x == s2);
}
