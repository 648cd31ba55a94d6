#include "coverspec/real_roots.hpp"

#include <algorithm>
#include <cstdio>

#include "coverspec/errors.hpp"

namespace coverspec {

namespace {

Rational pow2(int e) {
  Rational r(1);
  if (e >= 0) {
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return r;
}

const Rational& isolation_width() {
  static const Rational w = pow2(-40);
  return w;
}

std::size_t sign_variations(const std::vector<Polynomial>& chain, const Rational& x) {
  std::size_t v = 0;
  int last = 0;
  for (const auto& p : chain) {
    int s = p.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

// Bisect a sign-changing interval of an irreducible q (no rational roots) until narrower than width.
void bisect_to_width(const Polynomial& q, Rational& lo, Rational& hi, const Rational& width) {
  int slo = q.sign_at(lo);
  while (hi - lo >= width) {
    Rational mid = (lo + hi) / 2;
    int s = q.sign_at(mid);
    if (s == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
}

double float_hint_of(const Polynomial& q, Rational lo, Rational hi) {
  bisect_to_width(q, lo, hi, pow2(-60));
  Rational mid = (lo + hi) / 2;
  return mid.get_d();
}

// Roots of an irreducible polynomial of degree >= 2.
std::vector<AlgebraicEigenvalue> isolate_irreducible(const Polynomial& q) {
  std::vector<AlgebraicEigenvalue> out;
  auto chain = sturm_sequence(q);
  Rational b = cauchy_bound(q);
  std::vector<std::pair<Rational, Rational>> stack{{-b, b}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    std::size_t c = sturm_count(chain, lo, hi);
    if (c == 0) continue;
    if (c == 1) {
      bisect_to_width(q, lo, hi, isolation_width());
      out.push_back({q, lo, hi, float_hint_of(q, lo, hi)});
      continue;
    }
    Rational mid = (lo + hi) / 2;
    stack.emplace_back(mid, hi);
    stack.emplace_back(lo, mid);
  }
  return out;
}

// Halve the interval once.
void refine_step(AlgebraicEigenvalue& x) {
  if (x.is_rational()) {
    Rational r = x.rational_value();
    Rational half = (x.hi - x.lo) / 4;
    x.lo = r - half;
    x.hi = r + half;
    return;
  }
  bisect_to_width(x.minpoly, x.lo, x.hi, (x.hi - x.lo) * Rational(3, 4));
}

bool overlaps(const AlgebraicEigenvalue& a, const AlgebraicEigenvalue& b) { return a.lo < b.hi && b.lo < a.hi; }

}  // namespace

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  std::vector<Polynomial> chain;
  if (p.is_zero()) return chain;
  auto normalize = [](const Polynomial& x) {
    Rational s = abs(x.leading());
    Polynomial out = x;
    return out * Polynomial(Rational(1) / s);
  };
  chain.push_back(normalize(p));
  Polynomial d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(normalize(d));
  for (;;) {
    Polynomial r = chain[chain.size() - 2] % chain.back();
    if (r.is_zero()) break;
    chain.push_back(normalize(-r));
  }
  return chain;
}

std::size_t sturm_count(const std::vector<Polynomial>& chain, const Rational& a, const Rational& b) {
  std::size_t va = sign_variations(chain, a);
  std::size_t vb = sign_variations(chain, b);
  return va >= vb ? va - vb : 0;
}

Rational cauchy_bound(const Polynomial& p) {
  if (p.degree() < 1) return 1;
  Rational m(0);
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rational(abs(p.coeff(k) / p.leading())));
  return m + 1;
}

std::size_t real_root_count(const Polynomial& p) {
  if (p.degree() < 1) return 0;
  Rational b = cauchy_bound(p);
  return sturm_count(sturm_sequence(p), -b, b);
}

AlgebraicEigenvalue make_rational_root(const Rational& r) {
  Rational eps = pow2(-42);
  return {Polynomial::linear(r), r - eps, r + eps, r.get_d()};
}

std::vector<RealRoot> isolate_real_roots(const Polynomial& p) {
  if (p.is_zero()) throw PreconditionError("roots of the zero polynomial");
  std::vector<RealRoot> out;
  for (const Factor& f : factor(p)) {
    if (f.poly.degree() == 1) {
      out.push_back({make_rational_root(-f.poly.coeff(0)), f.multiplicity});
      continue;
    }
    for (auto& r : isolate_irreducible(f.poly)) out.push_back({std::move(r), f.multiplicity});
  }
  std::sort(out.begin(), out.end(),
            [](const RealRoot& a, const RealRoot& b) { return compare(a.value, b.value) < 0; });
  return out;
}

void refine(AlgebraicEigenvalue& x, const Rational& width) {
  if (x.is_rational()) {
    if (x.hi - x.lo < width) return;
    Rational r = x.rational_value();
    x.lo = r - width / 4;
    x.hi = r + width / 4;
    return;
  }
  bisect_to_width(x.minpoly, x.lo, x.hi, width);
}

int compare(const AlgebraicEigenvalue& a0, const AlgebraicEigenvalue& b0) {
  if (a0.is_rational() && b0.is_rational()) return cmp(a0.rational_value(), b0.rational_value());
  if (a0.minpoly == b0.minpoly && overlaps(a0, b0)) {
    Rational lo = std::max(a0.lo, b0.lo);
    Rational hi = std::min(a0.hi, b0.hi);
    if (a0.minpoly.sign_at(lo) * a0.minpoly.sign_at(hi) < 0) return 0;
  }
  AlgebraicEigenvalue a = a0;
  AlgebraicEigenvalue b = b0;
  while (overlaps(a, b)) {
    refine_step(a);
    refine_step(b);
  }
  return a.hi <= b.lo ? -1 : 1;
}

bool operator==(const AlgebraicEigenvalue& a, const AlgebraicEigenvalue& b) {
  if (a.minpoly != b.minpoly) return false;
  return compare(a, b) == 0;
}

bool is_root_of(const AlgebraicEigenvalue& x, const Polynomial& p) { return divides(x.minpoly, p); }

Rational distance_lower_bound(AlgebraicEigenvalue a, AlgebraicEigenvalue b) {
  int c = compare(a, b);
  if (c == 0) return 0;
  if (c > 0) std::swap(a, b);
  for (;;) {
    Rational gap = b.lo - a.hi;
    Rational width = std::max(a.hi - a.lo, b.hi - b.lo);
    if (sgn(gap) > 0 && width * 64 <= gap) return gap;
    refine_step(a);
    refine_step(b);
  }
}

std::string to_string(const AlgebraicEigenvalue& x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x.float_hint);
  return "{minpoly: " + to_string(x.minpoly) + ", interval: (" + to_string(x.lo) + ", " + to_string(x.hi) +
         "), float: " + buf + "}";
}

}  // namespace coverspec
