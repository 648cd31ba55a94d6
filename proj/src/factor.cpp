// Factorization over Q of squarefree polynomials: reduce to a primitive
// integer polynomial, factor modulo a small prime (Cantor-Zassenhaus), Hensel
// lift to a modulus above the Mignotte bound, then recombine lifted factors.

#include <algorithm>
#include <optional>
#include <random>
#include <tuple>

#include "coverspec/errors.hpp"
#include "coverspec/polynomial.hpp"

namespace coverspec {

namespace {

using ZPoly = std::vector<Integer>;  // increasing degree, trimmed
using FpPoly = std::vector<std::uint64_t>;

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x]

struct Fp {
  std::uint64_t p;

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    for (a %= p; e; e >>= 1, a = mul(a, a)) {
      if (e & 1) r = mul(r, a);
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }

  static void trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
  }

  FpPoly reduce(const ZPoly& f) const {
    FpPoly out(f.size());
    Integer pz(static_cast<unsigned long>(p));
    for (std::size_t k = 0; k < f.size(); ++k) {
      Integer r = f[k] % pz;
      if (r < 0) r += pz;
      out[k] = r.get_ui();
    }
    trim(out);
    return out;
  }

  FpPoly monic(FpPoly f) const {
    if (f.empty()) return f;
    std::uint64_t li = inv(f.back());
    for (auto& c : f) c = mul(c, li);
    return f;
  }

  FpPoly sub(FpPoly a, const FpPoly& b) const {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (std::size_t k = 0; k < b.size(); ++k) a[k] = sub(a[k], b[k]);
    trim(a);
    return a;
  }

  FpPoly add(FpPoly a, const FpPoly& b) const {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (std::size_t k = 0; k < b.size(); ++k) a[k] = add(a[k], b[k]);
    trim(a);
    return a;
  }

  FpPoly mul(const FpPoly& a, const FpPoly& b) const {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
  }

  // Returns (q, r) with a = q b + r.
  std::pair<FpPoly, FpPoly> divmod(FpPoly a, const FpPoly& b) const {
    if (b.empty()) throw PreconditionError("division by zero in F_p[x]");
    if (a.size() < b.size()) return {{}, a};
    std::uint64_t li = inv(b.back());
    std::size_t db = b.size() - 1;
    FpPoly q(a.size() - db, 0);
    for (std::size_t k = a.size(); k-- > db;) {
      if (a[k] == 0) continue;
      std::uint64_t f = mul(a[k], li);
      q[k - db] = f;
      for (std::size_t j = 0; j <= db; ++j) a[k - db + j] = sub(a[k - db + j], mul(f, b[j]));
    }
    a.resize(db);
    trim(a);
    trim(q);
    return {q, a};
  }

  FpPoly mod(const FpPoly& a, const FpPoly& b) const { return divmod(a, b).second; }

  FpPoly gcd(FpPoly a, FpPoly b) const {
    while (!b.empty()) {
      FpPoly r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  // Returns (g, s, t) with s a + t b = g monic.
  std::tuple<FpPoly, FpPoly, FpPoly> xgcd(FpPoly a, FpPoly b) const {
    FpPoly s0{1}, s1{}, t0{}, t1{1};
    while (!b.empty()) {
      auto [q, r] = divmod(a, b);
      a = std::move(b);
      b = std::move(r);
      FpPoly s2 = sub(s0, mul(q, s1));
      FpPoly t2 = sub(t0, mul(q, t1));
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    std::uint64_t li = inv(a.back());
    for (auto* v : {&a, &s0, &t0}) {
      for (auto& c : *v) c = mul(c, li);
    }
    return {a, s0, t0};
  }

  FpPoly derivative(const FpPoly& f) const {
    if (f.size() <= 1) return {};
    FpPoly d(f.size() - 1);
    for (std::size_t k = 1; k < f.size(); ++k) d[k - 1] = mul(f[k], k % p);
    trim(d);
    return d;
  }

  FpPoly powmod(FpPoly base, const Integer& e, const FpPoly& m) const {
    FpPoly r{1};
    base = mod(base, m);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      r = mod(mul(r, r), m);
      if (mpz_tstbit(e.get_mpz_t(), i)) r = mod(mul(r, base), m);
    }
    return r;
  }
};

// Equal-degree splitting of a monic squarefree f whose irreducible factors all have degree d.
void equal_degree_split(const Fp& F, const FpPoly& f, std::size_t d, std::mt19937_64& rng,
                        std::vector<FpPoly>& out) {
  std::size_t n = f.size() - 1;
  if (n == d) {
    out.push_back(f);
    return;
  }
  Integer q;
  mpz_ui_pow_ui(q.get_mpz_t(), F.p, d);
  Integer e = (q - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> coef(0, F.p - 1);
  for (;;) {
    FpPoly a(n);
    for (auto& c : a) c = coef(rng);
    Fp::trim(a);
    if (a.size() <= 1) continue;
    FpPoly g = F.gcd(f, a);
    if (g.size() > 1 && g.size() < f.size()) {
      equal_degree_split(F, g, d, rng, out);
      equal_degree_split(F, F.divmod(f, g).first, d, rng, out);
      return;
    }
    FpPoly b = F.sub(F.powmod(a, e, f), FpPoly{1});
    g = F.gcd(f, b);
    if (g.size() > 1 && g.size() < f.size()) {
      equal_degree_split(F, g, d, rng, out);
      equal_degree_split(F, F.divmod(f, g).first, d, rng, out);
      return;
    }
  }
}

// Monic irreducible factors of a monic squarefree f over F_p (p odd).
std::vector<FpPoly> factor_mod_p(const Fp& F, FpPoly f) {
  std::vector<FpPoly> out;
  std::mt19937_64 rng(0x5eed + F.p);
  FpPoly x{0, 1};
  FpPoly h = x;
  Integer p(static_cast<unsigned long>(F.p));
  for (std::size_t d = 1; f.size() > 1 && 2 * d <= f.size() - 1; ++d) {
    h = F.powmod(h, p, f);
    FpPoly g = F.gcd(f, F.sub(h, x));
    if (g.size() > 1) {
      equal_degree_split(F, g, d, rng, out);
      f = F.divmod(f, g).first;
      h = F.mod(h, f);
    }
  }
  if (f.size() > 1) out.push_back(F.monic(f));
  return out;
}

// ---------------------------------------------------------------------------
// Integer polynomials

void ztrim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  ztrim(r);
  return r;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), Integer(0));
  for (std::size_t k = 0; k < b.size(); ++k) a[k] -= b[k];
  ztrim(a);
  return a;
}

ZPoly zadd(ZPoly a, const ZPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), Integer(0));
  for (std::size_t k = 0; k < b.size(); ++k) a[k] += b[k];
  ztrim(a);
  return a;
}

// Reduce coefficients into [0, m).
ZPoly zmod(ZPoly a, const Integer& m) {
  for (auto& c : a) {
    c %= m;
    if (c < 0) c += m;
  }
  ztrim(a);
  return a;
}

ZPoly zsymmetric(ZPoly a, const Integer& m) {
  Integer half = m / 2;
  for (auto& c : a) {
    c %= m;
    if (c < 0) c += m;
    if (c > half) c -= m;
  }
  ztrim(a);
  return a;
}

ZPoly from_fp(const FpPoly& f) {
  ZPoly out;
  for (auto c : f) out.emplace_back(static_cast<unsigned long>(c));
  return out;
}

Integer content(const ZPoly& f) {
  Integer g(0);
  for (const auto& c : f) g = gcd(g, c);
  return g;
}

ZPoly primitive(ZPoly f) {
  Integer c = content(f);
  if (c == 0) return f;
  if (f.back() < 0) c = -c;
  for (auto& x : f) x /= c;
  return f;
}

ZPoly to_zpoly(const Polynomial& p) {
  Integer l(1);
  for (const auto& c : p.coeffs()) l = lcm(l, Integer(c.get_den()));
  ZPoly out;
  for (const auto& c : p.coeffs()) out.push_back(Integer(c.get_num() * (l / c.get_den())));
  return primitive(std::move(out));
}

Polynomial to_polynomial(const ZPoly& f) {
  std::vector<Rational> c;
  for (const auto& x : f) c.emplace_back(x);
  return Polynomial(std::move(c)).monic();
}

// Exact division over Z; returns false if b does not divide a.
bool zdivides(const ZPoly& a, const ZPoly& b, ZPoly& quotient) {
  if (a.size() < b.size()) return false;
  ZPoly r = a;
  std::size_t db = b.size() - 1;
  ZPoly q(a.size() - db, Integer(0));
  for (std::size_t k = r.size(); k-- > db;) {
    if (r[k] == 0) continue;
    if (r[k] % b[db] != 0) return false;
    Integer f = r[k] / b[db];
    q[k - db] = f;
    for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= f * b[j];
  }
  for (std::size_t k = 0; k < db; ++k) {
    if (r[k] != 0) return false;
  }
  ztrim(q);
  quotient = std::move(q);
  return true;
}

// ---------------------------------------------------------------------------
// Hensel lifting

// Given f = g h (mod p) with g monic and gcd(g, h) = 1 mod p, lift g, h so that
// f = g h (mod p^k). Linear lifting, one p-adic digit per step.
void hensel_lift_pair(const Fp& F, const ZPoly& f, ZPoly& g, ZPoly& h, unsigned k) {
  auto [one, s, t] = F.xgcd(F.reduce(g), F.reduce(h));
  Integer pz(static_cast<unsigned long>(F.p));
  Integer pj = pz;
  for (unsigned j = 1; j < k; ++j) {
    ZPoly diff = zsub(f, zmul(g, h));
    for (auto& c : diff) c /= pj;  // exact: f = g h mod p^j
    FpPoly e = F.reduce(diff);
    FpPoly fg = F.reduce(g);
    auto [q, r] = F.divmod(F.mul(e, t), fg);
    FpPoly dh = F.add(F.mul(e, s), F.mul(q, F.reduce(h)));
    ZPoly dgz = from_fp(r);
    ZPoly dhz = from_fp(dh);
    for (auto& c : dgz) c *= pj;
    for (auto& c : dhz) c *= pj;
    pj *= pz;
    g = zmod(zadd(g, dgz), pj);
    h = zmod(zadd(h, dhz), pj);
  }
}

// Lifts the monic factors mod p of f (which has leading coefficient lc) to
// monic factors mod p^k.
std::vector<ZPoly> hensel_lift(const Fp& F, const ZPoly& f, const std::vector<FpPoly>& factors, unsigned k,
                               const Integer& modulus) {
  if (factors.size() == 1) {
    Integer lc_inv;
    mpz_invert(lc_inv.get_mpz_t(), f.back().get_mpz_t(), modulus.get_mpz_t());
    ZPoly m = f;
    for (auto& c : m) c *= lc_inv;
    return {zmod(m, modulus)};
  }
  std::size_t half = factors.size() / 2;
  std::vector<FpPoly> left(factors.begin(), factors.begin() + half);
  std::vector<FpPoly> right(factors.begin() + half, factors.end());
  FpPoly gl{1};
  for (const auto& x : left) gl = F.mul(gl, x);
  FpPoly hr{F.reduce(ZPoly{f.back()})[0]};
  for (const auto& x : right) hr = F.mul(hr, x);
  ZPoly g = from_fp(gl);
  ZPoly h = from_fp(hr);
  hensel_lift_pair(F, f, g, h, k);

  auto lg = hensel_lift(F, g, left, k, modulus);
  auto lh = hensel_lift(F, h, right, k, modulus);
  lg.insert(lg.end(), lh.begin(), lh.end());
  return lg;
}

// Mignotte-style bound on coefficients of any integer factor of f, times |lc|.
Integer factor_coefficient_bound(const ZPoly& f) {
  Integer norm2(0);
  for (const auto& c : f) norm2 += c * c;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  root += 1;
  Integer two_n;
  mpz_ui_pow_ui(two_n.get_mpz_t(), 2, f.size() - 1);
  return two_n * root * abs(f.back());
}

bool is_small_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

std::vector<Polynomial> factor_squarefree(const Polynomial& input) {
  if (input.is_zero()) throw PreconditionError("factor of zero polynomial");
  if (input.degree() <= 0) return {};
  if (input.degree() == 1) return {input.monic()};

  std::vector<Polynomial> result;
  ZPoly f = to_zpoly(input);
  // Pull out the factor z first; it keeps the constant term nonzero below.
  if (f[0] == 0) {
    result.push_back(Polynomial::z());
    f.erase(f.begin());
    ztrim(f);
    if (f.size() <= 1) return result;
  }
  if (f.size() == 2) {
    result.push_back(to_polynomial(f));
    return result;
  }

  // Pick the prime with the fewest modular factors among a few admissible ones.
  std::optional<Fp> best;
  std::vector<FpPoly> best_factors;
  int admissible = 0;
  for (std::uint64_t p = 3; admissible < 5 && p < 100000; p += 2) {
    if (!is_small_prime(p)) continue;
    Fp F{p};
    FpPoly fp = F.reduce(f);
    if (fp.size() != f.size()) continue;  // p divides lc
    if (F.gcd(fp, F.derivative(fp)).size() != 1) continue;
    ++admissible;
    auto facs = factor_mod_p(F, F.monic(fp));
    if (!best || facs.size() < best_factors.size()) {
      best = F;
      best_factors = std::move(facs);
    }
    if (best_factors.size() == 1) break;
  }
  if (!best) throw Error("no admissible prime for factorization");
  if (best_factors.size() == 1) {
    result.push_back(to_polynomial(f));
    return result;
  }

  const Fp& F = *best;
  Integer bound = 2 * factor_coefficient_bound(f) + 1;
  Integer pz(static_cast<unsigned long>(F.p));
  Integer modulus = pz;
  unsigned k = 1;
  while (modulus <= bound) {
    modulus *= pz;
    ++k;
  }
  std::vector<ZPoly> lifted = hensel_lift(F, f, best_factors, k, modulus);

  // Subset recombination.
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      ZPoly cand{f.back()};
      for (auto i : idx) cand = zmod(zmul(cand, lifted[i]), modulus);
      cand = primitive(zsymmetric(cand, modulus));
      ZPoly quotient;
      if (zdivides(f, cand, quotient)) {
        result.push_back(to_polynomial(cand));
        f = primitive(quotient);
        for (std::size_t j = s; j-- > 0;) lifted.erase(lifted.begin() + static_cast<long>(idx[j]));
        found = true;
        break;
      }
      // next combination
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == lifted.size() - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (f.size() > 1) result.push_back(to_polynomial(f));
  return result;
}

}  // namespace coverspec
