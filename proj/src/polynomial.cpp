#include "coverspec/polynomial.hpp"

#include <algorithm>
#include <cctype>

#include "coverspec/errors.hpp"

namespace coverspec {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(const Rational& c) {
  if (sgn(c) != 0) c_.push_back(c);
}

Polynomial::Polynomial(int c) : Polynomial(Rational(c)) {}

Polynomial Polynomial::z() { return monomial(1); }

Polynomial Polynomial::monomial(std::size_t degree, const Rational& c) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::linear(const Rational& root) { return Polynomial({Rational(-root), Rational(1)}); }

const Rational& Polynomial::coeff(std::size_t k) const {
  static const Rational zero(0);
  return k < c_.size() ? c_[k] : zero;
}

void Polynomial::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational Polynomial::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::eval(double x) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  Polynomial out = *this;
  Rational lc = leading();
  for (auto& c : out.c_) c /= lc;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Polynomial operator-(const Polynomial& a) {
  Polynomial out = a;
  for (auto& c : out.c_) c = -c;
  return out;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial(), a};
  std::vector<Rational> r = a.coeffs();
  const auto& bc = b.coeffs();
  std::size_t db = bc.size() - 1;
  std::vector<Rational> q(r.size() - db, Rational(0));
  for (std::size_t k = r.size(); k-- > db;) {
    if (sgn(r[k]) == 0) continue;
    Rational f = r[k] / bc[db];
    q[k - db] = f;
    for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= f * bc[j];
  }
  r.resize(db);
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).first; }
Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

bool divides(const Polynomial& d, const Polynomial& p) {
  if (d.is_zero()) return p.is_zero();
  return (p % d).is_zero();
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a;
  Polynomial y = b;
  while (!y.is_zero()) {
    Polynomial r = x % y;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

Polynomial pow(const Polynomial& p, unsigned k) {
  Polynomial out(1);
  for (unsigned i = 0; i < k; ++i) out *= p;
  return out;
}

std::vector<Factor> squarefree_decomposition(const Polynomial& p) {
  if (p.is_zero()) throw PreconditionError("squarefree decomposition of zero");
  std::vector<Factor> out;
  Polynomial f = p.monic();
  if (f.degree() == 0) return out;
  Polynomial d = f.derivative();
  Polynomial a = gcd(f, d);
  Polynomial b = f / a;
  Polynomial c = d / a;
  Polynomial bd = c - b.derivative();
  for (unsigned k = 1; b.degree() > 0; ++k) {
    Polynomial g = gcd(b, bd);
    if (g.degree() > 0) out.push_back({g, k});
    b = b / g;
    c = bd / g;
    bd = c - b.derivative();
  }
  return out;
}

namespace {

bool poly_less(const Polynomial& a, const Polynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
    if (a.coeffs()[k] != b.coeffs()[k]) return a.coeffs()[k] < b.coeffs()[k];
  }
  return false;
}

}  // namespace

std::vector<Factor> factor(const Polynomial& p) {
  std::vector<Factor> out;
  for (const Factor& sq : squarefree_decomposition(p)) {
    for (Polynomial& q : factor_squarefree(sq.poly)) out.push_back({std::move(q), sq.multiplicity});
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return poly_less(a.poly, b.poly); });
  return out;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
    Rational c = p.coeffs()[k];
    if (sgn(c) == 0) continue;
    if (out.empty()) {
      if (sgn(c) < 0 && k > 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    if (sgn(c) < 0 && (k > 0 || out.size() > 1)) c = -c;
    std::string var = k == 0 ? "" : (k == 1 ? "z" : "z^" + std::to_string(k));
    if (k == 0) {
      out += to_string(c);
    } else if (c == 1) {
      out += var;
    } else {
      out += to_string(c) + " " + var;
    }
  }
  return out;
}

Polynomial parse_polynomial(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw ParseError("empty polynomial");
  if (s == "0") return {};

  std::vector<std::string> terms;
  std::string cur;
  for (std::size_t k = 0; k < s.size(); ++k) {
    char ch = s[k];
    bool split = ch == '+' || (ch == '-' && k > 0 && s[k - 1] != '+' && s[k - 1] != '^');
    if (split && !cur.empty()) {
      terms.push_back(cur);
      cur.clear();
    }
    if (ch != '+') cur += ch;
  }
  if (!cur.empty()) terms.push_back(cur);

  Polynomial out;
  for (const std::string& t : terms) {
    auto zpos = t.find('z');
    if (zpos == std::string::npos) {
      out += Polynomial(parse_rational(t));
      continue;
    }
    std::string coef = t.substr(0, zpos);
    std::string rest = t.substr(zpos + 1);
    Rational c = coef.empty() ? Rational(1) : coef == "-" ? Rational(-1) : parse_rational(coef);
    std::size_t deg = 1;
    if (!rest.empty()) {
      if (rest[0] != '^' || rest.size() < 2) throw ParseError("bad polynomial term '" + t + "'");
      std::string digits = rest.substr(1);
      if (!std::all_of(digits.begin(), digits.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        throw ParseError("bad exponent in '" + t + "'");
      }
      deg = std::stoul(digits);
    }
    out += Polynomial::monomial(deg, c);
  }
  return out;
}

}  // namespace coverspec
