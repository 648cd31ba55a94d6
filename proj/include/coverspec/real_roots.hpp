#pragma once

#include <string>
#include <vector>

#include "coverspec/polynomial.hpp"

namespace coverspec {

// A real algebraic number: the unique root of an irreducible monic minpoly in
// the open interval (lo, hi).
struct AlgebraicEigenvalue {
  Polynomial minpoly;
  Rational lo;
  Rational hi;
  double float_hint = 0;

  bool is_rational() const { return minpoly.degree() == 1; }
  // Only meaningful when is_rational().
  Rational rational_value() const { return -minpoly.coeff(0); }
};

struct RealRoot {
  AlgebraicEigenvalue value;
  unsigned multiplicity = 0;
};

// Sturm chain p, p', -rem(...), ...
std::vector<Polynomial> sturm_sequence(const Polynomial& p);
// Number of distinct real roots of chain[0] in (a, b].
std::size_t sturm_count(const std::vector<Polynomial>& chain, const Rational& a, const Rational& b);
// Number of distinct real roots of p.
std::size_t real_root_count(const Polynomial& p);
// Every root of p lies in (-bound, bound).
Rational cauchy_bound(const Polynomial& p);

AlgebraicEigenvalue make_rational_root(const Rational& r);

// All real roots of p (nonzero), with multiplicities in p, ascending.
// Isolating intervals have width < 2^-40.
std::vector<RealRoot> isolate_real_roots(const Polynomial& p);

// Shrinks the isolating interval of x below the given width.
void refine(AlgebraicEigenvalue& x, const Rational& width);

// Exact comparison: -1, 0, +1.
int compare(const AlgebraicEigenvalue& a, const AlgebraicEigenvalue& b);
bool operator==(const AlgebraicEigenvalue& a, const AlgebraicEigenvalue& b);
inline bool operator!=(const AlgebraicEigenvalue& a, const AlgebraicEigenvalue& b) { return !(a == b); }

// True iff x is a root of p (minpoly divides p).
bool is_root_of(const AlgebraicEigenvalue& x, const Polynomial& p);

// Certified lower bound on |a - b| for a != b (zero when a == b).
Rational distance_lower_bound(AlgebraicEigenvalue a, AlgebraicEigenvalue b);

// "{minpoly: ..., interval: (lo, hi), float: ...}"
std::string to_string(const AlgebraicEigenvalue& x);

}  // namespace coverspec
