// Graph builders and independent reference computations shared by the tests.
#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "coverspec/cover.hpp"
#include "coverspec/multigraph.hpp"
#include "coverspec/polynomial.hpp"

namespace testing {

using namespace coverspec;

inline Multigraph complete_bipartite(int c, int d) {
  Multigraph g;
  for (int i = 0; i < c; ++i) g.add_vertex("a" + std::to_string(i));
  for (int j = 0; j < d; ++j) g.add_vertex("b" + std::to_string(j));
  for (int i = 0; i < c; ++i) {
    for (int j = 0; j < d; ++j) g.add_edge(i, c + j, 1);
  }
  return g;
}

inline Multigraph cycle(int n) {
  Multigraph g;
  for (int i = 0; i < n; ++i) g.add_vertex("c" + std::to_string(i));
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, 1);
  return g;
}

inline Multigraph complete(int n) {
  Multigraph g;
  for (int i = 0; i < n; ++i) g.add_vertex("k" + std::to_string(i));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j, 1);
  }
  return g;
}

inline Multigraph petersen() {
  Multigraph g;
  for (int i = 0; i < 10; ++i) g.add_vertex("p" + std::to_string(i));
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5, 1);
    g.add_edge(i, 5 + i, 1);
    g.add_edge(5 + i, 5 + (i + 2) % 5, 1);
  }
  return g;
}

inline Multigraph path(int n) {
  Multigraph g;
  for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1, 1);
  return g;
}

// 4-cycle with a loop: the shortest null-homologous non-backtracking walk
// has length 10, so moments up to 8 are reachable by abelian lifts.
inline Multigraph cycle_with_loop() {
  Multigraph g = cycle(4);
  g.set_potential(0, 1);
  g.add_edge(0, 0, 1);
  return g;
}

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(draw_at_most(rng, static_cast<std::uint64_t>(hi - lo)));
}

inline Rational random_rational(std::mt19937_64& rng, long max_num = 5, long max_den = 4) {
  return make_rational(uniform(rng, -max_num, max_num), uniform(rng, 1, max_den));
}

inline GaussianRational random_weight(std::mt19937_64& rng, bool complex = true) {
  for (;;) {
    GaussianRational w(random_rational(rng), complex ? random_rational(rng) : Rational(0));
    if (!w.is_zero()) return w;
  }
}

// Replaces every weight and potential by random rational data.
inline void randomize(Multigraph& g, std::mt19937_64& rng, bool complex = true) {
  for (EdgeId e : g.pair_representatives()) g.set_weight(e, random_weight(rng, complex));
  for (VertexId v = 0; v < g.vertex_count(); ++v) g.set_potential(v, random_rational(rng));
}

// Random tree; with `plain` set all weights are 1 and potentials 0.
inline Multigraph random_tree(std::mt19937_64& rng, int n, bool plain) {
  Multigraph g;
  for (int i = 0; i < n; ++i) g.add_vertex("t" + std::to_string(i), plain ? Rational(0) : random_rational(rng, 2, 2));
  for (int i = 1; i < n; ++i) {
    g.add_edge(static_cast<VertexId>(uniform(rng, 0, i - 1)), i, plain ? GaussianRational(1) : random_weight(rng));
  }
  return g;
}

// Connected multigraph: a random spanning tree plus extra pairs (possibly
// loops and parallel edges). Weights and potentials come from small sets so
// that coincident tree eigenvalues are common.
inline Multigraph random_connected_multigraph(std::mt19937_64& rng, int n, int pairs) {
  static const GaussianRational kWeights[] = {1, 1, -1, 2, GaussianRational(0, 1), GaussianRational(1, 1)};
  static const int kPotentials[] = {0, 0, 0, 1, -1};
  Multigraph g;
  for (int i = 0; i < n; ++i) g.add_vertex("m" + std::to_string(i), kPotentials[uniform(rng, 0, 4)]);
  auto w = [&]() { return kWeights[uniform(rng, 0, 5)]; };
  for (int i = 1; i < n; ++i) g.add_edge(static_cast<VertexId>(uniform(rng, 0, i - 1)), i, w());
  for (int k = n - 1; k < pairs; ++k) {
    g.add_edge(static_cast<VertexId>(uniform(rng, 0, n - 1)), static_cast<VertexId>(uniform(rng, 0, n - 1)), w());
  }
  return g;
}

// ---------------------------------------------------------------------------
// Reference computations

// Dense exact Jacobi matrix, built directly from the edge list.
inline std::vector<std::vector<GaussianRational>> dense_jacobi(const Multigraph& g) {
  std::size_t n = g.vertex_count();
  std::vector<std::vector<GaussianRational>> a(n, std::vector<GaussianRational>(n));
  for (VertexId v = 0; v < n; ++v) a[v][v] += GaussianRational(g.vertex(v).potential);
  for (const Edge& e : g.edges()) a[e.target][e.source] += e.weight;
  return a;
}

// Determinant by fraction-free elimination (Bareiss) over Q(i).
inline GaussianRational bareiss_det(std::vector<std::vector<GaussianRational>> m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  GaussianRational prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

// det(z - A) recovered by Lagrange interpolation at z = 0..n.
inline Polynomial char_poly_by_interpolation(const Multigraph& g) {
  std::size_t n = g.vertex_count();
  auto a = dense_jacobi(g);
  std::vector<Rational> xs, ys;
  for (std::size_t t = 0; t <= n; ++t) {
    auto m = a;
    for (auto& row : m) {
      for (auto& x : row) x = -x;
    }
    for (std::size_t i = 0; i < n; ++i) m[i][i] += GaussianRational(Rational(static_cast<long>(t)));
    GaussianRational d = bareiss_det(m);
    if (!d.is_real()) throw std::runtime_error("characteristic polynomial value is not real");
    xs.push_back(static_cast<long>(t));
    ys.push_back(d.re);
  }
  Polynomial out;
  for (std::size_t i = 0; i <= n; ++i) {
    Polynomial basis(std::vector<Rational>{Rational(1)});
    Rational denom = 1;
    for (std::size_t j = 0; j <= n; ++j) {
      if (i == j) continue;
      basis = basis * Polynomial::linear(xs[j]);
      denom *= xs[i] - xs[j];
    }
    out = out + basis * Polynomial(std::vector<Rational>{ys[i] / denom});
  }
  return out;
}

// <delta_u, A^k delta_u> on the universal cover by explicit enumeration of
// walks, tracking the reduced path back to the root as a stack of edges.
inline GaussianRational universal_cover_walks(const Multigraph& g, VertexId u, std::size_t k) {
  std::vector<EdgeId> stack;
  std::function<GaussianRational(VertexId, std::size_t)> go = [&](VertexId v, std::size_t left) -> GaussianRational {
    if (stack.size() > left) return 0;
    if (left == 0) return stack.empty() ? GaussianRational(1) : GaussianRational(0);
    GaussianRational acc;
    if (sgn(g.vertex(v).potential) != 0) acc += GaussianRational(g.vertex(v).potential) * go(v, left - 1);
    if (!stack.empty()) {
      EdgeId e = stack.back();
      stack.pop_back();
      acc += g.edge(e).weight.conj() * go(g.edge(e).source, left - 1);
      stack.push_back(e);
    }
    for (EdgeId f : g.out_edges(v)) {
      if (!stack.empty() && f == g.edge(stack.back()).partner) continue;
      stack.push_back(f);
      acc += g.edge(f).weight * go(g.edge(f).target, left - 1);
      stack.pop_back();
    }
    return acc;
  };
  return go(u, k);
}

// Shortest closed non-backtracking walk by exhaustive search up to `limit`.
inline std::optional<std::size_t> brute_girth(const Multigraph& g, std::size_t limit) {
  std::optional<std::size_t> best;
  std::function<void(VertexId, EdgeId, std::size_t)> dfs = [&](VertexId origin, EdgeId last, std::size_t len) {
    if (g.edge(last).target == origin && (!best || len < *best)) best = len;
    if (len >= limit || (best && len >= *best)) return;
    for (EdgeId f : g.out_edges(g.edge(last).target)) {
      if (f == g.edge(last).partner) continue;
      dfs(origin, f, len + 1);
    }
  };
  for (EdgeId e = 0; e < g.edge_count(); ++e) dfs(g.edge(e).source, e, 1);
  return best;
}

// Count of eigenvalues of the exact char poly equal to a rational value.
inline int rational_root_multiplicity(Polynomial p, const Rational& r) {
  int m = 0;
  Polynomial lin = Polynomial::linear(r);
  while (!p.is_zero() && p.degree() >= 1 && p.eval(r) == 0) {
    p = p / lin;
    ++m;
  }
  return m;
}

}  // namespace testing
