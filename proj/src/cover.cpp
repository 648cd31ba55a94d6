#include "coverspec/cover.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "coverspec/errors.hpp"

namespace coverspec {

Permutation inverse(const Permutation& p) {
  Permutation q(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) q[p[i]] = i;
  return q;
}

bool is_permutation(const Permutation& p) {
  std::vector<bool> hit(p.size(), false);
  for (auto x : p) {
    if (x >= p.size() || hit[x]) return false;
    hit[x] = true;
  }
  return true;
}

LiftSpec LiftSpec::identity(const Multigraph& g, std::size_t n) {
  LiftSpec s;
  s.degree = n;
  Permutation id(n);
  for (std::uint32_t i = 0; i < n; ++i) id[i] = i;
  s.perm.assign(g.pair_count(), id);
  return s;
}

void check_lift_spec(const Multigraph& g, const LiftSpec& spec) {
  if (spec.degree == 0) throw PreconditionError("lift degree must be positive");
  if (spec.perm.size() != g.pair_count()) {
    throw PreconditionError("lift spec has " + std::to_string(spec.perm.size()) + " permutations for " +
                            std::to_string(g.pair_count()) + " edge pairs");
  }
  for (std::size_t k = 0; k < spec.perm.size(); ++k) {
    if (spec.perm[k].size() != spec.degree || !is_permutation(spec.perm[k])) {
      throw PreconditionError("pair " + std::to_string(k) + ": not a permutation of degree " +
                              std::to_string(spec.degree));
    }
  }
}

namespace {

Permutation parse_permutation(const std::string& text, std::size_t n, std::size_t line) {
  Permutation p(n);
  for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
  auto bad = [&](const std::string& why) { return ParseError(line, why + " in '" + text + "'"); };

  if (text.find('(') != std::string::npos) {
    std::vector<bool> used(n, false);
    std::size_t pos = 0;
    while (pos < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
        continue;
      }
      if (text[pos] != '(') throw bad("expected '('");
      auto close = text.find(')', pos);
      if (close == std::string::npos) throw bad("unbalanced cycle");
      std::istringstream ss(text.substr(pos + 1, close - pos - 1));
      std::vector<std::uint32_t> cyc;
      for (long x; ss >> x;) {
        if (x < 0 || static_cast<std::size_t>(x) >= n || used[x]) throw bad("bad cycle entry");
        used[x] = true;
        cyc.push_back(static_cast<std::uint32_t>(x));
      }
      if (!ss.eof()) throw bad("bad cycle entry");
      for (std::size_t j = 0; j < cyc.size(); ++j) p[cyc[j]] = cyc[(j + 1) % cyc.size()];
      pos = close + 1;
    }
    return p;
  }

  std::string body = text;
  std::replace(body.begin(), body.end(), '[', ' ');
  std::replace(body.begin(), body.end(), ']', ' ');
  std::replace(body.begin(), body.end(), ',', ' ');
  std::istringstream ss(body);
  Permutation w;
  for (long x; ss >> x;) {
    if (x < 0) throw bad("negative image");
    w.push_back(static_cast<std::uint32_t>(x));
  }
  if (!ss.eof()) throw bad("bad permutation word");
  if (w.size() != n || !is_permutation(w)) throw bad("not a permutation of degree " + std::to_string(n));
  return w;
}

bool is_identity(const Permutation& p) {
  for (std::uint32_t i = 0; i < p.size(); ++i) {
    if (p[i] != i) return false;
  }
  return true;
}

}  // namespace

LiftSpec parse_lift_spec(std::string_view text, const Multigraph& g) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::optional<LiftSpec> spec;
  while (std::getline(in, line)) {
    ++lineno;
    line = line.substr(0, line.find('#'));
    std::istringstream ss(line);
    std::string head;
    if (!(ss >> head)) continue;
    if (head == "degree") {
      long n = 0;
      if (!(ss >> n) || n <= 0) throw ParseError(lineno, "bad degree");
      if (spec) throw ParseError(lineno, "duplicate degree line");
      spec = LiftSpec::identity(g, static_cast<std::size_t>(n));
    } else if (head == "perm") {
      if (!spec) throw ParseError(lineno, "'perm' before 'degree'");
      long k = -1;
      if (!(ss >> k) || k < 0 || static_cast<std::size_t>(k) >= g.pair_count()) {
        throw ParseError(lineno, "bad edge pair index");
      }
      std::string rest;
      std::getline(ss, rest);
      spec->perm[k] = parse_permutation(rest, spec->degree, lineno);
    } else {
      throw ParseError(lineno, "unknown declaration '" + head + "'");
    }
  }
  if (!spec) throw ParseError("lift spec has no 'degree' line");
  return *spec;
}

std::string serialize_lift_spec(const LiftSpec& spec) {
  std::ostringstream out;
  out << "degree " << spec.degree << '\n';
  for (std::size_t k = 0; k < spec.perm.size(); ++k) {
    if (is_identity(spec.perm[k])) continue;
    out << "perm " << k << " [";
    for (std::size_t i = 0; i < spec.perm[k].size(); ++i) out << (i ? " " : "") << spec.perm[k][i];
    out << "]\n";
  }
  return out.str();
}

Multigraph lift(const Multigraph& g, const LiftSpec& spec) {
  check_lift_spec(g, spec);
  std::size_t n = spec.degree;
  if (n == 1) return g;
  std::vector<Vertex> vertices;
  vertices.reserve(g.vertex_count() * n);
  for (const Vertex& v : g.vertices()) {
    for (std::size_t i = 0; i < n; ++i) vertices.push_back({v.name + "@" + std::to_string(i), v.potential});
  }
  auto reps = g.pair_representatives();
  std::vector<Edge> edges(g.edge_count() * n);
  for (std::size_t k = 0; k < reps.size(); ++k) {
    const Edge& e = g.edge(reps[k]);
    const Permutation& p = spec.perm[k];
    for (std::size_t i = 0; i < n; ++i) {
      auto id = static_cast<EdgeId>(2 * (k * n + i));
      auto from = static_cast<VertexId>(e.source * n + i);
      auto to = static_cast<VertexId>(e.target * n + p[i]);
      edges[id] = {from, to, id + 1, e.weight};
      edges[id + 1] = {to, from, id, e.weight.conj()};
    }
  }
  return Multigraph::from_raw(std::move(vertices), std::move(edges));
}

std::uint64_t draw_at_most(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == UINT64_MAX) return rng();
  std::uint64_t range = bound + 1;
  std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit) return x % range;
  }
}

LiftSpec random_lift_spec(const Multigraph& g, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw PreconditionError("lift degree must be positive");
  LiftSpec spec = LiftSpec::identity(g, n);
  std::mt19937_64 rng(seed);
  for (auto& p : spec.perm) {
    for (std::size_t i = n; i-- > 1;) std::swap(p[i], p[draw_at_most(rng, i)]);
  }
  return spec;
}

Multigraph random_lift(const Multigraph& g, std::size_t n, std::uint64_t seed) {
  return lift(g, random_lift_spec(g, n, seed));
}

CoverBall cover_ball(const Multigraph& g, VertexId u, std::size_t r, std::size_t max_nodes) {
  if (u >= g.vertex_count()) throw PreconditionError("cover_ball: root out of range");
  CoverBall ball;
  std::vector<Vertex> nodes;
  std::vector<Edge> edges;
  auto add_node = [&](VertexId proj, std::uint32_t depth, EdgeId last) {
    if (nodes.size() >= max_nodes) {
      throw BudgetExceeded("cover ball exceeds " + std::to_string(max_nodes) + " nodes");
    }
    nodes.push_back({"w" + std::to_string(nodes.size()), g.vertex(proj).potential});
    ball.projection.push_back(proj);
    ball.depth.push_back(depth);
    ball.last_edge.push_back(last);
    return static_cast<VertexId>(nodes.size() - 1);
  };
  add_node(u, 0, UINT32_MAX);
  for (VertexId x = 0; x < nodes.size(); ++x) {
    if (ball.depth[x] >= r) continue;
    VertexId v = ball.projection[x];
    for (EdgeId f : g.out_edges(v)) {
      if (x != 0 && f == g.edge(ball.last_edge[x]).partner) continue;
      VertexId c = add_node(g.edge(f).target, ball.depth[x] + 1, f);
      auto id = static_cast<EdgeId>(edges.size());
      edges.push_back({x, c, id + 1, g.edge(f).weight});
      edges.push_back({c, x, id, g.edge(f).weight.conj()});
    }
  }
  ball.tree = Multigraph::from_raw(std::move(nodes), std::move(edges));
  return ball;
}

namespace {

// <delta_root, M^j delta_root> for j = 0..k on a ball of radius floor(k/2),
// where M has the ball's potentials on the diagonal, `down` on parent->child
// steps and `up` on child->parent steps.
template <typename Down, typename Up>
std::vector<GaussianRational> closed_walk_sums(const CoverBall& ball, std::size_t k, Down down, Up up) {
  const Multigraph& t = ball.tree;
  std::size_t n = t.vertex_count();
  std::vector<GaussianRational> x(n), y(n);
  std::vector<GaussianRational> out{GaussianRational(1)};
  x[0] = 1;
  for (std::size_t step = 0; step < k; ++step) {
    for (auto& v : y) v = GaussianRational();
    for (VertexId v = 0; v < n; ++v) {
      if (x[v].is_zero()) continue;
      const Rational& b = t.vertex(v).potential;
      if (sgn(b) != 0) y[v] += x[v] * GaussianRational(b);
      for (EdgeId e : t.out_edges(v)) {
        const Edge& ed = t.edge(e);
        bool outward = ball.depth[ed.target] > ball.depth[v];
        y[ed.target] += x[v] * (outward ? down(ed) : up(ed));
      }
    }
    std::swap(x, y);
    out.push_back(x[0]);
  }
  return out;
}

auto plain_weight = [](const Edge& e) { return e.weight; };
auto modulus_squared = [](const Edge& e) { return GaussianRational(e.weight.norm()); };
auto unit_weight = [](const Edge&) { return GaussianRational(1); };

}  // namespace

GaussianRational cover_moment(const Multigraph& g, VertexId u, std::size_t k) {
  return cover_moments(g, u, k).back();
}

std::vector<GaussianRational> cover_moments(const Multigraph& g, VertexId u, std::size_t k_max) {
  return closed_walk_sums(cover_ball(g, u, k_max / 2), k_max, plain_weight, plain_weight);
}

GaussianRational cover_moment_moduli(const Multigraph& g, VertexId u, std::size_t k) {
  return cover_moments_moduli(g, u, k).back();
}

std::vector<GaussianRational> cover_moments_moduli(const Multigraph& g, VertexId u, std::size_t k_max) {
  return closed_walk_sums(cover_ball(g, u, k_max / 2), k_max, modulus_squared, unit_weight);
}

std::vector<std::vector<GaussianRational>> diagonal_moments_upto(const Multigraph& h, std::size_t k_max) {
  std::size_t n = h.vertex_count();
  std::vector<std::vector<GaussianRational>> out(k_max + 1, std::vector<GaussianRational>(n));
  using Sparse = std::map<VertexId, GaussianRational>;
  auto apply = [&](const Sparse& x) {
    Sparse y;
    for (const auto& [v, val] : x) {
      const Rational& b = h.vertex(v).potential;
      if (sgn(b) != 0) y[v] += val * GaussianRational(b);
      for (EdgeId e : h.out_edges(v)) y[h.edge(e).target] += val * h.edge(e).weight;
    }
    return y;
  };
  auto inner = [](const Sparse& a, const Sparse& b) {
    GaussianRational acc;
    for (const auto& [v, val] : a) {
      auto it = b.find(v);
      if (it != b.end()) acc += val.conj() * it->second;
    }
    return acc;
  };
  // (A^k)_xx = <A^lo d_x, A^hi d_x> with lo = floor(k/2), hi = k - lo.
  std::size_t half = (k_max + 1) / 2;
  for (VertexId x = 0; x < n; ++x) {
    std::vector<Sparse> powers{Sparse{{x, GaussianRational(1)}}};
    for (std::size_t s = 0; s < half; ++s) powers.push_back(apply(powers.back()));
    for (std::size_t k = 0; k <= k_max; ++k) out[k][x] = inner(powers[k / 2], powers[k - k / 2]);
  }
  return out;
}

std::vector<GaussianRational> diagonal_moments(const Multigraph& h, std::size_t k) {
  return diagonal_moments_upto(h, k)[k];
}

GaussianRational trace_moment(const Multigraph& h, std::size_t k) {
  return trace_moments(h, k).back();
}

std::vector<GaussianRational> trace_moments(const Multigraph& h, std::size_t k_max) {
  std::vector<GaussianRational> out;
  for (const auto& diag : diagonal_moments_upto(h, k_max)) {
    GaussianRational acc;
    for (const auto& m : diag) acc += m;
    out.push_back(acc);
  }
  return out;
}

Eigen::MatrixXd regular_rep(const Permutation& p, RepBasis basis) {
  std::size_t n = p.size();
  if (n < 2) throw PreconditionError("regular representation needs degree >= 2");
  std::size_t d = n - 1;
  if (basis == RepBasis::Difference) {
    // P(e_i - e_n) = e_{p(i)} - e_{p(n)}, with e_n - e_n = 0.
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      if (p[i] != d) m(p[i], i) += 1;
      if (p[d] != d) m(p[d], i) -= 1;
    }
    return m;
  }
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, d);
  for (std::size_t j = 0; j < d; ++j) {
    double s = 1.0 / std::sqrt(static_cast<double>((j + 1) * (j + 2)));
    for (std::size_t i = 0; i <= j; ++i) q(i, j) = s;
    q(j + 1, j) = -static_cast<double>(j + 1) * s;
  }
  Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) perm(p[i], i) = 1;
  return q.transpose() * perm * q;
}

Eigen::MatrixXcd regular_rep_operator(const Multigraph& g, const LiftSpec& spec, RepBasis basis) {
  check_lift_spec(g, spec);
  std::size_t n = spec.degree;
  if (n < 2) throw PreconditionError("regular_rep_operator: degree 1 has an empty complement");
  std::size_t d = n - 1;
  std::size_t dim = g.vertex_count() * d;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (std::size_t j = 0; j < d; ++j) m(v * d + j, v * d + j) += to_double(g.vertex(v).potential);
  }
  auto reps = g.pair_representatives();
  for (std::size_t k = 0; k < reps.size(); ++k) {
    const Edge& e = g.edge(reps[k]);
    Eigen::MatrixXd rho = regular_rep(spec.perm[k], basis);
    Eigen::MatrixXd rho_inv = regular_rep(inverse(spec.perm[k]), basis);
    std::complex<double> a = e.weight.to_complex();
    m.block(e.target * d, e.source * d, d, d) += a * rho.cast<std::complex<double>>();
    m.block(e.source * d, e.target * d, d, d) += std::conj(a) * rho_inv.cast<std::complex<double>>();
  }
  return m;
}

}  // namespace coverspec
