#include "coverspec/aomoto.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "coverspec/eigvec.hpp"
#include "coverspec/errors.hpp"
#include "coverspec/parallel.hpp"

namespace coverspec {

long index(const Multigraph& g, const VertexSet& x) {
  return static_cast<long>(components(g, x).size()) - static_cast<long>(boundary(g, x).count());
}

CandidateSet make_candidate(const Multigraph& g, const VertexSet& x) {
  CandidateSet c;
  c.x = x;
  c.trees = components(g, x);
  c.boundary = boundary(g, x);
  c.index = static_cast<long>(c.trees.size()) - static_cast<long>(c.boundary.count());
  return c;
}

namespace {

bool has_loop(const Multigraph& g, VertexId v) {
  for (EdgeId e : g.out_edges(v)) {
    if (g.is_loop(e)) return true;
  }
  return false;
}

struct Enumerator {
  const Multigraph& g;
  const std::function<void(const CandidateSet&)>& fn;
  std::vector<VertexId> eligible;

  void run(std::size_t pos, VertexSet& x, VertexSet& excluded) {
    // Upper bound on the index of any completion X u S, S among the undecided.
    VertexSet nx = boundary(g, x);
    long cc = static_cast<long>(components(g, x).size());
    long free_far = 0;
    for (std::size_t i = pos; i < eligible.size(); ++i) {
      if (!nx.contains(eligible[i])) ++free_far;
    }
    long fixed_boundary = static_cast<long>((nx & excluded).count());
    if (cc + free_far - fixed_boundary <= 0) return;

    if (pos == eligible.size()) {
      CandidateSet c = make_candidate(g, x);
      if (c.index > 0) fn(c);
      return;
    }
    VertexId v = eligible[pos];
    x.insert(v);
    if (induces_acyclic(g, x)) run(pos + 1, x, excluded);
    x.erase(v);
    excluded.insert(v);
    run(pos + 1, x, excluded);
    excluded.erase(v);
  }
};

}  // namespace

void for_each_candidate(const Multigraph& g, const std::function<void(const CandidateSet&)>& fn) {
  std::size_t n = g.vertex_count();
  Enumerator en{g, fn, {}};
  VertexSet x(n);
  VertexSet excluded(n);
  for (VertexId v = 0; v < n; ++v) {
    if (has_loop(g, v)) {
      excluded.insert(v);
    } else {
      en.eligible.push_back(v);
    }
  }
  en.run(0, x, excluded);
}

std::vector<CandidateSet> candidate_sets(const Multigraph& g) {
  std::vector<CandidateSet> out;
  for_each_candidate(g, [&](const CandidateSet& c) { out.push_back(c); });
  return out;
}

std::vector<CandidateSet> candidate_sets_brute_force(const Multigraph& g) {
  std::size_t n = g.vertex_count();
  if (n > 24) throw BudgetExceeded("brute-force enumeration limited to 24 vertices");
  std::vector<CandidateSet> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    VertexSet x(n);
    for (VertexId v = 0; v < n; ++v) {
      if ((mask >> v) & 1u) x.insert(v);
    }
    if (!induces_acyclic(g, x)) continue;
    CandidateSet c = make_candidate(g, x);
    if (c.index > 0) out.push_back(std::move(c));
  }
  return out;
}

namespace {

struct Evaluated {
  std::vector<Polynomial> charpolys;
  std::vector<AlgebraicEigenvalue> common;  // distinct roots of the gcd
};

Evaluated evaluate(const Multigraph& g, const CandidateSet& c) {
  Evaluated ev;
  Polynomial common;
  for (const VertexSet& t : c.trees) {
    Polynomial p = tree_char_poly(induced(g, t));
    common = common.is_zero() ? p.monic() : gcd(common, p);
    ev.charpolys.push_back(std::move(p));
  }
  if (common.degree() >= 1) {
    for (RealRoot& r : isolate_real_roots(common)) ev.common.push_back(std::move(r.value));
  }
  return ev;
}

bool same_value(const AlgebraicEigenvalue& a, const AlgebraicEigenvalue& b) {
  if (std::abs(a.float_hint - b.float_hint) > 1e-9 * (1 + std::abs(a.float_hint))) return false;
  return a == b;
}

}  // namespace

PointSpectrumResult point_spectrum(const Multigraph& g, const PointSpectrumOptions& options) {
  if (auto report = validate(g); !report.ok()) throw PreconditionError("invalid graph: " + report.violations.front());
  PointSpectrumResult result;
  if (is_acyclic(g)) {
    result.finite_cover = true;
    result.char_poly = tree_char_poly(g);
    if (result.char_poly.degree() >= 1) result.finite_spectrum = isolate_real_roots(result.char_poly);
    return result;
  }

  std::vector<CandidateSet> cands = options.oracle ? candidate_sets_brute_force(g) : candidate_sets(g);
  if (options.filter) {
    std::erase_if(cands, [&](const CandidateSet& c) { return !options.filter(c); });
  }
  result.candidates_examined = cands.size();

  std::vector<Evaluated> evaluated(cands.size());
  parallel_for(cands.size(), options.jobs, [&](std::size_t i) { evaluated[i] = evaluate(g, cands[i]); });

  // Merge in enumeration order so ties keep the first maximizer.
  std::vector<PointSpectrumCertificate> best;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    for (const AlgebraicEigenvalue& lam : evaluated[i].common) {
      auto it = std::find_if(best.begin(), best.end(),
                             [&](const PointSpectrumCertificate& c) { return same_value(c.lambda, lam); });
      if (it == best.end()) {
        best.push_back({lam, 0, cands[i], evaluated[i].charpolys});
      } else if (cands[i].index > it->witness.index) {
        it->witness = cands[i];
        it->per_tree_charpolys = evaluated[i].charpolys;
      }
    }
  }
  for (auto& c : best) c.mass = make_rational(c.witness.index, static_cast<long>(g.vertex_count()));
  std::sort(best.begin(), best.end(), [](const PointSpectrumCertificate& a, const PointSpectrumCertificate& b) {
    return compare(a.lambda, b.lambda) < 0;
  });
  result.certificates = std::move(best);
  return result;
}

Rational mass_at(const PointSpectrumResult& r, const AlgebraicEigenvalue& lambda) {
  for (const auto& c : r.certificates) {
    if (same_value(c.lambda, lambda)) return c.mass;
  }
  return 0;
}

std::function<bool(const CandidateSet&)> zero_potential_prune(const Multigraph& g) {
  for (const Vertex& v : g.vertices()) {
    if (sgn(v.potential) != 0) throw PreconditionError("zero_potential_prune: potential is not identically zero");
  }
  return [&g](const CandidateSet& c) {
    for (VertexId v : c.x.members()) {
      for (EdgeId e : g.out_edges(v)) {
        if (c.x.contains(g.edge(e).target)) return false;
      }
    }
    return true;
  };
}

AuxGraph aux_graph(const Multigraph& g, const PointSpectrumCertificate& cert) {
  const CandidateSet& w = cert.witness;
  std::size_t n = g.vertex_count();
  if (w.x.universe() != n) throw PreconditionError("aux_graph: certificate does not match the graph");
  for (const VertexSet& t : w.trees) {
    if (!is_root_of(cert.lambda, tree_char_poly(induced(g, t)))) {
      throw PreconditionError("aux_graph: certificate is stale for this graph");
    }
  }

  AuxGraph aux;
  aux.tree_count = w.trees.size();
  std::vector<std::size_t> tree_of(n, SIZE_MAX);
  std::vector<std::size_t> local(n, 0);
  Multigraph topo;
  for (std::size_t i = 0; i < w.trees.size(); ++i) {
    InducedSubgraph sub = induced_subgraph(g, w.trees[i]);
    for (std::size_t j = 0; j < sub.vertex_map.size(); ++j) {
      tree_of[sub.vertex_map[j]] = i;
      local[sub.vertex_map[j]] = j;
    }
    TreeKernelBasis k = tree_kernel(sub.graph, cert.lambda);
    aux.zeta_nowhere_zero.push_back(k.nowhere_zero);
    aux.zeta.push_back(k.nowhere_zero ? k.nowhere_zero_vector : Eigen::VectorXcd(k.basis.col(0)));
    topo.add_vertex("t" + std::to_string(i));
  }
  std::vector<VertexId> aux_id(n, UINT32_MAX);
  for (VertexId v : w.boundary.members()) {
    aux_id[v] = topo.add_vertex(g.vertex(v).name);
    aux.boundary_vertices.push_back(v);
  }
  std::vector<Complex> weight;
  for (VertexId v : aux.boundary_vertices) {
    for (EdgeId e : g.in_edges(v)) {
      VertexId s = g.edge(e).source;
      if (tree_of[s] == SIZE_MAX) continue;
      std::size_t i = tree_of[s];
      topo.add_edge(static_cast<VertexId>(i), aux_id[v], GaussianRational());
      Complex a = g.edge(e).weight.to_complex() * aux.zeta[i](static_cast<Eigen::Index>(local[s]));
      weight.push_back(a);
      weight.push_back(std::conj(a));
    }
  }
  aux.graph.topology = std::move(topo);
  aux.graph.weight = std::move(weight);
  aux.graph.potential.assign(aux.graph.topology.vertex_count(), 0.0);
  return aux;
}

std::string to_string(const PointSpectrumCertificate& c, const Multigraph& g) {
  std::string names;
  for (VertexId v : c.witness.x.members()) names += (names.empty() ? "" : ", ") + g.vertex(v).name;
  return "{lambda: " + to_string(c.lambda) + ", mass: " + to_string(c.mass) + ", witness: [" + names +
         "], index: " + std::to_string(c.witness.index) + "}";
}

}  // namespace coverspec
