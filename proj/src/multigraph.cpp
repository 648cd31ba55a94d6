#include "coverspec/multigraph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <numeric>

#include "coverspec/errors.hpp"

namespace coverspec {

// ---------------------------------------------------------------------------
// VertexSet

VertexSet VertexSet::full(std::size_t size) {
  VertexSet s(size);
  for (VertexId v = 0; v < size; ++v) s.insert(v);
  return s;
}

VertexSet VertexSet::of(std::size_t size, std::initializer_list<VertexId> ids) {
  VertexSet s(size);
  for (VertexId v : ids) s.insert(v);
  return s;
}

void VertexSet::insert(VertexId v) {
  if (v >= size_) throw PreconditionError("vertex " + std::to_string(v) + " out of range");
  words_[v / 64] |= std::uint64_t{1} << (v % 64);
}

void VertexSet::erase(VertexId v) {
  if (v >= size_) return;
  words_[v / 64] &= ~(std::uint64_t{1} << (v % 64));
}

std::size_t VertexSet::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<VertexId> VertexSet::members() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < size_; ++v) {
    if (contains(v)) out.push_back(v);
  }
  return out;
}

VertexSet VertexSet::operator|(const VertexSet& o) const {
  VertexSet r(std::max(size_, o.size_));
  for (std::size_t i = 0; i < r.words_.size(); ++i) {
    r.words_[i] = (i < words_.size() ? words_[i] : 0) | (i < o.words_.size() ? o.words_[i] : 0);
  }
  return r;
}

VertexSet VertexSet::operator&(const VertexSet& o) const {
  VertexSet r(std::max(size_, o.size_));
  for (std::size_t i = 0; i < r.words_.size(); ++i) {
    r.words_[i] = (i < words_.size() ? words_[i] : 0) & (i < o.words_.size() ? o.words_[i] : 0);
  }
  return r;
}

VertexSet VertexSet::operator-(const VertexSet& o) const {
  VertexSet r = *this;
  for (std::size_t i = 0; i < r.words_.size() && i < o.words_.size(); ++i) r.words_[i] &= ~o.words_[i];
  return r;
}

// ---------------------------------------------------------------------------
// Multigraph

Multigraph Multigraph::from_raw(std::vector<Vertex> vertices, std::vector<Edge> edges) {
  Multigraph g;
  g.vertices_ = std::move(vertices);
  g.edges_ = std::move(edges);
  g.out_.assign(g.vertices_.size(), {});
  g.in_.assign(g.vertices_.size(), {});
  for (EdgeId e = 0; e < g.edges_.size(); ++e) {
    const Edge& ed = g.edges_[e];
    if (ed.source < g.vertices_.size()) g.out_[ed.source].push_back(e);
    if (ed.target < g.vertices_.size()) g.in_[ed.target].push_back(e);
  }
  return g;
}

VertexId Multigraph::add_vertex(std::string name, Rational potential) {
  vertices_.push_back({std::move(name), std::move(potential)});
  out_.emplace_back();
  in_.emplace_back();
  return static_cast<VertexId>(vertices_.size() - 1);
}

EdgeId Multigraph::add_edge(VertexId u, VertexId v, const GaussianRational& weight) {
  if (u >= vertices_.size() || v >= vertices_.size()) {
    throw PreconditionError("add_edge: endpoint out of range");
  }
  auto e = static_cast<EdgeId>(edges_.size());
  edges_.push_back({u, v, e + 1, weight});
  edges_.push_back({v, u, e, weight.conj()});
  out_[u].push_back(e);
  in_[v].push_back(e);
  out_[v].push_back(e + 1);
  in_[u].push_back(e + 1);
  return e;
}

std::vector<EdgeId> Multigraph::pair_representatives() const {
  std::vector<EdgeId> reps;
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    if (e < edges_[e].partner) reps.push_back(e);
  }
  return reps;
}

std::optional<VertexId> Multigraph::find_vertex(const std::string& name) const {
  for (VertexId v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].name == name) return v;
  }
  return std::nullopt;
}

void Multigraph::set_weight(EdgeId e, const GaussianRational& w) {
  edges_.at(e).weight = w;
  edges_.at(edges_[e].partner).weight = w.conj();
}

bool operator==(const Multigraph& a, const Multigraph& b) {
  if (a.vertices_.size() != b.vertices_.size() || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.vertices_.size(); ++i) {
    if (a.vertices_[i].name != b.vertices_[i].name || a.vertices_[i].potential != b.vertices_[i].potential) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const Edge& x = a.edges_[i];
    const Edge& y = b.edges_[i];
    if (x.source != y.source || x.target != y.target || x.partner != y.partner || x.weight != y.weight) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate(const Multigraph& g) {
  ValidationReport report;
  auto nv = g.vertex_count();
  auto ne = g.edge_count();
  auto fail = [&](const std::string& axiom, EdgeId e) {
    report.violations.push_back(axiom + " (edge " + std::to_string(e) + ")");
  };

  if (ne % 2 != 0) report.violations.push_back("edge count is odd");
  for (EdgeId e = 0; e < ne; ++e) {
    const Edge& ed = g.edge(e);
    if (ed.source >= nv || ed.target >= nv) {
      fail("endpoint out of range", e);
      continue;
    }
    if (ed.partner >= ne) {
      fail("partner out of range", e);
      continue;
    }
    if (ed.partner == e) {
      fail("partner has a fixed point", e);
      continue;
    }
    const Edge& rev = g.edge(ed.partner);
    if (rev.partner != e) fail("partner is not an involution", e);
    if (ed.source != rev.target || ed.target != rev.source) fail("source(e) != target(partner(e))", e);
    if (rev.weight != ed.weight.conj()) fail("conjugate symmetry", e);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Structural queries

InducedSubgraph induced_subgraph(const Multigraph& g, const VertexSet& x) {
  if (x.universe() > g.vertex_count()) {
    for (VertexId v = static_cast<VertexId>(g.vertex_count()); v < x.universe(); ++v) {
      if (x.contains(v)) throw PreconditionError("induced: vertex set out of range");
    }
  }
  InducedSubgraph out;
  std::vector<VertexId> new_id(g.vertex_count(), UINT32_MAX);
  std::vector<Vertex> vertices;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!x.contains(v)) continue;
    new_id[v] = static_cast<VertexId>(vertices.size());
    vertices.push_back(g.vertex(v));
    out.vertex_map.push_back(v);
  }
  std::vector<EdgeId> new_edge(g.edge_count(), UINT32_MAX);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (x.contains(ed.source) && x.contains(ed.target)) {
      new_edge[e] = static_cast<EdgeId>(out.edge_map.size());
      out.edge_map.push_back(e);
    }
  }
  std::vector<Edge> edges;
  edges.reserve(out.edge_map.size());
  for (EdgeId old : out.edge_map) {
    const Edge& ed = g.edge(old);
    edges.push_back({new_id[ed.source], new_id[ed.target], new_edge[ed.partner], ed.weight});
  }
  out.graph = Multigraph::from_raw(std::move(vertices), std::move(edges));
  return out;
}

Multigraph induced(const Multigraph& g, const VertexSet& x) { return induced_subgraph(g, x).graph; }

namespace {

struct DisjointSets {
  std::vector<VertexId> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  VertexId find(VertexId v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  bool unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

bool induces_acyclic(const Multigraph& g, const VertexSet& x) {
  DisjointSets ds(g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (e > ed.partner) continue;
    if (!x.contains(ed.source) || !x.contains(ed.target)) continue;
    if (!ds.unite(ed.source, ed.target)) return false;
  }
  return true;
}

bool is_acyclic(const Multigraph& g) { return induces_acyclic(g, VertexSet::full(g.vertex_count())); }

std::vector<VertexSet> components(const Multigraph& g, const VertexSet& x) {
  std::size_t n = g.vertex_count();
  std::vector<int> label(n, -1);
  std::vector<VertexSet> out;
  for (VertexId s = 0; s < n; ++s) {
    if (!x.contains(s) || label[s] >= 0) continue;
    VertexSet comp(n);
    std::deque<VertexId> queue{s};
    label[s] = static_cast<int>(out.size());
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      comp.insert(v);
      for (EdgeId e : g.out_edges(v)) {
        VertexId w = g.edge(e).target;
        if (x.contains(w) && label[w] < 0) {
          label[w] = label[s];
          queue.push_back(w);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<VertexSet> components(const Multigraph& g) {
  return components(g, VertexSet::full(g.vertex_count()));
}

VertexSet boundary(const Multigraph& g, const VertexSet& x) {
  VertexSet out(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!x.contains(v)) continue;
    for (EdgeId e : g.out_edges(v)) {
      VertexId w = g.edge(e).target;
      if (!x.contains(w)) out.insert(w);
    }
  }
  return out;
}

std::optional<std::size_t> girth(const Multigraph& g, std::size_t cutoff) {
  std::size_t ne = g.edge_count();
  std::size_t best = cutoff;
  std::vector<std::uint32_t> stamp(ne, 0);
  std::vector<std::size_t> dist(ne, 0);
  std::vector<EdgeId> queue;
  queue.reserve(ne);
  std::uint32_t round = 0;

  for (EdgeId start = 0; start < ne; ++start) {
    if (best <= 1) break;
    ++round;
    VertexId origin = g.edge(start).source;
    queue.clear();
    queue.push_back(start);
    stamp[start] = round;
    dist[start] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      EdgeId f = queue[head];
      std::size_t len = dist[f];
      if (len >= best) break;
      const Edge& ef = g.edge(f);
      if (ef.target == origin) {
        best = len;
        break;
      }
      if (len + 1 >= best) continue;
      for (EdgeId h : g.out_edges(ef.target)) {
        if (h == ef.partner || stamp[h] == round) continue;
        stamp[h] = round;
        dist[h] = len + 1;
        queue.push_back(h);
      }
    }
  }
  if (best == cutoff) return std::nullopt;
  return best;
}

bool is_bipartite(const Multigraph& g) {
  std::vector<int> side(g.vertex_count(), -1);
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::deque<VertexId> queue{s};
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      for (EdgeId e : g.out_edges(v)) {
        VertexId w = g.edge(e).target;
        if (side[w] < 0) {
          side[w] = 1 - side[v];
          queue.push_back(w);
        } else if (side[w] == side[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace coverspec
