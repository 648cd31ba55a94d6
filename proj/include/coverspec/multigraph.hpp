#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coverspec/rational.hpp"

namespace coverspec {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Vertex {
  std::string name;
  Rational potential;
};

// A directed edge. Every edge has a partner (its reversal); a self-loop is a
// pair (e, partner(e)) with equal endpoints and e != partner(e).
struct Edge {
  VertexId source = 0;
  VertexId target = 0;
  EdgeId partner = 0;
  GaussianRational weight;
};

// Dense bitset over vertex ids [0, size).
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}
  static VertexSet full(std::size_t size);
  static VertexSet of(std::size_t size, std::initializer_list<VertexId> ids);

  std::size_t universe() const { return size_; }
  bool contains(VertexId v) const { return v < size_ && ((words_[v / 64] >> (v % 64)) & 1u); }
  void insert(VertexId v);
  void erase(VertexId v);
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<VertexId> members() const;

  VertexSet operator|(const VertexSet& o) const;
  VertexSet operator&(const VertexSet& o) const;
  VertexSet operator-(const VertexSet& o) const;
  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

class Multigraph {
 public:
  Multigraph() = default;

  // Builds a graph from raw arrays without checking any axiom; use validate().
  static Multigraph from_raw(std::vector<Vertex> vertices, std::vector<Edge> edges);

  VertexId add_vertex(std::string name, Rational potential = 0);
  // Adds e: u -> v with weight w and its partner v -> u with weight conj(w).
  // Returns e; the partner is e + 1.
  EdgeId add_edge(VertexId u, VertexId v, const GaussianRational& weight);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t pair_count() const { return edges_.size() / 2; }

  const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Vertex> vertices() const { return vertices_; }
  std::span<const Edge> edges() const { return edges_; }

  // Edges e with source(e) == v, in id order.
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_.at(v); }
  // Edges e with target(e) == v, in id order.
  const std::vector<EdgeId>& in_edges(VertexId v) const { return in_.at(v); }

  // One representative per edge pair (the smaller id), in increasing order.
  // Pair index k refers to the k-th entry.
  std::vector<EdgeId> pair_representatives() const;

  std::optional<VertexId> find_vertex(const std::string& name) const;
  bool is_loop(EdgeId e) const { return edges_[e].source == edges_[e].target; }

  void set_potential(VertexId v, Rational b) { vertices_.at(v).potential = std::move(b); }
  // Sets the weight of e and conj(weight) on its partner.
  void set_weight(EdgeId e, const GaussianRational& w);

  friend bool operator==(const Multigraph& a, const Multigraph& b);

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the involution, endpoint and conjugate-symmetry axioms.
ValidationReport validate(const Multigraph& g);

struct InducedSubgraph {
  Multigraph graph;
  std::vector<VertexId> vertex_map;  // new id -> id in the parent graph
  std::vector<EdgeId> edge_map;      // new id -> id in the parent graph
};

InducedSubgraph induced_subgraph(const Multigraph& g, const VertexSet& x);
Multigraph induced(const Multigraph& g, const VertexSet& x);

// True iff g has no closed non-backtracking walk.
bool is_acyclic(const Multigraph& g);
// True iff the subgraph induced by x is acyclic.
bool induces_acyclic(const Multigraph& g, const VertexSet& x);

std::vector<VertexSet> components(const Multigraph& g);
// Components of the subgraph induced by x, as subsets of V(g).
std::vector<VertexSet> components(const Multigraph& g, const VertexSet& x);
// Vertices outside x joined to x by at least one edge.
VertexSet boundary(const Multigraph& g, const VertexSet& x);

// Length of the shortest closed non-backtracking walk; nullopt means infinite.
// Walks of length >= cutoff are not searched (nullopt is returned if none shorter).
std::optional<std::size_t> girth(const Multigraph& g, std::size_t cutoff = SIZE_MAX);

bool is_bipartite(const Multigraph& g);

}  // namespace coverspec
