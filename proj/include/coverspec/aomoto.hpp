#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coverspec/multigraph.hpp"
#include "coverspec/real_roots.hpp"
#include "coverspec/spectral.hpp"

namespace coverspec {

struct CandidateSet {
  VertexSet x;
  std::vector<VertexSet> trees;  // components of the induced subgraph
  VertexSet boundary;
  long index = 0;                // cc(x) - |boundary|
};

// cc(X) - |boundary(X)|, with no acyclicity requirement.
long index(const Multigraph& g, const VertexSet& x);
CandidateSet make_candidate(const Multigraph& g, const VertexSet& x);

// Every X with induced(g, X) acyclic and positive index, exactly once, by a
// depth-first search with an index upper bound. Vertices carrying a loop are
// never included.
void for_each_candidate(const Multigraph& g, const std::function<void(const CandidateSet&)>& fn);
std::vector<CandidateSet> candidate_sets(const Multigraph& g);
// Same set by testing all 2^|V| subsets; for cross-checking only.
std::vector<CandidateSet> candidate_sets_brute_force(const Multigraph& g);

struct PointSpectrumCertificate {
  AlgebraicEigenvalue lambda;
  Rational mass;
  CandidateSet witness;
  std::vector<Polynomial> per_tree_charpolys;
};

struct PointSpectrumResult {
  // Set when g is acyclic: the cover is g itself and the spectrum is finite.
  bool finite_cover = false;
  Polynomial char_poly;
  std::vector<RealRoot> finite_spectrum;

  std::vector<PointSpectrumCertificate> certificates;  // ascending in lambda
  std::size_t candidates_examined = 0;
};

struct PointSpectrumOptions {
  bool oracle = false;                                      // enumerate all subsets
  std::function<bool(const CandidateSet&)> filter;          // optional restriction
  unsigned jobs = 1;
};

PointSpectrumResult point_spectrum(const Multigraph& g, const PointSpectrumOptions& options = {});

// Mass at lambda, zero when lambda carries no certificate.
Rational mass_at(const PointSpectrumResult& r, const AlgebraicEigenvalue& lambda);

// Candidate restriction to independent sets, valid when hunting lambda = 0
// with zero potential. Throws PreconditionError if some potential is nonzero.
std::function<bool(const CandidateSet&)> zero_potential_prune(const Multigraph& g);

// Bipartite graph obtained by contracting each witness tree T_i to a vertex
// t_i, keeping the boundary vertices and only the edges between trees and
// boundary, reweighted by a nowhere-zero unit kernel vector of T_i.
struct AuxGraph {
  NumericGraph graph;                     // vertices t_0.. then boundary vertices
  std::size_t tree_count = 0;
  std::vector<VertexId> boundary_vertices;  // ids in g, in aux order
  std::vector<Eigen::VectorXcd> zeta;     // per tree, indexed like the tree's vertex list
  std::vector<bool> zeta_nowhere_zero;
};

AuxGraph aux_graph(const Multigraph& g, const PointSpectrumCertificate& cert);

// "{lambda: {...}, mass: p/q, witness: [names], index: k}"
std::string to_string(const PointSpectrumCertificate& c, const Multigraph& g);

}  // namespace coverspec
