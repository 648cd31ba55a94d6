#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "coverspec/multigraph.hpp"

namespace coverspec {

using Permutation = std::vector<std::uint32_t>;  // i -> perm[i]

Permutation inverse(const Permutation& p);
bool is_permutation(const Permutation& p);

// Permutation per edge pair. perm[k] acts on the k-th pair representative e;
// its partner carries the inverse.
struct LiftSpec {
  std::size_t degree = 1;
  std::vector<Permutation> perm;

  static LiftSpec identity(const Multigraph& g, std::size_t n);
  const Permutation& of_pair(std::size_t k) const { return perm.at(k); }
};

// Throws PreconditionError when the spec does not fit g.
void check_lift_spec(const Multigraph& g, const LiftSpec& spec);

// Text: "degree <n>" then lines "perm <pair-index> <perm>", where <perm> is
// either a word "[p0 p1 ...]" (0-based images) or cycles "(0 1)(2 3)". Pairs
// without a line get the identity.
LiftSpec parse_lift_spec(std::string_view text, const Multigraph& g);
std::string serialize_lift_spec(const LiftSpec& spec);

// The n-lift. Vertex (v, i) gets id v*n + i and name "<name>@<i>" (n > 1);
// pair k sheet i gets the ids 2(k*n + i) and 2(k*n + i) + 1, the first going
// from (source, i) to (target, perm(i)) of the k-th representative.
// Fibres are contiguous, so nested lifts project to the base by id / degree.
Multigraph lift(const Multigraph& g, const LiftSpec& spec);

// A finite cover of a base graph together with its degree over that base.
struct Cover {
  Multigraph graph;
  std::size_t degree = 1;
  std::string note;

  VertexId base_vertex(VertexId v) const { return static_cast<VertexId>(v / degree); }
};

// Uniform draw in [0, bound] by rejection; portable across standard libraries.
std::uint64_t draw_at_most(std::mt19937_64& rng, std::uint64_t bound);

// Independent uniform permutations per pair (Fisher-Yates on mt19937_64).
LiftSpec random_lift_spec(const Multigraph& g, std::size_t n, std::uint64_t seed);
Multigraph random_lift(const Multigraph& g, std::size_t n, std::uint64_t seed);

// Ball of radius r in the universal cover, rooted at the empty walk over u.
// Node 0 is the root; children of a node extend its walk by one edge other
// than the reversal of its last edge.
struct CoverBall {
  Multigraph tree;
  std::vector<VertexId> projection;  // node -> vertex of g
  std::vector<std::uint32_t> depth;
  std::vector<EdgeId> last_edge;     // edge of g ending the walk; unused for the root
};

inline constexpr std::size_t kDefaultBallCap = 1'000'000;

CoverBall cover_ball(const Multigraph& g, VertexId u, std::size_t r, std::size_t max_nodes = kDefaultBallCap);

// <delta_u, A_T^k delta_u> on the universal cover, exact.
GaussianRational cover_moment(const Multigraph& g, VertexId u, std::size_t k);
// Same, with the edge weights replaced by their moduli: a walk step contributes
// |a_e|^2 per outward/inward pair. Exact even when |a_e| is irrational.
GaussianRational cover_moment_moduli(const Multigraph& g, VertexId u, std::size_t k);
// Moments 0..k_max in one pass.
std::vector<GaussianRational> cover_moments(const Multigraph& g, VertexId u, std::size_t k_max);
std::vector<GaussianRational> cover_moments_moduli(const Multigraph& g, VertexId u, std::size_t k_max);

// (A^k)_{xx} for every vertex x of a finite graph, exact.
std::vector<GaussianRational> diagonal_moments(const Multigraph& h, std::size_t k);
// tr(A^k), exact.
GaussianRational trace_moment(const Multigraph& h, std::size_t k);
// [k][x] = (A^k)_{xx} and tr(A^k) for k = 0..k_max.
std::vector<std::vector<GaussianRational>> diagonal_moments_upto(const Multigraph& h, std::size_t k_max);
std::vector<GaussianRational> trace_moments(const Multigraph& h, std::size_t k_max);

enum class RepBasis {
  Orthonormal,  // Helmert basis of the sum-zero subspace; the result is Hermitian
  Difference,   // e_i - e_n; similar to the orthonormal version, not Hermitian
};

// Matrix of e -> rho(perm_e) on the sum-zero subspace, size (n-1) x (n-1).
Eigen::MatrixXd regular_rep(const Permutation& p, RepBasis basis = RepBasis::Orthonormal);

// A_{H/G} on l2(V) (x) C^n_0; index (v, j) -> v*(n-1) + j.
Eigen::MatrixXcd regular_rep_operator(const Multigraph& g, const LiftSpec& spec,
                                      RepBasis basis = RepBasis::Orthonormal);

}  // namespace coverspec
