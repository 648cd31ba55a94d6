#include <doctest.h>

#include <algorithm>

#include "coverspec/cover.hpp"
#include "coverspec/errors.hpp"
#include "coverspec/spectral.hpp"
#include "support.hpp"

using namespace coverspec;

namespace {

std::vector<double> sorted(const Eigen::VectorXd& v) {
  std::vector<double> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end());
  return out;
}

Rational binomial(int n, int k) {
  Rational r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("permutations") {
  Permutation p{2, 0, 1};
  CHECK(inverse(p) == Permutation{1, 2, 0});
  CHECK(is_permutation(p));
  CHECK_FALSE(is_permutation({0, 0, 1}));
}

TEST_CASE("lift structure") {
  Multigraph g = testing::complete_bipartite(2, 3);
  LiftSpec spec = random_lift_spec(g, 4, 17);
  Multigraph h = lift(g, spec);
  CHECK(h.vertex_count() == 20);
  CHECK(h.pair_count() == 24);
  CHECK(validate(h).ok());
  CHECK(h.vertex(5).name == "a1@1");
  // Every edge of the lift projects onto an edge of g with the same weight.
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    const Edge& he = h.edge(e);
    bool found = false;
    for (EdgeId f : g.out_edges(he.source / 4)) {
      found = found || (g.edge(f).target == he.target / 4 && g.edge(f).weight == he.weight);
    }
    CHECK(found);
  }
  CHECK(lift(g, LiftSpec::identity(g, 1)) == g);
  CHECK(random_lift_spec(g, 4, 17).perm == spec.perm);
  LiftSpec bad = spec;
  bad.perm[0][0] = bad.perm[0][1];
  CHECK_THROWS_AS(lift(g, bad), PreconditionError);
}

TEST_CASE("lift specification text") {
  Multigraph g = testing::cycle(3);
  LiftSpec spec = parse_lift_spec("degree 4\nperm 0 (0 1)(2 3)\nperm 2 [3 2 1 0]\n", g);
  CHECK(spec.degree == 4);
  CHECK(spec.perm[0] == Permutation{1, 0, 3, 2});
  CHECK(spec.perm[1] == Permutation{0, 1, 2, 3});
  CHECK(spec.perm[2] == Permutation{3, 2, 1, 0});
  CHECK(parse_lift_spec(serialize_lift_spec(spec), g).perm == spec.perm);
  CHECK_THROWS(parse_lift_spec("degree 2\nperm 7 [1 0]\n", g));
  CHECK_THROWS(parse_lift_spec("degree 2\nperm 0 [1 1]\n", g));
}

TEST_CASE("lift spectrum splits into old and new eigenvalues") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    Multigraph g = testing::random_connected_multigraph(rng, 4, 6);
    testing::randomize(g, rng);
    std::size_t n = 2 + trial % 4;
    LiftSpec spec = random_lift_spec(g, n, 100 + trial);
    Eigen::VectorXd whole = eigenvalues_hermitian(jacobi_numeric(lift(g, spec)));
    Eigen::VectorXd base = eigenvalues_hermitian(jacobi_numeric(g));
    Eigen::MatrixXcd rep = regular_rep_operator(g, spec);
    CHECK((rep - rep.adjoint()).norm() < 1e-12);
    Eigen::VectorXd fresh = eigenvalues_hermitian(rep);
    Eigen::VectorXd joined(base.size() + fresh.size());
    joined << base, fresh;
    auto a = sorted(whole), b = sorted(joined);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-9));

    // The difference basis gives a similar, non-Hermitian matrix.
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(regular_rep_operator(g, spec, RepBasis::Difference));
    std::vector<double> re;
    for (Eigen::Index i = 0; i < ces.eigenvalues().size(); ++i) {
      CHECK(std::abs(ces.eigenvalues()(i).imag()) < 1e-6);
      re.push_back(ces.eigenvalues()(i).real());
    }
    std::sort(re.begin(), re.end());
    auto f = sorted(fresh);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(re[i] == doctest::Approx(f[i]).epsilon(1e-6));
  }
}

TEST_CASE("regular representation is orthogonal") {
  Permutation p{3, 0, 4, 1, 2};
  Eigen::MatrixXd r = regular_rep(p);
  CHECK((r * r.transpose() - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-12);
  CHECK((regular_rep(inverse(p)) - r.transpose()).norm() < 1e-12);
}

TEST_CASE("cover balls") {
  // 3-regular: 1 + 3 + 3*2 + 3*4 nodes at radius 3.
  CoverBall b = cover_ball(testing::complete(4), 0, 3);
  CHECK(b.tree.vertex_count() == 22);
  CHECK(is_acyclic(b.tree));
  CHECK(std::count(b.depth.begin(), b.depth.end(), 3u) == 12);
  CHECK_THROWS_AS(cover_ball(testing::complete(4), 0, 30, 1000), BudgetExceeded);
}

TEST_CASE("universal cover moments against walk enumeration") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 15; ++trial) {
    Multigraph g = testing::random_connected_multigraph(rng, 3, 4);
    testing::randomize(g, rng);
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
      auto m = cover_moments(g, u, 6);
      for (std::size_t k = 0; k <= 6; ++k) {
        CHECK(m[k] == testing::universal_cover_walks(g, u, k));
        CHECK(m[k].is_real());
      }
      CHECK(cover_moment(g, u, 5) == m[5]);
      CHECK(cover_moments_moduli(g, u, 6) == m);
    }
  }
}

TEST_CASE("triangle moments are central binomials") {
  Multigraph c3 = testing::cycle(3);
  for (int k = 0; k <= 5; ++k) {
    for (VertexId u = 0; u < 3; ++u) {
      CHECK(cover_moment(c3, u, 2 * k) == GaussianRational(binomial(2 * k, k)));
      CHECK(cover_moment(c3, u, 2 * k + 1).is_zero());
    }
  }
}

TEST_CASE("finite-graph moments against dense powers") {
  std::mt19937_64 rng(31);
  Multigraph g = testing::random_connected_multigraph(rng, 4, 6);
  testing::randomize(g, rng);
  auto a = testing::dense_jacobi(g);
  std::size_t n = a.size();
  auto p = a;  // p = A^k
  for (std::size_t k = 1; k <= 5; ++k) {
    if (k > 1) {
      auto q = p;
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          GaussianRational s;
          for (std::size_t j = 0; j < n; ++j) s += q[r][j] * a[j][c];
          p[r][c] = s;
        }
      }
    }
    auto d = diagonal_moments(g, k);
    GaussianRational tr;
    for (std::size_t x = 0; x < n; ++x) {
      CHECK(d[x] == p[x][x]);
      tr += p[x][x];
    }
    CHECK(trace_moment(g, k) == tr);
    CHECK(trace_moments(g, 5)[k] == tr);
  }
}
