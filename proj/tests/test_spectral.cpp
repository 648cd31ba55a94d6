#include <doctest.h>

#include "coverspec/errors.hpp"
#include "coverspec/real_roots.hpp"
#include "coverspec/spectral.hpp"
#include "support.hpp"

using namespace coverspec;

TEST_CASE("jacobi matrix from the edge list") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    Multigraph g = testing::random_connected_multigraph(rng, 4, 6);
    testing::randomize(g, rng);
    JacobiMatrix a = jacobi_matrix(g);
    auto ref = testing::dense_jacobi(g);
    for (std::size_t r = 0; r < a.dim; ++r) {
      for (std::size_t c = 0; c < a.dim; ++c) CHECK(a.at(r, c) == ref[r][c]);
    }
    Eigen::MatrixXcd m = jacobi_numeric(g);
    CHECK((m - m.adjoint()).norm() == doctest::Approx(0));
  }
}

TEST_CASE("a loop adds twice its real part to the diagonal") {
  Multigraph g;
  g.add_vertex("a", 1);
  g.add_edge(0, 0, GaussianRational(2, 3));
  CHECK(jacobi_matrix(g).at(0, 0) == GaussianRational(5));
}

TEST_CASE("invalid graphs are rejected") {
  std::vector<Vertex> vs{{"a", 0}, {"b", 0}};
  std::vector<Edge> es{{0, 1, 1, GaussianRational(1, 1)}, {1, 0, 0, GaussianRational(1, 1)}};
  CHECK_THROWS_AS(jacobi_matrix(Multigraph::from_raw(vs, es)), PreconditionError);
}

TEST_CASE("tree characteristic polynomial matches a determinant oracle") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    int n = static_cast<int>(testing::uniform(rng, 1, 8));
    Multigraph t = testing::random_tree(rng, n, trial % 3 == 0);
    CHECK(tree_char_poly(t) == testing::char_poly_by_interpolation(t));
  }
  // A forest: the polynomial multiplies over components.
  Multigraph f = testing::path(3);
  f.add_vertex("x", 2);
  CHECK(tree_char_poly(f) == testing::char_poly_by_interpolation(f));
  CHECK_THROWS_AS(tree_char_poly(testing::cycle(3)), PreconditionError);
}

TEST_CASE("tree spectra depend only on weight moduli") {
  Multigraph a = testing::path(4), b = testing::path(4);
  a.set_weight(0, GaussianRational(3, 4));
  b.set_weight(0, GaussianRational(0, 5));
  a.set_weight(2, GaussianRational(0, -1));
  CHECK(tree_char_poly(a) == tree_char_poly(b));
}

TEST_CASE("gauge normalisation of a tree") {
  std::mt19937_64 rng(8);
  Multigraph t;
  for (int i = 0; i < 5; ++i) t.add_vertex("t" + std::to_string(i), testing::random_rational(rng));
  t.add_edge(0, 1, GaussianRational(3, 4));
  t.add_edge(1, 2, GaussianRational(0, -2));
  t.add_edge(1, 3, GaussianRational(-5, 12));
  t.add_edge(3, 4, GaussianRational(-1));
  GaugeNormalized gn = gauge_normalize(t);
  CHECK(gn.moduli_exact);
  REQUIRE(gn.has_phase);
  CHECK(gn.moduli.edge(0).weight == GaussianRational(5));
  CHECK(gn.moduli.edge(4).weight == GaussianRational(13));
  // U A U* equals the moduli Jacobi matrix, exactly.
  auto a = testing::dense_jacobi(t);
  auto m = testing::dense_jacobi(gn.moduli);
  for (std::size_t r = 0; r < 5; ++r) {
    for (std::size_t c = 0; c < 5; ++c) {
      CHECK(gn.exact_phase[r] * a[r][c] * gn.exact_phase[c].conj() == m[r][c]);
    }
  }
  Multigraph irr = testing::path(2);
  irr.set_weight(0, GaussianRational(1, 1));
  CHECK_FALSE(gauge_normalize(irr).moduli_exact);
  CHECK(gauge_normalize(irr).modulus_squared[0] == 2);
}

TEST_CASE("rational square roots") {
  CHECK(rational_sqrt(make_rational(9, 4)) == make_rational(3, 2));
  CHECK(!rational_sqrt(Rational(2)));
  CHECK(rational_sqrt(Rational(0)) == Rational(0));
}

TEST_CASE("hermitian eigensolver") {
  std::mt19937_64 rng(6);
  Multigraph g = testing::random_connected_multigraph(rng, 5, 7);
  testing::randomize(g, rng);
  Eigen::MatrixXcd m = jacobi_numeric(g);
  EigenSystem es = eig_hermitian(m);
  for (Eigen::Index j = 0; j < es.values.size(); ++j) {
    CHECK((m * es.vectors.col(j) - es.values(j) * es.vectors.col(j)).norm() < 1e-12);
    if (j) CHECK(es.values(j - 1) <= es.values(j));
  }
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(0, 1) = 1;
  CHECK_THROWS_AS(eig_hermitian(bad), PreconditionError);
  // Real path agrees with the complex path.
  Multigraph r = testing::petersen();
  Eigen::VectorXd v = eigenvalues_hermitian(jacobi_numeric(r));
  CHECK(v(0) == doctest::Approx(-2));
  CHECK(v(9) == doctest::Approx(3));
}
