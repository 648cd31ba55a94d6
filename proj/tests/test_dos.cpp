#include <doctest.h>

#include <numeric>
#include <sstream>

#include "coverspec/dos.hpp"
#include "coverspec/errors.hpp"
#include "support.hpp"

using namespace coverspec;

namespace {

double total(const Histogram& h) { return std::accumulate(h.mass.begin(), h.mass.end(), 0.0); }

}  // namespace

TEST_CASE("histograms") {
  Eigen::VectorXd v(6);
  v << -1, -0.5, 0, 0, 0.5, 1;
  for (std::size_t bins : {1u, 4u, 5u, 11u}) {
    Histogram h = histogram(v, bins, 1);
    CHECK(h.edges.size() == bins + 1);
    CHECK(total(h) == doctest::Approx(1).epsilon(1e-12));
    for (std::size_t i = 0; i < bins; ++i) {
      CHECK(h.mass[i] == h.mass[bins - 1 - i]);
      CHECK(h.edges[i] == -h.edges[bins - i]);
    }
  }
  CHECK_THROWS_AS(histogram(v, 3, 0.5), PreconditionError);
}

TEST_CASE("a single vertex is one atom") {
  Multigraph g;
  g.add_vertex("x", 3);
  SpectralMeasureEstimate est = empirical_measure(g);
  REQUIRE(est.atoms.size() == 1);
  CHECK(est.atoms[0].location == doctest::Approx(3));
  CHECK(est.atoms[0].mass == 1);
  CHECK(!est.girth);
}

TEST_CASE("atom detection thresholds") {
  Eigen::VectorXd v(10);
  v << 0, 0, 0, 1, 2, 3, 3 + 1e-8, 4, 5, 6;
  DosOptions opt;
  auto atoms = detect_atoms(v, opt);
  REQUIRE(atoms.size() == 1);
  CHECK(atoms[0].count == 3);
  CHECK(atoms[0].mass == doctest::Approx(0.3));
  opt.atom_min_count = 2;
  CHECK(detect_atoms(v, opt).size() == 2);
  CHECK(detect_atoms(v, opt, 1).size() == 0);  // below 1/2
}

TEST_CASE("random lift of K_{2,3} has an atom at zero") {
  Multigraph g = testing::complete_bipartite(2, 3);
  Cover c{random_lift(g, 200, 1), 200, ""};
  SpectralMeasureEstimate est = empirical_measure(c);
  CHECK(est.dimension == 1000);
  CHECK(total(est.histogram) == doctest::Approx(1).epsilon(1e-12));
  REQUIRE(est.atoms.size() == 1);
  CHECK(std::abs(est.atoms[0].location) < 1e-6);
  CHECK(est.atoms[0].mass == doctest::Approx(0.2).epsilon(0.1));
  // Bipartite lift: histogram symmetric about zero.
  for (std::size_t i = 0; i < est.histogram.mass.size(); ++i) {
    CHECK(std::abs(est.histogram.mass[i] - est.histogram.mass[est.histogram.mass.size() - 1 - i]) <= 1e-12);
  }

  AtomMassEstimate m = atom_mass_estimate(g, 0, c);
  CHECK(m.global == doctest::Approx(0.2).epsilon(0.1));
  for (VertexId v = 0; v < 2; ++v) CHECK(m.per_vertex[v] < 0.01);
  for (VertexId v = 2; v < 5; ++v) CHECK(m.per_vertex[v] == doctest::Approx(1.0 / 3).epsilon(0.1));

  AomotoSetEstimate s = aomoto_set_estimate(g, 0, c);
  CHECK(s.set == VertexSet::of(5, {2, 3, 4}));
  CHECK_FALSE(s.inconclusive);
}

TEST_CASE("random lift of a triangle has no atoms") {
  Multigraph g = testing::cycle(3);
  Cover c{random_lift(g, 100, 4), 100, ""};
  SpectralMeasureEstimate est = empirical_measure(c);
  CHECK(est.atoms.empty());
  CHECK(est.histogram.edges.back() <= 2 + 1e-6);
  AomotoSetEstimate s = aomoto_set_estimate(g, 0, c);
  CHECK(s.set.empty());
  AtomMassEstimate m = atom_mass_estimate(g, 0.123456, c);
  CHECK(m.eigenvalue_count == 0);
  CHECK(m.global == 0);
}

TEST_CASE("loop vertex with the identity lift") {
  Multigraph g;
  g.add_vertex("x", 2);
  g.add_edge(0, 0, GaussianRational(0, 1));  // contributes i - i = 0
  AtomMassEstimate m = atom_mass_estimate(g, 2, Cover{g, 1, ""});
  CHECK(m.global == doctest::Approx(1));
}

TEST_CASE("moment convergence") {
  MomentReport c3 = moment_convergence_check(testing::cycle(3), 4);
  CHECK(c3.ok);
  CHECK(c3.rows[4].cover == GaussianRational(6));
  CHECK(c3.rows[0].lift == GaussianRational(1));
  CHECK(*c3.lift_girth > 4);

  Multigraph g = testing::cycle_with_loop();
  g.set_potential(1, 3);
  MomentReport r = moment_convergence_check(g, 8);
  CHECK(r.ok);
  CHECK(r.rows[1].cover == GaussianRational(1));  // mean potential (1 + 3) / 4; the loop unfolds in the cover
  CHECK(to_string(r).find("result: ok") != std::string::npos);

  Multigraph z = testing::complete_bipartite(2, 3);
  MomentReport zr = moment_convergence_check(z, 7);
  for (const auto& row : zr.rows) {
    if (row.k % 2) CHECK(row.cover.is_zero());
  }
}

TEST_CASE("gauge invariance") {
  Multigraph c3 = testing::cycle(3);
  c3.set_weight(0, GaussianRational(0, 1));
  CHECK(gauge_invariance_check(c3, 8).ok);
  std::mt19937_64 rng(3);
  Multigraph g = testing::complete_bipartite(2, 3);
  testing::randomize(g, rng);
  CHECK(gauge_invariance_check(g, 6).ok);
}

TEST_CASE("delta radius") {
  CHECK(delta_radius(testing::cycle(3)).infinite);
  Multigraph k = testing::complete_bipartite(2, 3);
  CHECK(delta_radius(k).infinite);  // only the value 0 occurs
  DeltaRadius d = delta_radius(k, DeltaScope::AllInducedTrees);
  CHECK_FALSE(d.infinite);
  double truth = std::sqrt(3.0) - std::sqrt(2.0);
  CHECK(to_double(d.lower_bound) <= truth);
  CHECK(to_double(d.lower_bound) >= 0.31);
  CHECK(d.estimate == doctest::Approx(truth));
  CHECK(d.points == 7);

  Multigraph twisted = k;
  twisted.set_weight(0, GaussianRational(0, -1));
  twisted.set_weight(4, GaussianRational(-1));
  DeltaRadius t = delta_radius(twisted, DeltaScope::AllInducedTrees);
  CHECK(t.lower_bound == d.lower_bound);
}

TEST_CASE("perturbations") {
  Multigraph k = testing::complete_bipartite(2, 3);
  std::mt19937_64 a(5), b(5);
  Multigraph p = perturb(k, make_rational(1, 10), a);
  CHECK(p == perturb(k, make_rational(1, 10), b));
  CHECK(validate(p).ok());
  for (EdgeId e : k.pair_representatives()) {
    GaussianRational d = p.edge(e).weight - k.edge(e).weight;
    CHECK(abs(d.re) <= make_rational(1, 10));
    CHECK(abs(d.im) <= make_rational(1, 10));
    CHECK(Rational(d.re * (1 << 20)).get_den() == 1);
  }
  std::mt19937_64 c(1);
  CHECK(perturb(k, 0, c) == k);

  std::mt19937_64 r(8);
  Rational radius = make_rational(1, 7);
  Multigraph q = perturb_within_norm(k, radius, r);
  Rational norm2 = 0;
  for (EdgeId e : k.pair_representatives()) norm2 += (q.edge(e).weight - k.edge(e).weight).norm();
  for (VertexId v = 0; v < k.vertex_count(); ++v) {
    Rational d = q.vertex(v).potential - k.vertex(v).potential;
    norm2 += d * d;
  }
  CHECK(norm2 <= radius * radius);
  CHECK(norm2 > 0);
}

TEST_CASE("perturbation probe") {
  Multigraph k = testing::complete_bipartite(2, 3);
  CHECK(perturbation_probe(k, make_rational(1, 10), 0, 1).samples == 0);
  PerturbationReport zero = perturbation_probe(k, 0, 5, 1);
  CHECK(zero.count_with_point_spectrum == 5);  // every sample is K_{2,3} itself
  PerturbationReport rep = perturbation_probe(k, make_rational(1, 10), 30, 1);
  CHECK(rep.count_with_point_spectrum == 0);
  CHECK(rep.offending.empty());
  REQUIRE(rep.delta);
  CHECK(to_string(rep) == to_string(perturbation_probe(k, make_rational(1, 10), 30, 1, {4, true, DeltaScope::AllInducedTrees})));
}

TEST_CASE("sub-delta perturbations of a point-spectrum-free instance") {
  Multigraph k = testing::complete_bipartite(2, 3);
  std::mt19937_64 rng(99);
  Multigraph g0 = perturb(k, make_rational(1, 10), rng);
  SubDeltaReport rep = sub_delta_probe(g0, 10, 3);
  CHECK_FALSE(rep.base_has_point_spectrum);
  CHECK(rep.count_with_point_spectrum == 0);
  CHECK(rep.radius * 4 == rep.delta.lower_bound);
}

TEST_CASE("csv output") {
  Histogram h = histogram(Eigen::Vector2d(-1, 1), 2, 1);
  std::ostringstream os;
  write_histogram_csv(os, h);
  CHECK(os.str() == "bin_lo,bin_hi,mass\n-1,0,0.5\n0,1,0.5\n");
  std::ostringstream at;
  write_atoms_csv(at, {{0.5, 0.25, 3}});
  CHECK(at.str() == "location,mass\n0.5,0.25\n");
  std::ostringstream gp;
  write_histogram_gnuplot(gp, h);
  CHECK(gp.str() == "# centre density width\n-0.5 0.5 1\n0.5 0.5 1\n");
}
