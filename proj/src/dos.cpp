#include "coverspec/dos.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>

#include "coverspec/errors.hpp"
#include "coverspec/parallel.hpp"
#include "coverspec/spectral.hpp"

namespace coverspec {

Histogram histogram(const Eigen::VectorXd& values, std::size_t bins, double range) {
  if (bins == 0) throw PreconditionError("histogram needs at least one bin");
  if (!(range > 0)) throw PreconditionError("histogram range must be positive");
  Histogram h;
  h.edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    h.edges[i] = -range + 2 * range * static_cast<double>(i) / static_cast<double>(bins);
  }
  for (std::size_t i = 0; 2 * i < bins; ++i) h.edges[i] = -h.edges[bins - i];
  if (bins % 2 == 0) h.edges[bins / 2] = 0;

  auto upper_bin = [&](double a) {
    auto j = static_cast<std::size_t>(std::floor((a + range) / (2 * range) * static_cast<double>(bins)));
    return std::min(j, bins - 1);
  };
  std::vector<std::size_t> count(bins, 0);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    double x = values(i);
    if (std::abs(x) > range * (1 + 1e-12)) throw PreconditionError("histogram: value outside the range");
    // Counts are in halves so an exact zero on the central edge splits evenly.
    if (x == 0 && bins % 2 == 0) {
      ++count[bins / 2 - 1];
      ++count[bins / 2];
    } else {
      count[x >= 0 ? upper_bin(x) : bins - 1 - upper_bin(-x)] += 2;
    }
  }
  h.mass.resize(bins);
  auto n = 2 * static_cast<double>(values.size());
  for (std::size_t i = 0; i < bins; ++i) h.mass[i] = values.size() ? static_cast<double>(count[i]) / n : 0.0;
  return h;
}

std::vector<Atom> detect_atoms(const Eigen::VectorXd& values, const DosOptions& opt, std::size_t base_vertices) {
  std::vector<Atom> atoms;
  auto n = static_cast<std::size_t>(values.size());
  if (n == 0) return atoms;
  std::vector<double> v(values.data(), values.data() + n);
  std::sort(v.begin(), v.end());
  std::size_t min_count =
      std::max(opt.atom_min_count, static_cast<std::size_t>(std::ceil(opt.atom_min_fraction * static_cast<double>(n))));
  min_count = std::min(min_count, n);
  double min_mass = base_vertices ? 1.0 / (2.0 * static_cast<double>(base_vertices)) : 0.0;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i < n && v[i] - v[i - 1] <= opt.atom_window) continue;
    std::size_t c = i - start;
    double mass = static_cast<double>(c) / static_cast<double>(n);
    if (c >= min_count && mass >= min_mass) {
      double sum = 0;
      for (std::size_t j = start; j < i; ++j) sum += v[j];
      atoms.push_back({sum / static_cast<double>(c), mass, c});
    }
    start = i;
  }
  return atoms;
}

namespace {

SpectralMeasureEstimate measure_impl(const Multigraph& h, const DosOptions& opt, std::size_t base_vertices,
                                     std::size_t degree) {
  if (auto report = validate(h); !report.ok()) throw PreconditionError("invalid graph: " + report.violations.front());
  if (h.vertex_count() > kDefaultLiftBudget) {
    throw BudgetExceeded("eigensolve of " + std::to_string(h.vertex_count()) + " vertices exceeds the budget");
  }
  SpectralMeasureEstimate est;
  est.dimension = h.vertex_count();
  est.lift_degree = degree;
  Eigen::VectorXd values = eigenvalues_hermitian(jacobi_numeric(h));
  double range = opt.range;
  if (!(range > 0)) {
    double r = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
    range = r > 0 ? r * (1 + 1e-9) : 1.0;
  }
  est.histogram = histogram(values, opt.bins, range);
  est.atoms = detect_atoms(values, opt, base_vertices);
  if (opt.compute_girth) est.girth = girth(h);
  return est;
}

}  // namespace

SpectralMeasureEstimate empirical_measure(const Multigraph& h, const DosOptions& opt) {
  return measure_impl(h, opt, 0, 1);
}

SpectralMeasureEstimate empirical_measure(const Cover& c, const DosOptions& opt) {
  return measure_impl(c.graph, opt, c.graph.vertex_count() / c.degree, c.degree);
}

AtomMassEstimate atom_mass_estimate(const Multigraph& g, double lambda, const Cover& cover, double window) {
  std::size_t nv = g.vertex_count();
  if (cover.degree == 0 || cover.graph.vertex_count() != nv * cover.degree) {
    throw PreconditionError("atom_mass_estimate: cover does not have |V(g)| * degree vertices");
  }
  AtomMassEstimate out;
  out.per_vertex.assign(nv, 0.0);
  EigenSystem es = eig_hermitian(jacobi_numeric(cover.graph));
  for (Eigen::Index j = 0; j < es.values.size(); ++j) {
    if (std::abs(es.values(j) - lambda) > window) continue;
    ++out.eigenvalue_count;
    for (Eigen::Index x = 0; x < es.vectors.rows(); ++x) {
      out.per_vertex[cover.base_vertex(static_cast<VertexId>(x))] += std::norm(es.vectors(x, j));
    }
  }
  for (double& m : out.per_vertex) m /= static_cast<double>(cover.degree);
  for (double m : out.per_vertex) out.global += m;
  if (nv) out.global /= static_cast<double>(nv);
  return out;
}

AomotoSetEstimate aomoto_set_estimate(const Multigraph& g, double lambda, const Cover& cover, double window) {
  AomotoSetEstimate out;
  out.set = VertexSet(g.vertex_count());
  out.masses = atom_mass_estimate(g, lambda, cover, window).per_vertex;
  double max = out.masses.empty() ? 0.0 : *std::max_element(out.masses.begin(), out.masses.end());
  double global = 0;
  for (double m : out.masses) global += m;
  if (!out.masses.empty()) global /= static_cast<double>(out.masses.size());
  if (out.masses.empty() || global < 1.0 / (2.0 * static_cast<double>(out.masses.size()))) {
    out.noise = max;
    out.threshold = max;
    return out;
  }
  out.threshold = 0.1 * max;
  for (VertexId v = 0; v < out.masses.size(); ++v) {
    double m = out.masses[v];
    if (m > out.threshold) {
      out.set.insert(v);
    } else {
      out.noise = std::max(out.noise, m);
    }
    if (m > 0.05 * max && m < 0.2 * max) out.inconclusive = true;
  }
  return out;
}

MomentReport moment_convergence_check(const Multigraph& g, std::size_t k_max, std::size_t max_vertices) {
  MomentReport rep;
  std::size_t nv = g.vertex_count();
  if (nv == 0) throw PreconditionError("moment_convergence_check: empty graph");
  Cover cover = cover_with_girth_above(g, k_max, max_vertices);
  rep.lift_vertices = cover.graph.vertex_count();
  rep.lift_degree = cover.degree;
  rep.lift_girth = girth(cover.graph);
  rep.note = cover.note;

  std::vector<GaussianRational> avg(k_max + 1);
  for (VertexId u = 0; u < nv; ++u) {
    auto m = cover_moments(g, u, k_max);
    for (std::size_t k = 0; k <= k_max; ++k) avg[k] += m[k];
  }
  auto traces = trace_moments(cover.graph, k_max);
  GaussianRational inv_base(Rational(1, static_cast<long>(nv)));
  GaussianRational inv_lift(Rational(1, static_cast<long>(rep.lift_vertices)));
  for (std::size_t k = 0; k <= k_max; ++k) {
    MomentRow row{k, avg[k] * inv_base, traces[k] * inv_lift, false};
    row.equal = row.cover == row.lift;
    rep.ok = rep.ok && row.equal;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

GaugeReport gauge_invariance_check(const Multigraph& g, std::size_t k_max) {
  GaugeReport rep;
  GaugeNormalized gn = gauge_normalize(g);
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    auto m = cover_moments(g, u, k_max);
    auto mod = cover_moments_moduli(g, u, k_max);
    std::vector<GaussianRational> normal;
    if (gn.moduli_exact) normal = cover_moments(gn.moduli, u, k_max);
    for (std::size_t k = 0; k <= k_max; ++k) {
      if (m[k] != mod[k] || (gn.moduli_exact && m[k] != normal[k])) {
        rep.ok = false;
        rep.mismatches.push_back("vertex " + g.vertex(u).name + ", k = " + std::to_string(k) + ": " +
                                 to_string(m[k]) + " vs " + to_string(mod[k]));
      }
    }
  }
  return rep;
}

std::string to_string(const MomentReport& r) {
  std::ostringstream os;
  os << "lift: " << r.lift_vertices << " vertices, degree " << r.lift_degree << ", girth "
     << (r.lift_girth ? std::to_string(*r.lift_girth) : std::string("inf"));
  if (!r.note.empty()) os << " (" << r.note << ")";
  os << "\nk,cover,lift,equal\n";
  for (const auto& row : r.rows) {
    os << row.k << ',' << to_string(row.cover) << ',' << to_string(row.lift) << ',' << (row.equal ? "yes" : "no")
       << '\n';
  }
  os << "result: " << (r.ok ? "ok" : "MISMATCH") << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

std::vector<VertexSet> induced_trees(const Multigraph& g) {
  std::size_t n = g.vertex_count();
  if (n > 20) throw BudgetExceeded("induced-tree enumeration limited to 20 vertices");
  std::vector<VertexSet> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    VertexSet x(n);
    for (VertexId v = 0; v < n; ++v) {
      if ((mask >> v) & 1u) x.insert(v);
    }
    if (induces_acyclic(g, x) && components(g, x).size() == 1) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

DeltaRadius delta_radius(const Multigraph& g, DeltaScope scope) {
  std::vector<VertexSet> trees;
  if (scope == DeltaScope::AllInducedTrees) {
    trees = induced_trees(g);
  } else {
    for_each_candidate(g, [&](const CandidateSet& c) {
      trees.insert(trees.end(), c.trees.begin(), c.trees.end());
    });
  }
  std::set<std::string> seen;
  std::vector<Polynomial> polys;
  for (const VertexSet& t : trees) {
    Polynomial p = tree_char_poly(induced(g, t));
    if (seen.insert(to_string(p)).second) polys.push_back(std::move(p));
  }
  std::vector<AlgebraicEigenvalue> points;
  for (const Polynomial& p : polys) {
    for (RealRoot& r : isolate_real_roots(p)) points.push_back(std::move(r.value));
  }
  std::sort(points.begin(), points.end(),
            [](const AlgebraicEigenvalue& a, const AlgebraicEigenvalue& b) { return compare(a, b) < 0; });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const AlgebraicEigenvalue& a, const AlgebraicEigenvalue& b) { return compare(a, b) == 0; }),
               points.end());

  DeltaRadius d;
  d.trees = polys.size();
  d.points = points.size();
  if (points.size() < 2) return d;
  d.infinite = false;
  d.estimate = INFINITY;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    Rational lb = distance_lower_bound(points[i], points[i + 1]);
    if (i == 0 || lb < d.lower_bound) d.lower_bound = lb;
    d.estimate = std::min(d.estimate, points[i + 1].float_hint - points[i].float_hint);
  }
  return d;
}

namespace {

Rational grid_step(std::mt19937_64& rng, const Integer& bound) {
  if (bound == 0) return 0;
  std::uint64_t b = bound.get_ui();
  auto k = static_cast<long>(draw_at_most(rng, 2 * b)) - static_cast<long>(b);
  return make_rational(k, 1L << kGridBits);
}

}  // namespace

Multigraph perturb(const Multigraph& g, const Rational& epsilon, std::mt19937_64& rng) {
  if (sgn(epsilon) < 0) throw PreconditionError("perturb: epsilon must be nonnegative");
  Rational scaled = epsilon * Rational(Integer(1) << kGridBits);
  Integer bound = scaled.get_num() / scaled.get_den();
  if (bound > Integer(1) << 40) throw PreconditionError("perturb: epsilon too large");
  Multigraph h = g;
  for (EdgeId e : g.pair_representatives()) {
    GaussianRational w = g.edge(e).weight;
    w.re += grid_step(rng, bound);
    w.im += grid_step(rng, bound);
    h.set_weight(e, w);
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) h.set_potential(v, g.vertex(v).potential + grid_step(rng, bound));
  return h;
}

Multigraph perturb_within_norm(const Multigraph& g, const Rational& radius, std::mt19937_64& rng) {
  Integer full = Integer(1) << kGridBits;
  std::vector<long> k;
  std::size_t count = 2 * g.pair_count() + g.vertex_count();
  for (std::size_t i = 0; i < count; ++i) {
    k.push_back(static_cast<long>(draw_at_most(rng, 2 * full.get_ui())) - static_cast<long>(full.get_ui()));
  }
  Integer sum = 0;
  for (long x : k) sum += Integer(x) * x;
  if (sum == 0) return g;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), sum.get_mpz_t());
  Rational scale = radius / Rational(root + 1);  // root + 1 > sqrt(sum)

  Multigraph h = g;
  std::size_t i = 0;
  for (EdgeId e : g.pair_representatives()) {
    GaussianRational w = g.edge(e).weight;
    w.re += scale * k[i++];
    w.im += scale * k[i++];
    h.set_weight(e, w);
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) h.set_potential(v, g.vertex(v).potential + scale * k[i++]);
  return h;
}

namespace {

std::vector<bool> has_point_spectrum(const std::vector<Multigraph>& graphs, unsigned jobs) {
  std::vector<char> hit(graphs.size(), 0);
  PointSpectrumOptions opt;
  opt.jobs = 1;
  parallel_for(graphs.size(), jobs, [&](std::size_t i) {
    hit[i] = point_spectrum(graphs[i], opt).certificates.empty() ? 0 : 1;
  });
  return {hit.begin(), hit.end()};
}

}  // namespace

PerturbationReport perturbation_probe(const Multigraph& g, const Rational& epsilon, std::size_t samples,
                                      std::uint64_t seed, const ProbeOptions& opt) {
  if (sgn(epsilon) < 0) throw PreconditionError("perturbation_probe: epsilon must be nonnegative");
  PerturbationReport rep;
  rep.samples = samples;
  rep.epsilon = epsilon;
  rep.seed = seed;
  if (samples == 0) return rep;
  std::mt19937_64 rng(seed);
  std::vector<Multigraph> graphs;
  for (std::size_t i = 0; i < samples; ++i) graphs.push_back(perturb(g, epsilon, rng));
  auto hit = has_point_spectrum(graphs, opt.jobs);
  for (std::size_t i = 0; i < samples; ++i) {
    if (hit[i]) rep.offending.push_back(i);
  }
  rep.count_with_point_spectrum = rep.offending.size();
  if (opt.compute_delta) rep.delta = delta_radius(g, opt.scope);
  return rep;
}

SubDeltaReport sub_delta_probe(const Multigraph& g, std::size_t samples, std::uint64_t seed, DeltaScope scope,
                               unsigned jobs) {
  SubDeltaReport rep;
  rep.samples = samples;
  rep.delta = delta_radius(g, scope);
  rep.base_has_point_spectrum = !point_spectrum(g).certificates.empty();
  if (rep.delta.infinite) throw PreconditionError("sub_delta_probe: fewer than two tree eigenvalues");
  rep.radius = rep.delta.lower_bound / 4;
  std::mt19937_64 rng(seed);
  std::vector<Multigraph> graphs;
  for (std::size_t i = 0; i < samples; ++i) graphs.push_back(perturb_within_norm(g, rep.radius, rng));
  auto hit = has_point_spectrum(graphs, jobs);
  rep.count_with_point_spectrum = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), true));
  return rep;
}

std::string to_string(const PerturbationReport& r) {
  std::ostringstream os;
  os << "seed: " << r.seed << "\nsamples: " << r.samples << "\nepsilon: " << to_string(r.epsilon)
     << "\ncount_with_point_spectrum: " << r.count_with_point_spectrum << "\noffending: [";
  for (std::size_t i = 0; i < r.offending.size(); ++i) os << (i ? ", " : "") << r.offending[i];
  os << "]\n";
  if (r.delta) {
    if (r.delta->infinite) {
      os << "delta_radius: inf\n";
    } else {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12g", r.delta->estimate);
      os << "delta_radius: >= " << to_string(r.delta->lower_bound) << " (" << buf << ")\n";
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x == 0 ? 0.0 : x);  // no "-0"
  return buf;
}

}  // namespace

void write_histogram_csv(std::ostream& os, const Histogram& h) {
  os << "bin_lo,bin_hi,mass\n";
  for (std::size_t i = 0; i < h.mass.size(); ++i) {
    os << fmt(h.edges[i]) << ',' << fmt(h.edges[i + 1]) << ',' << fmt(h.mass[i]) << '\n';
  }
}

void write_atoms_csv(std::ostream& os, const std::vector<Atom>& atoms) {
  os << "location,mass\n";
  for (const Atom& a : atoms) os << fmt(a.location) << ',' << fmt(a.mass) << '\n';
}

void write_histogram_gnuplot(std::ostream& os, const Histogram& h) {
  os << "# centre density width\n";
  for (std::size_t i = 0; i < h.mass.size(); ++i) {
    double w = h.edges[i + 1] - h.edges[i];
    os << fmt((h.edges[i] + h.edges[i + 1]) / 2) << ' ' << fmt(h.mass[i] / w) << ' ' << fmt(w) << '\n';
  }
}

}  // namespace coverspec
