#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coverspec/aomoto.hpp"
#include "coverspec/cover.hpp"
#include "coverspec/girth_lifts.hpp"

namespace coverspec {

// ---------------------------------------------------------------------------
// Empirical spectral measures

struct Histogram {
  std::vector<double> edges;  // bins + 1 ascending edges
  std::vector<double> mass;   // per bin, sums to 1
};

struct Atom {
  double location = 0;
  double mass = 0;
  std::size_t count = 0;
};

struct SpectralMeasureEstimate {
  Histogram histogram;
  std::vector<Atom> atoms;
  std::size_t dimension = 0;
  std::size_t lift_degree = 1;
  std::optional<std::size_t> girth;  // nullopt: acyclic or not computed
};

struct DosOptions {
  std::size_t bins = 101;
  double range = 0;               // histogram on [-range, range]; 0 picks the spectral radius
  double atom_window = 1e-6;      // maximal gap inside a cluster
  std::size_t atom_min_count = 3;
  double atom_min_fraction = 0.005;
  bool compute_girth = true;
};

// Symmetric binning on [-R, R]; a negative value goes to the mirror image of
// the bin of its absolute value, so spectra symmetric about 0 give exactly
// mirrored bin masses.
Histogram histogram(const Eigen::VectorXd& values, std::size_t bins, double range);

// Clusters of sorted values with consecutive gaps <= window and at least
// max(min_count, ceil(min_fraction * n)) members (capped at n). When
// base_vertices > 0 a cluster must also carry mass >= 1 / (2 base_vertices),
// the smallest possible atom of a graph on that many vertices.
std::vector<Atom> detect_atoms(const Eigen::VectorXd& values, const DosOptions& opt, std::size_t base_vertices = 0);

SpectralMeasureEstimate empirical_measure(const Multigraph& h, const DosOptions& opt = {});
// As above, with the base size known from the cover.
SpectralMeasureEstimate empirical_measure(const Cover& c, const DosOptions& opt = {});

struct AtomMassEstimate {
  double global = 0;                // vertex average of the per-vertex masses
  std::vector<double> per_vertex;   // indexed by base vertex
  std::size_t eigenvalue_count = 0; // eigenvalues within the window
};

// mu_u{lambda} estimated as the fibre average of sum |eta(x)|^2 over
// eigenvectors of the cover with eigenvalue within `window` of lambda.
AtomMassEstimate atom_mass_estimate(const Multigraph& g, double lambda, const Cover& cover, double window = 1e-6);

struct AomotoSetEstimate {
  VertexSet set;
  std::vector<double> masses;
  double noise = 0;           // largest mass left out of the set
  double threshold = 0;
  bool inconclusive = false;  // some mass lies in the ambiguous band around the threshold
};

// Approximate Aomoto set: vertices whose estimated mass exceeds a tenth of the
// largest one. Empty when the global mass is below 1/(2|V|), since a genuine
// atom carries at least 1/|V|; finite lifts leave small spurious kernels.
AomotoSetEstimate aomoto_set_estimate(const Multigraph& g, double lambda, const Cover& cover,
                                      double window = 1e-6);

// ---------------------------------------------------------------------------
// Exact moment checks

struct MomentRow {
  std::size_t k = 0;
  GaussianRational cover;  // average over base vertices of the universal-cover moment
  GaussianRational lift;   // normalised trace on the finite lift
  bool equal = false;
};

struct MomentReport {
  bool ok = true;
  std::size_t lift_vertices = 0;
  std::size_t lift_degree = 1;
  std::optional<std::size_t> lift_girth;
  std::string note;
  std::vector<MomentRow> rows;
};

// Compares universal-cover moments with trace moments of a lift of girth
// > k_max, exactly, for k = 0..k_max.
MomentReport moment_convergence_check(const Multigraph& g, std::size_t k_max,
                                      std::size_t max_vertices = kDefaultLiftBudget);

struct GaugeReport {
  bool ok = true;
  std::vector<std::string> mismatches;
};

// cover moments of g against the moduli-only walk sums (and against the
// moduli graph when its weights are rational), for every vertex and k <= k_max.
GaugeReport gauge_invariance_check(const Multigraph& g, std::size_t k_max);

std::string to_string(const MomentReport& r);

// ---------------------------------------------------------------------------
// Stability radius and perturbations

enum class DeltaScope {
  CandidateTrees,   // trees of sets with positive index
  AllInducedTrees,  // every connected induced acyclic subgraph
};

struct DeltaRadius {
  bool infinite = true;       // fewer than two distinct points
  Rational lower_bound;       // certified: Delta >= lower_bound
  double estimate = 0;
  std::size_t points = 0;     // distinct tree eigenvalues
  std::size_t trees = 0;      // distinct tree characteristic polynomials
};

// Minimum gap among the eigenvalues of the trees in the given scope.
DeltaRadius delta_radius(const Multigraph& g, DeltaScope scope = DeltaScope::CandidateTrees);

inline constexpr unsigned kGridBits = 20;

// Shifts the real and imaginary part of each pair weight and each potential
// by an independent uniform grid point k / 2^20 with |k| <= epsilon * 2^20.
Multigraph perturb(const Multigraph& g, const Rational& epsilon, std::mt19937_64& rng);

// A random grid direction scaled to Euclidean norm <= radius, exactly, in the
// parameter space (Re a, Im a per pair, b per vertex).
Multigraph perturb_within_norm(const Multigraph& g, const Rational& radius, std::mt19937_64& rng);

struct PerturbationReport {
  std::size_t samples = 0;
  Rational epsilon;
  std::uint64_t seed = 0;
  std::size_t count_with_point_spectrum = 0;
  std::vector<std::size_t> offending;  // sample indices, ascending
  std::optional<DeltaRadius> delta;
};

struct ProbeOptions {
  unsigned jobs = 0;
  bool compute_delta = true;
  DeltaScope scope = DeltaScope::AllInducedTrees;
};

// N perturbations drawn sequentially from one generator, evaluated in parallel.
PerturbationReport perturbation_probe(const Multigraph& g, const Rational& epsilon, std::size_t samples,
                                      std::uint64_t seed, const ProbeOptions& opt = {});

struct SubDeltaReport {
  DeltaRadius delta;
  Rational radius;  // perturbation norm bound used
  std::size_t samples = 0;
  std::size_t count_with_point_spectrum = 0;
  bool base_has_point_spectrum = false;
};

// Perturbations of norm <= Delta/4 (comfortably below Delta/2 in eigenvalue
// shift) of g, which should have empty point spectrum.
SubDeltaReport sub_delta_probe(const Multigraph& g, std::size_t samples, std::uint64_t seed,
                               DeltaScope scope = DeltaScope::AllInducedTrees, unsigned jobs = 0);

std::string to_string(const PerturbationReport& r);

// ---------------------------------------------------------------------------
// Output

void write_histogram_csv(std::ostream& os, const Histogram& h);
void write_atoms_csv(std::ostream& os, const std::vector<Atom>& atoms);
// Columns: bin centre, mass / bin width, bin width.
void write_histogram_gnuplot(std::ostream& os, const Histogram& h);

}  // namespace coverspec
