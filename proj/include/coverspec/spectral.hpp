#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "coverspec/multigraph.hpp"
#include "coverspec/polynomial.hpp"

namespace coverspec {

using Complex = std::complex<double>;

// Exact Jacobi matrix: (u,u) = b_u + loop contributions, (u,v) = sum of a_e over
// edges e with source v and target u.
struct JacobiMatrix {
  std::size_t dim = 0;
  std::vector<GaussianRational> entries;  // row-major

  const GaussianRational& at(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }
  GaussianRational& at(std::size_t r, std::size_t c) { return entries[r * dim + c]; }
  bool is_real() const;
  Eigen::MatrixXcd numeric() const;
};

JacobiMatrix jacobi_matrix(const Multigraph& g);
Eigen::MatrixXcd jacobi_numeric(const Multigraph& g);
// Real symmetric form; precondition: every weight is real.
Eigen::MatrixXd jacobi_numeric_real(const Multigraph& g);
bool has_real_weights(const Multigraph& g);

// Same topology as a Multigraph, with floating weights and potentials. Used for
// reweighted graphs whose weights are not Gaussian rationals.
struct NumericGraph {
  Multigraph topology;  // exact weights ignored
  std::vector<Complex> weight;
  std::vector<double> potential;

  static NumericGraph from(const Multigraph& g);
};

Eigen::MatrixXcd jacobi_numeric(const NumericGraph& g);

// Gauge normalization. The graph `moduli` carries |a_e| (exact when every |a_e|^2
// is a rational square, otherwise rounded and flagged inexact). For acyclic g
// the diagonal unitary U satisfies U* A_{moduli} U = A_g.
struct GaugeNormalized {
  Multigraph moduli;
  bool moduli_exact = true;
  std::vector<Rational> modulus_squared;  // per edge
  bool has_phase = false;                 // only when g is acyclic
  std::vector<Complex> phase;             // U_vv, numeric
  // Exact U_vv when every modulus is rational.
  std::vector<GaussianRational> exact_phase;
};

GaugeNormalized gauge_normalize(const Multigraph& g);

// Exact square root of a nonnegative rational, if it is a rational square.
std::optional<Rational> rational_sqrt(const Rational& q);

// det(z - A_t) for acyclic t. Depends only on |a_e|^2.
Polynomial tree_char_poly(const Multigraph& t);

struct EigenSystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors; // orthonormal columns
};

// Dense Hermitian eigensolve. Throws PreconditionError if m is not Hermitian.
EigenSystem eig_hermitian(const Eigen::MatrixXcd& m, bool want_vectors = true);
Eigen::VectorXd eigenvalues_hermitian(const Eigen::MatrixXcd& m);
Eigen::VectorXd eigenvalues_symmetric(const Eigen::MatrixXd& m);

}  // namespace coverspec
