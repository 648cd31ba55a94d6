#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coverspec/aomoto.hpp"
#include "coverspec/cover.hpp"
#include "coverspec/real_roots.hpp"
#include "coverspec/spectral.hpp"

namespace coverspec {

// Unitary n x n weights per directed edge with U(partner(e)) = U(e)*.
struct UnitaryWeighting {
  std::size_t dim = 1;
  std::vector<Eigen::MatrixXcd> u;  // indexed by EdgeId

  static UnitaryWeighting trivial(const Multigraph& g, std::size_t n = 1);
  // rho(perm_e) in the orthonormal basis of the sum-zero subspace, n = degree - 1.
  static UnitaryWeighting regular_representation(const Multigraph& g, const LiftSpec& spec);
  // Permutation matrices of the lift, n = degree.
  static UnitaryWeighting permutation(const Multigraph& g, const LiftSpec& spec);
  // 1x1 weights a_e / |a_e| (1 for zero weights).
  static UnitaryWeighting phases(const Multigraph& g);
  // Independent random unitaries (QR of Gaussian matrices) per pair.
  static UnitaryWeighting random(const Multigraph& g, std::size_t n, std::uint64_t seed);
  // Random signed permutation matrices per pair.
  static UnitaryWeighting random_signed_permutation(const Multigraph& g, std::size_t n, std::uint64_t seed);

  // Restriction to an induced subgraph (edge ids remapped).
  UnitaryWeighting restrict_to(const InducedSubgraph& sub) const;
};

// Empty when valid; otherwise a description of the first violation.
std::optional<std::string> check_unitary_weighting(const Multigraph& g, const UnitaryWeighting& w,
                                                   double tol = 1e-12);

// A_{g,U} on l2(V) (x) C^n, index (v, j) -> v*n + j:
// (A z)(u) = b_u z(u) + sum over e with target u of a_e U_e z(source(e)).
Eigen::MatrixXcd unitary_jacobi(const Multigraph& g, const UnitaryWeighting& w);

struct TreeKernelBasis {
  Eigen::MatrixXcd basis;  // orthonormal columns spanning Ker(lambda - A_t)
  bool exact = false;      // nullspace computed in exact arithmetic
  bool nowhere_zero = false;
  Eigen::VectorXcd nowhere_zero_vector;  // unit; set when nowhere_zero
  std::size_t dim() const { return static_cast<std::size_t>(basis.cols()); }
};

inline constexpr double kKernelThreshold = 1e-8;

// Kernel of lambda - A_t for acyclic t. Rational lambda uses exact
// elimination over Q(i); otherwise an SVD at the float value. Throws
// PreconditionError when the kernel is empty.
TreeKernelBasis tree_kernel(const Multigraph& t, const AlgebraicEigenvalue& lambda, std::uint64_t seed = 1);
TreeKernelBasis tree_kernel(const Multigraph& t, double lambda, std::uint64_t seed = 1);

// zeta(v) = eta(v) W(v) zeta0 with W(root) = I and W(c) = U_e W(p) along the
// tree edge e from p to c; roots are the lowest ids of each component.
// Satisfies (lambda - A_{t,U}) zeta = 0 whenever (lambda - A_t) eta = 0.
Eigen::VectorXcd unitary_tree_kernel(const Multigraph& t, const Eigen::VectorXcd& eta, const UnitaryWeighting& w,
                                     const Eigen::VectorXcd& zeta0);

struct PhiKernel {
  Eigen::MatrixXcd vectors;  // orthonormal columns in l2(V) (x) C^n
  std::vector<double> residuals;
  double max_residual = 0;
  std::size_t lower_bound = 0;  // n * index
  std::size_t tree_kernel_dim = 0;
};

// Eigenvectors of A_{g,U} at lambda supported on the candidate set: the kernel
// of the boundary map on the direct sum of the unitary tree kernels.
PhiKernel phi_kernel(const Multigraph& g, const CandidateSet& x, const AlgebraicEigenvalue& lambda,
                     const UnitaryWeighting& w);
PhiKernel phi_kernel(const Multigraph& g, const CandidateSet& x, double lambda, const UnitaryWeighting& w);

struct MultiplicityReport {
  bool vacuous = true;  // no certificate supplied
  double lambda = 0;
  long index = 0;
  std::size_t degree = 1;
  std::size_t base_count = 0;  // eigenvalues of A_g within tol
  std::size_t new_count = 0;   // eigenvalues of A_{H/G} within tol
  bool base_ok = true;
  bool new_ok = true;
  bool collision = false;
  std::string warning;
  bool ok() const { return base_ok && new_ok; }
};

std::size_t count_near(const Eigen::VectorXd& values, double lambda, double tol);

MultiplicityReport multiplicity_check(const Multigraph& g, const LiftSpec& spec,
                                      const std::optional<PointSpectrumCertificate>& cert, double tol = 1e-8);

}  // namespace coverspec
