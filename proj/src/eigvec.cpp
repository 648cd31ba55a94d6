#include "coverspec/eigvec.hpp"

#include <cmath>
#include <deque>
#include <random>

#include "coverspec/errors.hpp"

namespace coverspec {

namespace {

// Standard normal from two uniform draws (Box-Muller), independent of the
// standard library's distribution implementations.
double normal(std::mt19937_64& rng) {
  constexpr double kScale = 1.0 / 18446744073709551616.0;  // 2^-64
  double u1 = (static_cast<double>(rng()) + 1.0) * kScale;
  double u2 = static_cast<double>(rng()) * kScale;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace

UnitaryWeighting UnitaryWeighting::trivial(const Multigraph& g, std::size_t n) {
  UnitaryWeighting w;
  w.dim = n;
  w.u.assign(g.edge_count(), Eigen::MatrixXcd::Identity(n, n));
  return w;
}

UnitaryWeighting UnitaryWeighting::regular_representation(const Multigraph& g, const LiftSpec& spec) {
  check_lift_spec(g, spec);
  if (spec.degree < 2) throw PreconditionError("regular representation needs degree >= 2");
  UnitaryWeighting w;
  w.dim = spec.degree - 1;
  w.u.resize(g.edge_count());
  auto reps = g.pair_representatives();
  for (std::size_t k = 0; k < reps.size(); ++k) {
    Eigen::MatrixXcd rho = regular_rep(spec.perm[k], RepBasis::Orthonormal).cast<Complex>();
    w.u[reps[k]] = rho;
    w.u[g.edge(reps[k]).partner] = rho.adjoint();
  }
  return w;
}

UnitaryWeighting UnitaryWeighting::permutation(const Multigraph& g, const LiftSpec& spec) {
  check_lift_spec(g, spec);
  std::size_t n = spec.degree;
  UnitaryWeighting w;
  w.dim = n;
  w.u.resize(g.edge_count());
  auto reps = g.pair_representatives();
  for (std::size_t k = 0; k < reps.size(); ++k) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i) p(spec.perm[k][i], i) = 1;
    w.u[reps[k]] = p;
    w.u[g.edge(reps[k]).partner] = p.adjoint();
  }
  return w;
}

UnitaryWeighting UnitaryWeighting::phases(const Multigraph& g) {
  UnitaryWeighting w;
  w.dim = 1;
  w.u.resize(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    Complex a = g.edge(e).weight.to_complex();
    w.u[e] = Eigen::MatrixXcd::Constant(1, 1, std::abs(a) == 0 ? Complex(1) : a / std::abs(a));
  }
  return w;
}

UnitaryWeighting UnitaryWeighting::random(const Multigraph& g, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  UnitaryWeighting w;
  w.dim = n;
  w.u.resize(g.edge_count());
  for (EdgeId e : g.pair_representatives()) {
    Eigen::MatrixXcd z(n, n);
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = Complex(normal(rng), normal(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
    w.u[e] = q;
    w.u[g.edge(e).partner] = q.adjoint();
  }
  return w;
}

UnitaryWeighting UnitaryWeighting::random_signed_permutation(const Multigraph& g, std::size_t n,
                                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  UnitaryWeighting w;
  w.dim = n;
  w.u.resize(g.edge_count());
  for (EdgeId e : g.pair_representatives()) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    for (std::size_t i = n; i-- > 1;) std::swap(p[i], p[rng() % (i + 1)]);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i) m(p[i], i) = (rng() & 1u) ? 1.0 : -1.0;
    w.u[e] = m;
    w.u[g.edge(e).partner] = m.adjoint();
  }
  return w;
}

UnitaryWeighting UnitaryWeighting::restrict_to(const InducedSubgraph& sub) const {
  UnitaryWeighting w;
  w.dim = dim;
  for (EdgeId old : sub.edge_map) w.u.push_back(u.at(old));
  return w;
}

std::optional<std::string> check_unitary_weighting(const Multigraph& g, const UnitaryWeighting& w, double tol) {
  if (w.u.size() != g.edge_count()) return "weighting has " + std::to_string(w.u.size()) + " matrices";
  auto n = static_cast<Eigen::Index>(w.dim);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& m = w.u[e];
    if (m.rows() != n || m.cols() != n) return "edge " + std::to_string(e) + ": wrong dimension";
    if ((m * m.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() > tol) {
      return "edge " + std::to_string(e) + ": not unitary";
    }
    if ((w.u[g.edge(e).partner] - m.adjoint()).cwiseAbs().maxCoeff() > tol) {
      return "edge " + std::to_string(e) + ": partner is not the adjoint";
    }
  }
  return std::nullopt;
}

Eigen::MatrixXcd unitary_jacobi(const Multigraph& g, const UnitaryWeighting& w) {
  if (auto err = check_unitary_weighting(g, w, 1e-9)) throw PreconditionError("unitary_jacobi: " + *err);
  auto n = static_cast<Eigen::Index>(w.dim);
  Eigen::Index dim = static_cast<Eigen::Index>(g.vertex_count()) * n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    m.block(v * n, v * n, n, n).diagonal().array() += to_double(g.vertex(v).potential);
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    m.block(ed.target * n, ed.source * n, n, n) += ed.weight.to_complex() * w.u[e];
  }
  return m;
}

// ---------------------------------------------------------------------------
// Tree kernels

namespace {

// Exact nullspace of a Gaussian-rational matrix, by reduced row echelon form.
std::vector<std::vector<GaussianRational>> exact_nullspace(std::vector<std::vector<GaussianRational>> m,
                                                           std::size_t cols) {
  std::size_t rows = m.size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    GaussianRational inv = GaussianRational(1) / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      GaussianRational f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<GaussianRational>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<GaussianRational> v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -m[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd& a) {
  if (a.cols() == 0) return a;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(a.rows(), a.cols());
}

// Nullspace by SVD; singular values below kKernelThreshold * max(1, sigma_max) count as zero.
Eigen::MatrixXcd numeric_nullspace(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return Eigen::MatrixXcd::Identity(m.cols(), m.cols());
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double thr = kKernelThreshold * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > thr) ++rank;
  }
  return svd.matrixV().rightCols(m.cols() - rank);
}

}  // namespace

TreeKernelBasis tree_kernel(const Multigraph& t, const AlgebraicEigenvalue& lambda, std::uint64_t seed) {
  if (!lambda.is_rational()) return tree_kernel(t, lambda.float_hint, seed);
  if (!is_acyclic(t)) throw PreconditionError("tree_kernel: graph has a cycle");
  std::size_t n = t.vertex_count();
  Rational lam = lambda.rational_value();
  JacobiMatrix a = jacobi_matrix(t);
  std::vector<std::vector<GaussianRational>> m(n, std::vector<GaussianRational>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m[r][c] = -a.at(r, c);
    m[r][r] += lam;
  }
  auto basis = exact_nullspace(std::move(m), n);
  if (basis.empty()) throw PreconditionError("tree_kernel: lambda is not an eigenvalue");

  TreeKernelBasis out;
  out.exact = true;
  Eigen::MatrixXcd raw(n, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) raw(i, j) = basis[j][i].to_complex();
  }
  out.basis = orthonormalize(raw);

  // Generic small-integer combinations, checked for full support exactly.
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::vector<GaussianRational> v(n);
    for (const auto& b : basis) {
      long c = static_cast<long>(rng() % 9) + 1;
      for (std::size_t i = 0; i < n; ++i) v[i] += b[i] * GaussianRational(c);
    }
    bool full = std::none_of(v.begin(), v.end(), [](const GaussianRational& z) { return z.is_zero(); });
    if (!full) continue;
    Eigen::VectorXcd x(n);
    for (std::size_t i = 0; i < n; ++i) x(i) = v[i].to_complex();
    out.nowhere_zero = true;
    out.nowhere_zero_vector = x / x.norm();
    break;
  }
  return out;
}

TreeKernelBasis tree_kernel(const Multigraph& t, double lambda, std::uint64_t seed) {
  if (!is_acyclic(t)) throw PreconditionError("tree_kernel: graph has a cycle");
  std::size_t n = t.vertex_count();
  Eigen::MatrixXcd m = -jacobi_numeric(t);
  m.diagonal().array() += lambda;
  TreeKernelBasis out;
  out.basis = numeric_nullspace(m);
  if (out.basis.cols() == 0) throw PreconditionError("tree_kernel: lambda is not an eigenvalue");

  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 20; ++attempt) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    for (Eigen::Index j = 0; j < out.basis.cols(); ++j) {
      v += static_cast<double>(rng() % 9 + 1) * out.basis.col(j);
    }
    double scale = v.norm();
    if (scale == 0) continue;
    if ((v.cwiseAbs().array() > kKernelThreshold * scale).all()) {
      out.nowhere_zero = true;
      out.nowhere_zero_vector = v / scale;
      break;
    }
  }
  return out;
}

Eigen::VectorXcd unitary_tree_kernel(const Multigraph& t, const Eigen::VectorXcd& eta, const UnitaryWeighting& w,
                                     const Eigen::VectorXcd& zeta0) {
  if (!is_acyclic(t)) throw PreconditionError("unitary_tree_kernel: graph has a cycle");
  std::size_t nv = t.vertex_count();
  auto n = static_cast<Eigen::Index>(w.dim);
  if (static_cast<std::size_t>(eta.size()) != nv || zeta0.size() != n || w.u.size() != t.edge_count()) {
    throw PreconditionError("unitary_tree_kernel: dimension mismatch");
  }
  std::vector<Eigen::MatrixXcd> transport(nv);
  std::vector<bool> seen(nv, false);
  for (VertexId root = 0; root < nv; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    transport[root] = Eigen::MatrixXcd::Identity(n, n);
    std::deque<VertexId> queue{root};
    while (!queue.empty()) {
      VertexId p = queue.front();
      queue.pop_front();
      for (EdgeId e : t.out_edges(p)) {
        VertexId c = t.edge(e).target;
        if (seen[c]) continue;
        seen[c] = true;
        transport[c] = w.u[e] * transport[p];
        queue.push_back(c);
      }
    }
  }
  Eigen::VectorXcd z(static_cast<Eigen::Index>(nv) * n);
  for (VertexId v = 0; v < nv; ++v) z.segment(v * n, n) = eta(v) * (transport[v] * zeta0);
  return z;
}

namespace {

PhiKernel phi_kernel_impl(const Multigraph& g, const CandidateSet& x, const AlgebraicEigenvalue* exact_lambda,
                          double lambda, const UnitaryWeighting& w) {
  if (auto err = check_unitary_weighting(g, w, 1e-9)) throw PreconditionError("phi_kernel: " + *err);
  auto n = static_cast<Eigen::Index>(w.dim);
  Eigen::Index dim = static_cast<Eigen::Index>(g.vertex_count()) * n;

  std::vector<Eigen::VectorXcd> columns;
  for (const VertexSet& tree : x.trees) {
    InducedSubgraph sub = induced_subgraph(g, tree);
    TreeKernelBasis kb;
    try {
      kb = exact_lambda ? tree_kernel(sub.graph, *exact_lambda) : tree_kernel(sub.graph, lambda);
    } catch (const PreconditionError&) {
      throw PreconditionError("phi_kernel: lambda is not an eigenvalue of every tree");
    }
    UnitaryWeighting wt = w.restrict_to(sub);
    for (Eigen::Index l = 0; l < kb.basis.cols(); ++l) {
      for (Eigen::Index s = 0; s < n; ++s) {
        Eigen::VectorXcd seed = Eigen::VectorXcd::Unit(n, s);
        Eigen::VectorXcd z = unitary_tree_kernel(sub.graph, kb.basis.col(l), wt, seed);
        Eigen::VectorXcd big = Eigen::VectorXcd::Zero(dim);
        for (std::size_t j = 0; j < sub.vertex_map.size(); ++j) {
          big.segment(sub.vertex_map[j] * n, n) = z.segment(static_cast<Eigen::Index>(j) * n, n);
        }
        columns.push_back(std::move(big));
      }
    }
  }
  PhiKernel out;
  out.tree_kernel_dim = columns.size();
  out.lower_bound = static_cast<std::size_t>(std::max<long>(0, x.index)) * w.dim;

  auto m = static_cast<Eigen::Index>(columns.size());
  Eigen::MatrixXcd k(dim, m);
  for (Eigen::Index c = 0; c < m; ++c) k.col(c) = columns[c];

  std::vector<VertexId> bnd = x.boundary.members();
  Eigen::MatrixXcd phi = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(bnd.size()) * n, m);
  for (std::size_t r = 0; r < bnd.size(); ++r) {
    for (EdgeId e : g.in_edges(bnd[r])) {
      VertexId s = g.edge(e).source;
      if (!x.x.contains(s)) continue;
      phi.middleRows(static_cast<Eigen::Index>(r) * n, n) +=
          g.edge(e).weight.to_complex() * w.u[e] * k.middleRows(s * n, n);
    }
  }
  Eigen::MatrixXcd null = m == 0 ? Eigen::MatrixXcd(m, 0) : numeric_nullspace(phi);
  out.vectors = orthonormalize(k * null);

  Eigen::MatrixXcd a = unitary_jacobi(g, w);
  for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
    Eigen::VectorXcd v = out.vectors.col(c);
    double res = (lambda * v - a * v).norm();
    out.residuals.push_back(res);
    out.max_residual = std::max(out.max_residual, res);
  }
  return out;
}

}  // namespace

PhiKernel phi_kernel(const Multigraph& g, const CandidateSet& x, const AlgebraicEigenvalue& lambda,
                     const UnitaryWeighting& w) {
  return phi_kernel_impl(g, x, &lambda, lambda.float_hint, w);
}

PhiKernel phi_kernel(const Multigraph& g, const CandidateSet& x, double lambda, const UnitaryWeighting& w) {
  return phi_kernel_impl(g, x, nullptr, lambda, w);
}

std::size_t count_near(const Eigen::VectorXd& values, double lambda, double tol) {
  std::size_t c = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::abs(values(i) - lambda) <= tol) ++c;
  }
  return c;
}

MultiplicityReport multiplicity_check(const Multigraph& g, const LiftSpec& spec,
                                      const std::optional<PointSpectrumCertificate>& cert, double tol) {
  MultiplicityReport rep;
  rep.degree = spec.degree;
  if (!cert) return rep;
  rep.vacuous = false;
  rep.lambda = cert->lambda.float_hint;
  rep.index = cert->witness.index;

  Eigen::VectorXd base = eigenvalues_hermitian(jacobi_numeric(g));
  rep.base_count = count_near(base, rep.lambda, tol);
  Eigen::VectorXd fresh;
  if (spec.degree >= 2) {
    fresh = eigenvalues_hermitian(regular_rep_operator(g, spec));
    rep.new_count = count_near(fresh, rep.lambda, tol);
  }
  std::size_t near2 = count_near(base, rep.lambda, 2 * tol) + (fresh.size() ? count_near(fresh, rep.lambda, 2 * tol) : 0);
  if (near2 != rep.base_count + rep.new_count) {
    rep.collision = true;
    rep.warning = "another eigenvalue lies within 2*tol of lambda; counts may be inflated";
  }
  long need_new = static_cast<long>(spec.degree - 1) * rep.index;
  rep.base_ok = static_cast<long>(rep.base_count) >= rep.index;
  rep.new_ok = static_cast<long>(rep.new_count) >= need_new;
  return rep;
}

}  // namespace coverspec
