#include "coverspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "coverspec/errors.hpp"

namespace coverspec {

bool JacobiMatrix::is_real() const {
  return std::all_of(entries.begin(), entries.end(), [](const GaussianRational& z) { return z.is_real(); });
}

Eigen::MatrixXcd JacobiMatrix::numeric() const {
  Eigen::MatrixXcd m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = at(r, c).to_complex();
  }
  return m;
}

JacobiMatrix jacobi_matrix(const Multigraph& g) {
  if (auto report = validate(g); !report.ok()) throw PreconditionError("invalid graph: " + report.violations.front());
  JacobiMatrix j;
  j.dim = g.vertex_count();
  j.entries.assign(j.dim * j.dim, GaussianRational());
  for (VertexId v = 0; v < j.dim; ++v) j.at(v, v) = g.vertex(v).potential;
  for (const Edge& e : g.edges()) j.at(e.target, e.source) += e.weight;
  return j;
}

bool has_real_weights(const Multigraph& g) {
  return std::all_of(g.edges().begin(), g.edges().end(), [](const Edge& e) { return e.weight.is_real(); });
}

Eigen::MatrixXcd jacobi_numeric(const Multigraph& g) {
  std::size_t n = g.vertex_count();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (VertexId v = 0; v < n; ++v) m(v, v) += to_double(g.vertex(v).potential);
  for (const Edge& e : g.edges()) m(e.target, e.source) += e.weight.to_complex();
  return m;
}

Eigen::MatrixXd jacobi_numeric_real(const Multigraph& g) {
  std::size_t n = g.vertex_count();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (VertexId v = 0; v < n; ++v) m(v, v) += to_double(g.vertex(v).potential);
  for (const Edge& e : g.edges()) {
    if (!e.weight.is_real()) throw PreconditionError("jacobi_numeric_real: complex weight");
    m(e.target, e.source) += to_double(e.weight.re);
  }
  return m;
}

NumericGraph NumericGraph::from(const Multigraph& g) {
  NumericGraph out;
  out.topology = g;
  for (const Edge& e : g.edges()) out.weight.push_back(e.weight.to_complex());
  for (const Vertex& v : g.vertices()) out.potential.push_back(to_double(v.potential));
  return out;
}

Eigen::MatrixXcd jacobi_numeric(const NumericGraph& g) {
  std::size_t n = g.topology.vertex_count();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (VertexId v = 0; v < n; ++v) m(v, v) += g.potential[v];
  for (EdgeId e = 0; e < g.topology.edge_count(); ++e) {
    const Edge& ed = g.topology.edge(e);
    m(ed.target, ed.source) += g.weight[e];
  }
  return m;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  return Rational(n, d);
}

GaugeNormalized gauge_normalize(const Multigraph& g) {
  GaugeNormalized out;
  out.moduli = g;
  out.modulus_squared.resize(g.edge_count());
  std::vector<std::optional<Rational>> modulus(g.edge_count());
  for (EdgeId e : g.pair_representatives()) {
    Rational m2 = g.edge(e).weight.norm();
    out.modulus_squared[e] = m2;
    out.modulus_squared[g.edge(e).partner] = m2;
    modulus[e] = rational_sqrt(m2);
    modulus[g.edge(e).partner] = modulus[e];
    if (modulus[e]) {
      out.moduli.set_weight(e, *modulus[e]);
    } else {
      out.moduli_exact = false;
      out.moduli.set_weight(e, Rational(std::sqrt(m2.get_d())));
    }
  }

  if (!is_acyclic(g)) return out;
  out.has_phase = true;
  std::size_t n = g.vertex_count();
  out.phase.assign(n, Complex(1, 0));
  bool exact = out.moduli_exact;
  if (exact) out.exact_phase.assign(n, GaussianRational(1));
  std::vector<bool> seen(n, false);
  for (VertexId root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::deque<VertexId> queue{root};
    while (!queue.empty()) {
      VertexId p = queue.front();
      queue.pop_front();
      for (EdgeId e : g.out_edges(p)) {
        VertexId c = g.edge(e).target;
        if (seen[c]) continue;
        seen[c] = true;
        queue.push_back(c);
        const GaussianRational& a = g.edge(e).weight;
        if (a.is_zero()) {
          out.phase[c] = out.phase[p];
          if (exact) out.exact_phase[c] = out.exact_phase[p];
          continue;
        }
        // conj(U_c) U_p = a / |a|
        Complex ph = a.to_complex() / std::abs(a.to_complex());
        out.phase[c] = std::conj(ph) * out.phase[p];
        if (exact) out.exact_phase[c] = (a / *modulus[e]).conj() * out.exact_phase[p];
      }
    }
  }
  return out;
}

Polynomial tree_char_poly(const Multigraph& t) {
  if (!is_acyclic(t)) throw PreconditionError("tree_char_poly: graph has a cycle");
  std::size_t n = t.vertex_count();
  // P[v] = det(z - A) on the subtree at v; Q[v] = same with v removed.
  std::vector<Polynomial> P(n), Q(n);
  std::vector<EdgeId> parent_edge(n, UINT32_MAX);
  std::vector<bool> seen(n, false);
  Polynomial result(1);
  for (VertexId root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<VertexId> order;
    std::vector<VertexId> stack{root};
    seen[root] = true;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (EdgeId e : t.out_edges(v)) {
        VertexId c = t.edge(e).target;
        if (seen[c]) continue;
        seen[c] = true;
        parent_edge[c] = e;
        stack.push_back(c);
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      VertexId v = *it;
      std::vector<VertexId> children;
      for (EdgeId e : t.out_edges(v)) {
        VertexId c = t.edge(e).target;
        if (parent_edge[c] == e) children.push_back(c);
      }
      Polynomial prod(1);
      for (VertexId c : children) prod *= P[c];
      Polynomial p = (Polynomial::z() - Polynomial(t.vertex(v).potential)) * prod;
      for (std::size_t i = 0; i < children.size(); ++i) {
        Polynomial term(t.edge(parent_edge[children[i]]).weight.norm());
        term *= Q[children[i]];
        for (std::size_t j = 0; j < children.size(); ++j) {
          if (j != i) term *= P[children[j]];
        }
        p -= term;
      }
      Q[v] = std::move(prod);
      P[v] = std::move(p);
    }
    result *= P[root];
  }
  return result;
}

EigenSystem eig_hermitian(const Eigen::MatrixXcd& m, bool want_vectors) {
  if (m.rows() != m.cols()) throw PreconditionError("eig_hermitian: matrix not square");
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw PreconditionError("eig_hermitian: matrix is not Hermitian");
  }
  EigenSystem out;
  auto options = want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.real(), options);
    out.values = solver.eigenvalues();
    if (want_vectors) out.vectors = solver.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, options);
    out.values = solver.eigenvalues();
    if (want_vectors) out.vectors = solver.eigenvectors();
  }
  return out;
}

Eigen::VectorXd eigenvalues_hermitian(const Eigen::MatrixXcd& m) { return eig_hermitian(m, false).values; }

Eigen::VectorXd eigenvalues_symmetric(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace coverspec
