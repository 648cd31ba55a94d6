#include "coverspec/girth_lifts.hpp"

#include <deque>
#include <random>
#include <set>

#include "coverspec/errors.hpp"

namespace coverspec {

LiftSpec girth_doubling_spec(const Multigraph& h) {
  std::size_t m = h.pair_count();
  if (m + 1 >= 40) throw BudgetExceeded("doubling lift degree 2^" + std::to_string(m + 1) + " is too large");
  std::uint64_t n = std::uint64_t{1} << (m + 1);
  LiftSpec spec;
  spec.degree = n;
  spec.perm.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    spec.perm[i].resize(n);
    std::uint64_t shift = std::uint64_t{1} << i;
    for (std::uint64_t j = 0; j < n; ++j) spec.perm[i][j] = static_cast<std::uint32_t>((j + shift) % n);
  }
  return spec;
}

Cover girth_doubling_lift(const Multigraph& h, std::size_t max_vertices) {
  if (is_acyclic(h)) return {h, 1, "input is acyclic; girth is already infinite"};
  std::size_t m = h.pair_count();
  if (m + 1 >= 40 || (std::size_t{1} << (m + 1)) * h.vertex_count() > max_vertices) {
    throw BudgetExceeded("doubling lift of a graph with " + std::to_string(m) + " edge pairs exceeds " +
                         std::to_string(max_vertices) + " vertices");
  }
  LiftSpec spec = girth_doubling_spec(h);
  return {lift(h, spec), spec.degree, ""};
}

namespace {

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

constexpr std::size_t kWalkCap = 5'000'000;

struct Homology {
  std::vector<int> coord_of_pair;   // pair index -> cycle-space coordinate or -1
  std::vector<std::size_t> pair_of_edge;
  std::size_t rank = 0;
};

Homology cycle_coordinates(const Multigraph& g) {
  Homology hm;
  auto reps = g.pair_representatives();
  hm.pair_of_edge.assign(g.edge_count(), 0);
  for (std::size_t k = 0; k < reps.size(); ++k) {
    hm.pair_of_edge[reps[k]] = k;
    hm.pair_of_edge[g.edge(reps[k]).partner] = k;
  }
  // BFS spanning forest; every pair not used by it gets a coordinate.
  std::vector<bool> tree_pair(reps.size(), false);
  std::vector<bool> seen(g.vertex_count(), false);
  for (VertexId r = 0; r < g.vertex_count(); ++r) {
    if (seen[r]) continue;
    seen[r] = true;
    std::deque<VertexId> queue{r};
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      for (EdgeId e : g.out_edges(v)) {
        VertexId w = g.edge(e).target;
        if (seen[w]) continue;
        seen[w] = true;
        tree_pair[hm.pair_of_edge[e]] = true;
        queue.push_back(w);
      }
    }
  }
  hm.coord_of_pair.assign(reps.size(), -1);
  for (std::size_t k = 0; k < reps.size(); ++k) {
    if (!tree_pair[k]) hm.coord_of_pair[k] = static_cast<int>(hm.rank++);
  }
  return hm;
}

// Homology vectors (up to sign) of closed non-backtracking walks shorter than `limit`.
std::set<std::vector<int>> short_cycle_classes(const Multigraph& g, const Homology& hm, std::size_t limit) {
  auto reps = g.pair_representatives();
  std::set<std::vector<int>> classes;
  std::size_t visited = 0;
  std::vector<int> vec(hm.rank, 0);

  auto step_sign = [&](EdgeId e) {
    std::size_t k = hm.pair_of_edge[e];
    return reps[k] == e ? 1 : -1;
  };
  auto record = [&]() {
    std::vector<int> v = vec;
    for (int x : v) {
      if (x == 0) continue;
      if (x < 0) {
        for (int& y : v) y = -y;
      }
      classes.insert(std::move(v));
      return;
    }
    throw PreconditionError("a closed non-backtracking walk shorter than the target girth is null-homologous");
  };

  for (EdgeId start = 0; start < g.edge_count(); ++start) {
    VertexId origin = g.edge(start).source;
    // Explicit DFS over (edge, next out-edge slot).
    struct Frame {
      EdgeId edge;
      std::size_t next;
    };
    std::vector<Frame> stack;
    auto push = [&](EdgeId e) {
      if (++visited > kWalkCap) throw BudgetExceeded("too many short non-backtracking walks");
      int c = hm.coord_of_pair[hm.pair_of_edge[e]];
      if (c >= 0) vec[c] += step_sign(e);
      stack.push_back({e, 0});
      if (g.edge(e).target == origin) record();
    };
    auto pop = [&]() {
      EdgeId e = stack.back().edge;
      int c = hm.coord_of_pair[hm.pair_of_edge[e]];
      if (c >= 0) vec[c] -= step_sign(e);
      stack.pop_back();
    };
    push(start);
    while (!stack.empty()) {
      Frame& top = stack.back();
      const auto& outs = g.out_edges(g.edge(top.edge).target);
      if (stack.size() + 1 >= limit || top.next >= outs.size()) {
        pop();
        continue;
      }
      EdgeId f = outs[top.next++];
      if (f == g.edge(top.edge).partner) continue;
      push(f);
    }
  }
  return classes;
}

}  // namespace

Cover cyclic_voltage_lift(const Multigraph& g, std::size_t target_girth, std::size_t max_vertices) {
  if (is_acyclic(g)) throw PreconditionError("cyclic_voltage_lift: graph is acyclic");
  if (g.vertex_count() == 0) throw PreconditionError("cyclic_voltage_lift: empty graph");
  Homology hm = cycle_coordinates(g);
  auto classes = short_cycle_classes(g, hm, target_girth);

  std::mt19937_64 rng(0xc0fe);
  for (std::size_t n = 2; n * g.vertex_count() <= max_vertices; ++n) {
    if (!is_prime(n)) continue;
    std::vector<std::uint64_t> x(hm.rank);
    for (int attempt = 0; attempt < 64; ++attempt) {
      for (auto& xi : x) xi = rng() % n;
      bool ok = true;
      for (const auto& v : classes) {
        long long s = 0;
        for (std::size_t j = 0; j < v.size(); ++j) s += static_cast<long long>(v[j]) * static_cast<long long>(x[j]);
        if (((s % static_cast<long long>(n)) + static_cast<long long>(n)) % static_cast<long long>(n) == 0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      LiftSpec spec = LiftSpec::identity(g, n);
      for (std::size_t k = 0; k < spec.perm.size(); ++k) {
        int c = hm.coord_of_pair[k];
        if (c < 0) continue;
        for (std::size_t j = 0; j < n; ++j) spec.perm[k][j] = static_cast<std::uint32_t>((j + x[c]) % n);
      }
      Multigraph h = lift(g, spec);
      if (girth(h, target_girth)) continue;  // defensive; the homology test should make this unreachable
      return {std::move(h), n, "cyclic Z_" + std::to_string(n) + " voltage lift"};
    }
  }
  throw BudgetExceeded("no cyclic lift of girth >= " + std::to_string(target_girth) + " within " +
                       std::to_string(max_vertices) + " vertices");
}

GirthSequence girth_sequence(const Multigraph& g, std::size_t k, std::size_t max_vertices) {
  GirthSequence seq;
  if (k == 0) return seq;
  auto base_girth = girth(g);
  if (!base_girth) throw PreconditionError("girth_sequence: graph is acyclic");
  Cover current{g, 1, ""};
  std::size_t current_girth = *base_girth;
  for (std::size_t step = 0; step < k; ++step) {
    // Abelian lifts grow slowly and stay small. Once homology of the base
    // blocks them, lift the last cover instead, and double only as a last resort.
    std::optional<Cover> next;
    std::string failure;
    try {
      next = cyclic_voltage_lift(g, current_girth + 1, max_vertices);
    } catch (const Error& e) {
      failure = e.what();
    }
    for (int route = 0; !next && route < 2 && current.degree > 1 - route; ++route) {
      try {
        Cover d = route == 0 ? cyclic_voltage_lift(current.graph, current_girth + 1, max_vertices)
                             : girth_doubling_lift(current.graph, max_vertices);
        d.degree *= current.degree;
        next = std::move(d);
      } catch (const Error& e) {
        failure = e.what();
      }
    }
    if (!next) {
      seq.warnings.push_back("sequence truncated after " + std::to_string(step) + " element(s): " + failure);
      break;
    }
    auto gi = girth(next->graph);
    if (!gi || *gi <= current_girth) {
      seq.warnings.push_back("girth did not increase; sequence truncated");
      break;
    }
    current_girth = *gi;
    current = *next;
    seq.covers.push_back(std::move(*next));
    seq.girths.push_back(current_girth);
  }
  return seq;
}

Cover cover_with_girth_above(const Multigraph& g, std::size_t min_girth, std::size_t max_vertices) {
  auto gg = girth(g, min_girth + 1);
  if (!gg) return {g, 1, "base graph already has large girth"};
  try {
    Cover d = girth_doubling_lift(g, max_vertices);
    if (!girth(d.graph, min_girth + 1)) return d;
  } catch (const BudgetExceeded&) {
  }
  return cyclic_voltage_lift(g, min_girth + 1, max_vertices);
}

}  // namespace coverspec
