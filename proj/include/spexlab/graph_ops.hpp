#ifndef SPEXLAB_GRAPH_OPS_HPP
#define SPEXLAB_GRAPH_OPS_HPP

#include <cstdint>
#include <queue>
#include <limits>
#include <string>
#include <vector>

#include "spexlab/errors.hpp"
#include "spexlab/graph.hpp"
#include "spexlab/subsets.hpp"

namespace spexlab {

inline constexpr int kDensePowerLimit = 4096;

struct SetValue {
  double value = 0.0;
  VertexSet set;
};

/// phi_delta(G): min phi(S) over nonempty S with vol(S) <= delta * vol(V),
/// by exhaustive enumeration. Ties go to the smallest, then lexicographically
/// first, set.
inline SetValue small_set_expansion(const WeightedGraph& g, double delta, int max_n = kBruteForceLimit) {
  if (!(delta > 0.0 && delta <= 0.5)) throw DomainError("small-set expansion needs 0 < delta <= 1/2");
  require_enumerable(g, max_n, "small_set_expansion");
  const double cap = delta * g.volume() + kRegularTolerance;
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_mask = 0;
  for_each_subset(g, max_n, [&](const SubsetState& s) {
    if (s.volume > cap || s.volume <= 0.0) return;
    const double phi = (s.volume - s.inner) / s.volume;
    if (phi < best - 1e-12 || (phi <= best + 1e-12 && canonical_mask_less(s.mask, best_mask))) {
      best = std::min(best, phi);
      best_mask = s.mask;
    }
  });
  if (best_mask == 0) throw DomainError("no nonempty set satisfies vol(S) <= delta * vol(V)");
  VertexSet set = VertexSet::from_mask(g.size(), best_mask);
  return {expansion_unchecked(g, set), std::move(set)};
}

inline std::vector<double> dense_multiply(const std::vector<double>& a, const std::vector<double>& b, int n) {
  std::vector<double> c(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = a[static_cast<std::size_t>(i) * n + k];
      if (aik == 0.0) continue;
      const double* brow = &b[static_cast<std::size_t>(k) * n];
      double* crow = &c[static_cast<std::size_t>(i) * n];
      for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

/// The graph whose weight matrix is A^t.
inline WeightedGraph graph_power(const WeightedGraph& g, int t) {
  require_unit_regular(g, "graph_power");
  if (t < 1) throw DomainError("graph power needs t >= 1");
  if (g.size() > kDensePowerLimit) {
    throw CapacityError("graph_power uses dense arithmetic; n must be <= " + std::to_string(kDensePowerLimit));
  }
  if (t == 1) return g;
  const int n = g.size();
  std::vector<double> base = g.dense();
  std::vector<double> result;
  for (int e = t; e > 0; e >>= 1) {
    if (e & 1) result = result.empty() ? base : dense_multiply(result, base, n);
    if (e > 1) base = dense_multiply(base, base, n);
  }
  return WeightedGraph::from_dense(n, result);
}

/// Mixes the identity into the walk: w'(i,j) = (1-alpha) w(i,j) for i != j
/// and w'(i,i) = (1-alpha) w(i,i) + alpha.
inline WeightedGraph lazify(const WeightedGraph& g, double alpha) {
  require_unit_regular(g, "lazify");
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("lazify needs alpha in [0, 1)");
  if (alpha == 0.0) return g;
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) e.weight *= (1.0 - alpha);
  for (Vertex i = 0; i < g.size(); ++i) edges.push_back({i, i, alpha});
  return WeightedGraph::from_edges(g.size(), edges);
}

/// Connected on the support of w.
inline bool is_connected(const WeightedGraph& g) {
  if (g.size() == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
  std::queue<Vertex> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    const Vertex v = q.front();
    q.pop();
    for (const Neighbor& nb : g.neighbors(v)) {
      if (nb.weight > 0.0 && !seen[nb.vertex]) {
        seen[nb.vertex] = 1;
        ++count;
        q.push(nb.vertex);
      }
    }
  }
  return count == g.size();
}

/// Two-colorable on the support of w (a self-loop rules it out).
inline bool is_bipartite(const WeightedGraph& g) {
  std::vector<int> side(static_cast<std::size_t>(g.size()), -1);
  for (Vertex s = 0; s < g.size(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop();
      for (const Neighbor& nb : g.neighbors(v)) {
        if (nb.weight <= 0.0) continue;
        if (side[nb.vertex] < 0) {
          side[nb.vertex] = 1 - side[v];
          q.push(nb.vertex);
        } else if (side[nb.vertex] == side[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace spexlab

#endif  // SPEXLAB_GRAPH_OPS_HPP
