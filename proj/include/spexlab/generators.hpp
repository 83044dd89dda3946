#ifndef SPEXLAB_GENERATORS_HPP
#define SPEXLAB_GENERATORS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spexlab/errors.hpp"
#include "spexlab/graph.hpp"
#include "spexlab/hypercube_model.hpp"
#include "spexlab/rng.hpp"

namespace spexlab {

/// Dense materialization guard for the explicit hypercube generator.
inline constexpr std::uint64_t kExplicitGraphLimit = 4096;

enum class GraphFamily { cycle, complete, complete_bipartite, path, dumbbell, hypercube_explicit };

inline std::optional<GraphFamily> parse_family(std::string_view name) {
  if (name == "cycle") return GraphFamily::cycle;
  if (name == "complete") return GraphFamily::complete;
  if (name == "complete_bipartite") return GraphFamily::complete_bipartite;
  if (name == "path") return GraphFamily::path;
  if (name == "dumbbell") return GraphFamily::dumbbell;
  if (name == "hypercube_explicit") return GraphFamily::hypercube_explicit;
  return std::nullopt;
}

struct GeneratorParams {
  int n = 0;              // vertices (cycle, complete, path) or side size (bipartite, dumbbell)
  double bridge = 0.05;   // dumbbell bridge weight
  int k = 2;              // hypercube alphabet
  int d = 1;              // hypercube dimension
  double eps = 0.0;       // hypercube noise
};

inline WeightedGraph cycle_graph(int n) {
  if (n < 3) throw DomainError("cycle needs n >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n), 0.5});
  return WeightedGraph::from_edges(n, edges);
}

inline WeightedGraph complete_graph(int n) {
  if (n < 2) throw DomainError("complete graph needs n >= 2");
  std::vector<Edge> edges;
  const double w = 1.0 / (n - 1);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, w});
  }
  return WeightedGraph::from_edges(n, edges);
}

/// K_{m,m}; sides {0..m-1} and {m..2m-1}.
inline WeightedGraph complete_bipartite_graph(int m) {
  if (m < 1) throw DomainError("complete bipartite graph needs side size >= 1");
  std::vector<Edge> edges;
  const double w = 1.0 / m;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) edges.push_back({i, m + j, w});
  }
  return WeightedGraph::from_edges(2 * m, edges);
}

/// Path with edge weights 1/2; the endpoints carry a 1/2 self-loop.
inline WeightedGraph path_graph(int n) {
  if (n < 2) throw DomainError("path needs n >= 2");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 0.5});
  edges.push_back({0, 0, 0.5});
  edges.push_back({n - 1, n - 1, 0.5});
  return WeightedGraph::from_edges(n, edges);
}

/// Two K_m cliques {0..m-1}, {m..2m-1} joined by one edge (0, m) of weight
/// `bridge`. Clique edges weigh (1 - bridge)/(m - 1); every vertex off the
/// bridge gets a self-loop of weight `bridge`, so all degrees are 1.
inline WeightedGraph dumbbell_graph(int m, double bridge) {
  if (m < 2) throw DomainError("dumbbell needs clique size >= 2");
  if (!(bridge > 0.0 && bridge < 1.0)) throw DomainError("dumbbell bridge weight must lie in (0, 1)");
  std::vector<Edge> edges;
  const double w = (1.0 - bridge) / (m - 1);
  for (int side = 0; side < 2; ++side) {
    const int base = side * m;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) edges.push_back({base + i, base + j, w});
      if (i != 0) edges.push_back({base + i, base + i, bridge});
    }
  }
  edges.push_back({0, m, bridge});
  return WeightedGraph::from_edges(2 * m, edges);
}

/// Explicit noisy hypercube: vertex index encodes the string in base k.
inline WeightedGraph hypercube_graph(const HypercubeModel& model) {
  const std::uint64_t n = model.explicit_size();
  if (n == 0 || n > kExplicitGraphLimit) {
    throw CapacityError("explicit hypercube graph needs k^d <= " + std::to_string(kExplicitGraphLimit) +
                        "; use the implicit weight-chain model instead");
  }
  std::vector<std::vector<int>> strings;
  strings.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) strings.push_back(model.decode(i));
  std::vector<Edge> edges;
  for (std::uint64_t i = 0; i < n; ++i) {
    for (std::uint64_t j = i; j < n; ++j) {
      const double w = pair_weight(model, strings[i], strings[j]);
      if (w > 0.0) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j), w});
    }
  }
  return WeightedGraph::from_edges(static_cast<int>(n), edges);
}

inline WeightedGraph generate(GraphFamily family, const GeneratorParams& p) {
  switch (family) {
    case GraphFamily::cycle:
      return cycle_graph(p.n);
    case GraphFamily::complete:
      return complete_graph(p.n);
    case GraphFamily::complete_bipartite:
      return complete_bipartite_graph(p.n);
    case GraphFamily::path:
      return path_graph(p.n);
    case GraphFamily::dumbbell:
      return dumbbell_graph(p.n, p.bridge);
    case GraphFamily::hypercube_explicit:
      return hypercube_graph(HypercubeModel(p.k, p.d, p.eps));
  }
  throw DomainError("unknown graph family");
}

/// Disjoint union; vertices of `b` are shifted by a.size().
inline WeightedGraph disjoint_union(const WeightedGraph& a, const WeightedGraph& b) {
  std::vector<Edge> edges = a.edges();
  for (Edge e : b.edges()) {
    e.u += a.size();
    e.v += a.size();
    edges.push_back(e);
  }
  return WeightedGraph::from_edges(a.size() + b.size(), edges);
}

/// Random unit-regular graph: a convex combination of symmetrized random
/// permutation matrices (P + P^T)/2 with exponential mixing weights.
inline WeightedGraph random_unit_regular(int n, int terms, Rng& rng) {
  if (n < 1 || terms < 1) throw DomainError("random_unit_regular needs n >= 1 and terms >= 1");
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> coeffs(static_cast<std::size_t>(terms));
  for (double& c : coeffs) c = rng.exponential();
  const double total = std::accumulate(coeffs.begin(), coeffs.end(), 0.0);
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int t = 0; t < terms; ++t) {
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) {
      std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    }
    const double c = coeffs[t] / total / 2.0;
    for (int i = 0; i < n; ++i) {
      m[static_cast<std::size_t>(i) * n + perm[i]] += c;
      m[static_cast<std::size_t>(perm[i]) * n + i] += c;
    }
  }
  return WeightedGraph::from_dense(n, m);
}

}  // namespace spexlab

#endif  // SPEXLAB_GENERATORS_HPP
