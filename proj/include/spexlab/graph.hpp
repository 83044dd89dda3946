#ifndef SPEXLAB_GRAPH_HPP
#define SPEXLAB_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spexlab/errors.hpp"

namespace spexlab {

using Vertex = int;

inline constexpr double kRegularTolerance = 1e-9;
inline constexpr double kLazyTolerance = 1e-12;

/// Undirected edge with u <= v; u == v is a self-loop.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  Vertex vertex = 0;
  double weight = 0.0;
};

/// Symmetric nonnegative weighted graph. Immutable after construction.
///
/// Each undirected edge {i, j} with i != j appears in the adjacency lists of
/// both endpoints; a self-loop appears once in its vertex's list and
/// contributes its weight once to the degree, so the weighted degree equals
/// the row sum of the weight matrix.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Builds a graph from an edge list. Duplicate pairs are summed.
  /// Throws DomainError on out-of-range endpoints or negative/non-finite weights.
  static WeightedGraph from_edges(int n, std::span<const Edge> edges) {
    if (n < 0) throw DomainError("vertex count must be nonnegative");
    std::map<std::pair<Vertex, Vertex>, double> merged;
    for (const Edge& e : edges) {
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
        throw DomainError("edge endpoint out of range: " + std::to_string(e.u) + " " +
                          std::to_string(e.v));
      }
      if (!std::isfinite(e.weight) || e.weight < 0.0) {
        throw DomainError("edge weight must be finite and nonnegative");
      }
      merged[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.weight;
    }
    WeightedGraph g;
    g.n_ = n;
    g.adj_.assign(static_cast<std::size_t>(n), {});
    for (const auto& [key, w] : merged) {
      if (w == 0.0) continue;
      const auto [u, v] = key;
      g.adj_[u].push_back({v, w});
      if (u != v) g.adj_[v].push_back({u, w});
    }
    g.finalize();
    return g;
  }

  /// Builds a graph from a dense symmetric matrix (row-major, n*n entries).
  /// Entries are symmetrized as (M + M^T) / 2; exact zeros are dropped.
  static WeightedGraph from_dense(int n, std::span<const double> matrix) {
    if (matrix.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
      throw DomainError("dense matrix has wrong size");
    }
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const double w = 0.5 * (matrix[static_cast<std::size_t>(i) * n + j] +
                                matrix[static_cast<std::size_t>(j) * n + i]);
        if (w != 0.0) edges.push_back({i, j, w});
      }
    }
    return from_edges(n, edges);
  }

  int size() const noexcept { return n_; }

  std::span<const Neighbor> neighbors(Vertex i) const { return adj_[i]; }

  double degree(Vertex i) const { return deg_[i]; }
  std::span<const double> degrees() const noexcept { return deg_; }

  /// Total volume vol(V) = sum of degrees.
  double volume() const noexcept { return volume_; }

  /// w(i, j); zero when no edge is present.
  double weight(Vertex i, Vertex j) const {
    const auto& row = adj_[i];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const Neighbor& a, Vertex b) { return a.vertex < b; });
    return (it != row.end() && it->vertex == j) ? it->weight : 0.0;
  }

  /// Every degree is 1 within kRegularTolerance.
  bool regular_unit() const noexcept { return regular_unit_; }

  /// Every self-loop weighs at least 1/2 (within kLazyTolerance).
  bool lazy() const noexcept { return lazy_; }

  /// Edges sorted by (min endpoint, max endpoint).
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex i = 0; i < n_; ++i) {
      for (const Neighbor& nb : adj_[i]) {
        if (nb.vertex >= i) out.push_back({i, nb.vertex, nb.weight});
      }
    }
    return out;
  }

  /// Dense row-major copy of the weight matrix.
  std::vector<double> dense() const {
    std::vector<double> m(static_cast<std::size_t>(n_) * n_, 0.0);
    for (Vertex i = 0; i < n_; ++i) {
      for (const Neighbor& nb : adj_[i]) m[static_cast<std::size_t>(i) * n_ + nb.vertex] = nb.weight;
    }
    return m;
  }

 private:
  void finalize() {
    deg_.assign(static_cast<std::size_t>(n_), 0.0);
    regular_unit_ = true;
    lazy_ = n_ > 0;
    for (Vertex i = 0; i < n_; ++i) {
      std::sort(adj_[i].begin(), adj_[i].end(),
                [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
      double d = 0.0;
      for (const Neighbor& nb : adj_[i]) d += nb.weight;
      deg_[i] = d;
      if (std::abs(d - 1.0) > kRegularTolerance) regular_unit_ = false;
      if (weight(i, i) < 0.5 - kLazyTolerance) lazy_ = false;
    }
    volume_ = std::accumulate(deg_.begin(), deg_.end(), 0.0);
  }

  int n_ = 0;
  std::vector<std::vector<Neighbor>> adj_;
  std::vector<double> deg_;
  double volume_ = 0.0;
  bool regular_unit_ = true;
  bool lazy_ = false;
};

/// Subset of {0, ..., n-1}, stored as a sorted member list.
class VertexSet {
 public:
  VertexSet() = default;

  VertexSet(int universe, std::vector<Vertex> members) : n_(universe), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && (members_.front() < 0 || members_.back() >= n_)) {
      throw DomainError("vertex set member out of range");
    }
  }

  static VertexSet all(int universe) {
    std::vector<Vertex> m(static_cast<std::size_t>(universe));
    std::iota(m.begin(), m.end(), 0);
    return VertexSet(universe, std::move(m));
  }

  static VertexSet singleton(int universe, Vertex v) { return VertexSet(universe, {v}); }

  static VertexSet from_mask(int universe, std::uint64_t mask) {
    std::vector<Vertex> m;
    for (Vertex i = 0; i < universe && i < 64; ++i) {
      if ((mask >> i) & 1U) m.push_back(i);
    }
    return VertexSet(universe, std::move(m));
  }

  template <class Pred>
  static VertexSet where(int universe, Pred&& pred) {
    std::vector<Vertex> m;
    for (Vertex i = 0; i < universe; ++i) {
      if (pred(i)) m.push_back(i);
    }
    return VertexSet(universe, std::move(m));
  }

  int universe() const noexcept { return n_; }
  int size() const noexcept { return static_cast<int>(members_.size()); }
  bool empty() const noexcept { return members_.empty(); }
  std::span<const Vertex> members() const noexcept { return members_; }

  bool contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }

  std::vector<char> indicator() const {
    std::vector<char> ind(static_cast<std::size_t>(n_), 0);
    for (Vertex v : members_) ind[v] = 1;
    return ind;
  }

  VertexSet complement() const {
    const auto ind = indicator();
    return where(n_, [&](Vertex v) { return ind[v] == 0; });
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

  /// Canonical order: by size, then lexicographically by sorted members.
  friend std::strong_ordering operator<=>(const VertexSet& a, const VertexSet& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.members_.begin(), a.members_.end(),
                                                  b.members_.begin(), b.members_.end());
  }

 private:
  int n_ = 0;
  std::vector<Vertex> members_;
};

inline void require_same_universe(const WeightedGraph& g, const VertexSet& s) {
  if (s.universe() != g.size()) throw DomainError("vertex set universe does not match graph");
}

inline double volume(const WeightedGraph& g, const VertexSet& s) {
  require_same_universe(g, s);
  double vol = 0.0;
  for (Vertex v : s.members()) vol += g.degree(v);
  return vol;
}

/// d_S(i) = w(i, S) for every vertex i.
inline std::vector<double> incoming_weights(const WeightedGraph& g, const VertexSet& s) {
  require_same_universe(g, s);
  std::vector<double> d(static_cast<std::size_t>(g.size()), 0.0);
  for (Vertex j : s.members()) {
    for (const Neighbor& nb : g.neighbors(j)) d[nb.vertex] += nb.weight;
  }
  return d;
}

/// w(S, T) = sum over i in S, j in T of w(i, j).
///
/// This is the bilinear form chi_S^T W chi_T: for disjoint S and T it is the
/// total weight of crossing edges, and w(S, S) counts a non-loop edge inside S
/// from both endpoints, so that phi(S) = 1 - w(S, S) / vol(S).
inline double cut_weight(const WeightedGraph& g, const VertexSet& s, const VertexSet& t) {
  require_same_universe(g, s);
  require_same_universe(g, t);
  const auto in_t = t.indicator();
  double total = 0.0;
  for (Vertex i : s.members()) {
    for (const Neighbor& nb : g.neighbors(i)) {
      if (in_t[nb.vertex]) total += nb.weight;
    }
  }
  return total;
}

/// phi(S) = w(S, V - S) / vol(S). Requires 0 < vol(S) <= vol(V) / 2.
inline double expansion(const WeightedGraph& g, const VertexSet& s) {
  if (s.empty()) throw DomainError("expansion of the empty set is undefined");
  const double vol = volume(g, s);
  if (vol > g.volume() / 2 + kRegularTolerance) {
    throw DomainError("expansion requires vol(S) <= vol(V)/2");
  }
  if (vol <= 0.0) throw DomainError("expansion of a zero-volume set is undefined");
  return cut_weight(g, s, s.complement()) / vol;
}

/// Expansion without the half-volume guard; used for sets visited by local
/// processes, which may exceed half the graph.
inline double expansion_unchecked(const WeightedGraph& g, const VertexSet& s) {
  const double vol = volume(g, s);
  if (vol <= 0.0) throw DomainError("expansion of a zero-volume set is undefined");
  return cut_weight(g, s, s.complement()) / vol;
}

inline void require_unit_regular(const WeightedGraph& g, const char* what) {
  if (!g.regular_unit()) {
    throw DomainError(std::string(what) + " requires a unit-regular graph (all degrees 1)");
  }
}

}  // namespace spexlab

#endif  // SPEXLAB_GRAPH_HPP
