#ifndef SPEXLAB_SUBSETS_HPP
#define SPEXLAB_SUBSETS_HPP

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spexlab/errors.hpp"
#include "spexlab/graph.hpp"

namespace spexlab {

/// Default vertex-count guard for exhaustive 2^n enumeration.
inline constexpr int kBruteForceLimit = 24;

/// Snapshot handed to subset visitors.
struct SubsetState {
  std::uint64_t mask = 0;
  int size = 0;
  double volume = 0.0;
  double inner = 0.0;                 // w(S, S)
  std::span<const double> incoming;   // d_S(i) = w(i, S)
};

inline void require_enumerable(const WeightedGraph& g, int max_n, const char* what) {
  if (g.size() > max_n || g.size() > 62) {
    throw CapacityError(std::string(what) + ": n = " + std::to_string(g.size()) +
                        " exceeds the exhaustive limit " + std::to_string(max_n) +
                        "; raise --max-n or use a heuristic (sweep_cut / fractional gap)");
  }
}

/// True when `a` precedes `b` in the canonical (size, lexicographic) order.
inline bool canonical_mask_less(std::uint64_t a, std::uint64_t b) {
  const int ca = std::popcount(a);
  const int cb = std::popcount(b);
  if (ca != cb) return ca < cb;
  if (a == b) return false;
  const std::uint64_t lowest = (a ^ b) & (~(a ^ b) + 1);
  return (a & lowest) != 0;
}

/// Visits every nonempty subset of V in Gray-code order, maintaining d_S,
/// vol(S) and w(S, S) incrementally (one adjacency row per step). The
/// running sums are recomputed from scratch periodically to bound drift.
template <class Visitor>
void for_each_subset(const WeightedGraph& g, int max_n, Visitor&& visit) {
  require_enumerable(g, max_n, "subset enumeration");
  const int n = g.size();
  std::vector<double> d(static_cast<std::size_t>(n), 0.0);
  std::uint64_t mask = 0;
  int size = 0;
  double vol = 0.0;
  double inner = 0.0;

  const auto resync = [&] {
    std::fill(d.begin(), d.end(), 0.0);
    vol = 0.0;
    for (Vertex j = 0; j < n; ++j) {
      if (!((mask >> j) & 1U)) continue;
      vol += g.degree(j);
      for (const Neighbor& nb : g.neighbors(j)) d[nb.vertex] += nb.weight;
    }
    inner = 0.0;
    for (Vertex i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) inner += d[i];
    }
  };

  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < count; ++step) {
    const int v = std::countr_zero(step);
    const std::uint64_t bit = std::uint64_t{1} << v;
    const double loop = g.weight(v, v);
    if (mask & bit) {
      inner -= 2.0 * d[v] - loop;
      mask &= ~bit;
      --size;
      vol -= g.degree(v);
      for (const Neighbor& nb : g.neighbors(v)) d[nb.vertex] -= nb.weight;
    } else {
      inner += 2.0 * d[v] + loop;
      mask |= bit;
      ++size;
      vol += g.degree(v);
      for (const Neighbor& nb : g.neighbors(v)) d[nb.vertex] += nb.weight;
    }
    if ((step & 1023U) == 0) resync();
    visit(SubsetState{mask, size, vol, inner, d});
  }
}

}  // namespace spexlab

#endif  // SPEXLAB_SUBSETS_HPP
