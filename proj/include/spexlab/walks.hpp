#ifndef SPEXLAB_WALKS_HPP
#define SPEXLAB_WALKS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "spexlab/errors.hpp"
#include "spexlab/graph.hpp"

namespace spexlab {

inline constexpr double kMassTolerance = 1e-12;

/// Nonnegative mass indexed by vertices.
class MassVector {
 public:
  MassVector() = default;

  explicit MassVector(std::vector<double> entries) : entries_(std::move(entries)) {
    for (double v : entries_) {
      if (!std::isfinite(v) || v < 0.0) throw DomainError("mass vector entries must be finite and nonnegative");
    }
  }

  static MassVector indicator(int n, Vertex v) {
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    e.at(static_cast<std::size_t>(v)) = 1.0;
    return MassVector(std::move(e));
  }

  static MassVector uniform(int n) {
    return MassVector(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
  }

  /// Stationary law of the walk on a general graph, deg(i)/vol(V).
  static MassVector stationary(const WeightedGraph& g) {
    std::vector<double> e(g.degrees().begin(), g.degrees().end());
    for (double& v : e) v /= g.volume();
    return MassVector(std::move(e));
  }

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> entries() const noexcept { return entries_; }
  operator std::span<const double>() const noexcept { return entries_; }

  double total() const { return std::accumulate(entries_.begin(), entries_.end(), 0.0); }
  bool is_probability() const { return std::abs(total() - 1.0) <= kMassTolerance; }

 private:
  std::vector<double> entries_;
};

/// One walk step p -> A p with (A p)(i) = sum_j w(i, j) p(j) / deg(j).
/// On unit-regular graphs A is the weight matrix itself.
inline std::vector<double> walk_step(const WeightedGraph& g, std::span<const double> p) {
  if (p.size() != static_cast<std::size_t>(g.size())) throw DomainError("mass vector length does not match graph");
  std::vector<double> out(p.size(), 0.0);
  for (Vertex j = 0; j < g.size(); ++j) {
    if (p[j] == 0.0) continue;
    const double deg = g.degree(j);
    if (deg <= 0.0) {
      out[j] += p[j];  // isolated vertex keeps its mass
      continue;
    }
    const double share = p[j] / deg;
    for (const Neighbor& nb : g.neighbors(j)) out[nb.vertex] += nb.weight * share;
  }
  return out;
}

inline MassVector walk_step(const WeightedGraph& g, const MassVector& p) {
  auto next = walk_step(g, p.entries());
  for (double& v : next) v = std::max(v, 0.0);
  return MassVector(std::move(next));
}

/// A^t p.
inline std::vector<double> walk(const WeightedGraph& g, std::span<const double> p, int t) {
  std::vector<double> cur(p.begin(), p.end());
  for (int s = 0; s < t; ++s) cur = walk_step(g, cur);
  return cur;
}

inline double l1_distance_to_uniform(std::span<const double> p) {
  const double u = 1.0 / static_cast<double>(p.size());
  double dist = 0.0;
  for (double v : p) dist += std::abs(v - u);
  return dist;
}

/// Outcome of a mixing-time search; `steps` is empty when the walk did not
/// mix within the cap.
struct MixingResult {
  std::optional<int> steps;
  int cap = 0;

  bool mixed() const noexcept { return steps.has_value(); }
};

/// Smallest t <= cap with max_v ||A^t chi_v - 1/n||_1 <= 1/4.
///
/// The L1 distance is convex in p_0, so its maximum over all initial
/// distributions is attained at a point mass; singletons suffice.
inline MixingResult mixing_time(const WeightedGraph& g, int cap) {
  require_unit_regular(g, "mixing_time");
  if (cap < 1) throw DomainError("mixing_time cap must be >= 1");
  const int n = g.size();
  std::vector<std::vector<double>> states;
  states.reserve(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    states.emplace_back(static_cast<std::size_t>(n), 0.0);
    states.back()[v] = 1.0;
  }
  for (int t = 0; t <= cap; ++t) {
    double worst = 0.0;
    for (const auto& s : states) worst = std::max(worst, l1_distance_to_uniform(s));
    if (worst <= 0.25) return {t, cap};
    if (t == cap) break;
    for (auto& s : states) s = walk_step(g, s);
  }
  return {std::nullopt, cap};
}

struct SweepResult {
  VertexSet set;
  double expansion = 0.0;
};

/// Level-set order: vertices by p(i)/deg(i) descending, ties by index.
inline std::vector<Vertex> level_order(const WeightedGraph& g, std::span<const double> p) {
  if (p.size() != static_cast<std::size_t>(g.size())) throw DomainError("mass vector length does not match graph");
  std::vector<Vertex> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  const auto density = [&](Vertex v) { return g.degree(v) > 0.0 ? p[v] / g.degree(v) : 0.0; };
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return density(a) > density(b); });
  return order;
}

/// Best level set: evaluates phi over the prefixes of the level order of size
/// <= max_size (and volume <= vol(V)/2) and returns the minimum.
inline SweepResult sweep_cut(const WeightedGraph& g, std::span<const double> p, int max_size) {
  if (max_size < 1) throw DomainError("sweep_cut needs max_size >= 1");
  const auto order = level_order(g, p);
  std::vector<double> d(p.size(), 0.0);  // w(i, S) for the current prefix
  double vol = 0.0;
  double inner = 0.0;
  double best = std::numeric_limits<double>::infinity();
  int best_len = 0;
  const int limit = std::min<int>(max_size, g.size());
  for (int len = 1; len <= limit; ++len) {
    const Vertex v = order[len - 1];
    inner += 2.0 * d[v] + g.weight(v, v);
    vol += g.degree(v);
    for (const Neighbor& nb : g.neighbors(v)) d[nb.vertex] += nb.weight;
    if (vol > g.volume() / 2 + kRegularTolerance) break;
    if (vol <= 0.0) continue;
    const double phi = (vol - inner) / vol;
    if (phi < best - 1e-12) {
      best = phi;
      best_len = len;
    }
  }
  if (best_len == 0) throw DomainError("sweep_cut found no admissible prefix");
  VertexSet set(g.size(), std::vector<Vertex>(order.begin(), order.begin() + best_len));
  return {set, expansion(g, set)};
}

struct LocalPartitionResult {
  VertexSet set;
  double expansion = 0.0;
  int best_step = 0;
};

/// Random-walk local partitioning: sweeps A^t chi_seed for t = 1..t_max and
/// keeps the best level set (earliest step on ties).
inline LocalPartitionResult rw_local_partition(const WeightedGraph& g, Vertex seed, int t_max, int max_size) {
  if (seed < 0 || seed >= g.size()) throw DomainError("seed vertex out of range");
  if (t_max < 1) throw DomainError("rw_local_partition needs t_max >= 1");
  std::vector<double> p(static_cast<std::size_t>(g.size()), 0.0);
  p[seed] = 1.0;
  LocalPartitionResult best;
  best.expansion = std::numeric_limits<double>::infinity();
  for (int t = 1; t <= t_max; ++t) {
    p = walk_step(g, p);
    SweepResult sweep = sweep_cut(g, p, max_size);
    if (sweep.expansion < best.expansion - 1e-12) best = {std::move(sweep.set), sweep.expansion, t};
  }
  return best;
}

/// Default step horizon 4 * ceil(log2 n).
inline int default_walk_horizon(int n) {
  return 4 * std::max(1, static_cast<int>(std::ceil(std::log2(std::max(2, n)))));
}

/// sum_t coeffs[t] * A^t chi_seed (t from 0). Pagerank and heat-kernel
/// vectors are such combinations with their own coefficient sequences.
inline std::vector<double> walk_mixture(const WeightedGraph& g, Vertex seed, std::span<const double> coeffs) {
  if (seed < 0 || seed >= g.size()) throw DomainError("seed vertex out of range");
  std::vector<double> p(static_cast<std::size_t>(g.size()), 0.0);
  p[seed] = 1.0;
  std::vector<double> out(p.size(), 0.0);
  for (std::size_t t = 0; t < coeffs.size(); ++t) {
    if (t > 0) p = walk_step(g, p);
    for (std::size_t i = 0; i < p.size(); ++i) out[i] += coeffs[t] * p[i];
  }
  return out;
}

/// Truncated personalized-pagerank coefficients alpha (1-alpha)^t, t < terms.
inline std::vector<double> pagerank_coefficients(double alpha, int terms) {
  if (!(alpha > 0.0 && alpha <= 1.0) || terms < 1) throw DomainError("pagerank needs alpha in (0,1] and terms >= 1");
  std::vector<double> c(static_cast<std::size_t>(terms));
  for (int t = 0; t < terms; ++t) c[t] = alpha * std::pow(1.0 - alpha, t);
  return c;
}

}  // namespace spexlab

#endif  // SPEXLAB_WALKS_HPP
