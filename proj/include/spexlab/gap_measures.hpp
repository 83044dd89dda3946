#ifndef SPEXLAB_GAP_MEASURES_HPP
#define SPEXLAB_GAP_MEASURES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string_view>
#include <vector>

#include "spexlab/errors.hpp"
#include "spexlab/graph.hpp"
#include "spexlab/graph_ops.hpp"
#include "spexlab/incoming_profile.hpp"
#include "spexlab/ls_curve.hpp"
#include "spexlab/rng.hpp"
#include "spexlab/subsets.hpp"

namespace spexlab {

enum class GapMethod { exhaustive, heuristic };

inline std::string_view to_string(GapMethod m) { return m == GapMethod::exhaustive ? "exhaustive" : "heuristic"; }

/// Value of 1 - w(S,T)/vol(S) together with the pair achieving it.
///
/// Exhaustive certificates are global minima. Heuristic certificates come
/// from the fractional program and are upper bounds; their fractional
/// vectors are kept in chi_s / chi_t and the witness sets are the supports.
struct GapCertificate {
  double value = 0.0;
  VertexSet witness_s;
  VertexSet witness_t;
  GapMethod method = GapMethod::exhaustive;
  std::vector<double> chi_s;
  std::vector<double> chi_t;
};

inline constexpr int kDefaultRestarts = 20;
inline constexpr int kDefaultIterationCap = 100;

namespace detail {

/// Fractional knapsack: maximizes <score, chi> subject to chi in [0,1]^n and
/// <chi, deg> = budget, filling by score/deg descending (ties by index).
inline std::vector<double> best_response(const WeightedGraph& g, const std::vector<double>& score, double budget) {
  const int n = g.size();
  std::vector<Vertex> order;
  for (Vertex i = 0; i < n; ++i) {
    if (g.degree(i) > 0.0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return score[a] / g.degree(a) > score[b] / g.degree(b);
  });
  std::vector<double> chi(static_cast<std::size_t>(n), 0.0);
  double left = budget;
  for (Vertex v : order) {
    if (left <= 1e-15) break;
    const double take = std::min(1.0, left / g.degree(v));
    chi[v] = take;
    left -= take * g.degree(v);
  }
  return chi;
}

inline std::vector<double> apply(const WeightedGraph& g, const std::vector<double>& x) {
  std::vector<double> out(x.size(), 0.0);
  for (Vertex j = 0; j < g.size(); ++j) {
    if (x[j] == 0.0) continue;
    for (const Neighbor& nb : g.neighbors(j)) out[nb.vertex] += nb.weight * x[j];
  }
  return out;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

inline VertexSet support(const std::vector<double>& chi) {
  std::vector<Vertex> m;
  for (std::size_t i = 0; i < chi.size(); ++i) {
    if (chi[i] > 0.0) m.push_back(static_cast<Vertex>(i));
  }
  return VertexSet(static_cast<int>(chi.size()), std::move(m));
}

/// Top-s vertices of d by value descending, ties by index.
inline VertexSet top_prefix(std::span<const double> d, int s) {
  std::vector<Vertex> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return d[a] > d[b]; });
  order.resize(static_cast<std::size_t>(s));
  return VertexSet(static_cast<int>(d.size()), std::move(order));
}

}  // namespace detail

/// Fractional form of the gap for general graphs:
/// min 1 - <chi_S, W chi_T> / v over chi_S, chi_T in [0,1]^V with
/// <chi_S, deg> = <chi_T, deg> = v <= volume_cap.
///
/// Alternating best responses from random starts, at volume levels j * vol(V)/n.
inline GapCertificate comb_gap_fractional(const WeightedGraph& g, int restarts, int iter_cap, std::uint64_t seed,
                                          std::optional<double> volume_cap = std::nullopt) {
  if (restarts < 1 || iter_cap < 1) throw DomainError("comb_gap_fractional needs restarts >= 1 and iter_cap >= 1");
  const int n = g.size();
  const double cap = volume_cap.value_or(g.volume() / 2);
  const double unit = g.volume() / n;
  const int levels = unit > 0.0 ? static_cast<int>(std::floor(cap / unit + 1e-9)) : 0;
  if (levels < 1) throw DomainError("comb_gap_fractional: volume cap admits no level");

  GapCertificate best;
  best.method = GapMethod::heuristic;
  best.value = std::numeric_limits<double>::infinity();
  const Rng root(seed);
  for (int r = 0; r < restarts; ++r) {
    Rng rng = root.split(static_cast<std::uint64_t>(r));
    for (int j = 1; j <= levels; ++j) {
      const double v = unit * j;
      std::vector<double> random_score(static_cast<std::size_t>(n));
      for (Vertex i = 0; i < n; ++i) random_score[i] = rng.uniform01() * g.degree(i);
      std::vector<double> chi_s = detail::best_response(g, random_score, v);
      std::vector<double> chi_t = detail::best_response(g, detail::apply(g, chi_s), v);
      double obj = detail::dot(chi_t, detail::apply(g, chi_s));
      for (int it = 0; it < iter_cap; ++it) {
        auto next_s = detail::best_response(g, detail::apply(g, chi_t), v);
        auto next_t = detail::best_response(g, detail::apply(g, next_s), v);
        const double next_obj = detail::dot(next_t, detail::apply(g, next_s));
        if (next_obj <= obj + 1e-15) break;
        chi_s = std::move(next_s);
        chi_t = std::move(next_t);
        obj = next_obj;
      }
      const double value = std::clamp(1.0 - obj / v, 0.0, 1.0);
      if (value < best.value - 1e-12) {
        best.value = value;
        best.chi_s = chi_s;
        best.chi_t = chi_t;
      }
    }
  }
  best.witness_s = detail::support(best.chi_s);
  best.witness_t = detail::support(best.chi_t);
  return best;
}

namespace detail {

inline GapCertificate comb_gap_sizes(const WeightedGraph& g, int max_size, int max_n) {
  std::uint64_t best_mask = 0;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> buf(static_cast<std::size_t>(g.size()));
  for_each_subset(g, max_n, [&](const SubsetState& s) {
    if (s.size > max_size) return;
    std::copy(s.incoming.begin(), s.incoming.end(), buf.begin());
    std::nth_element(buf.begin(), buf.begin() + (s.size - 1), buf.end(), std::greater<>());
    double top = 0.0;
    for (int i = 0; i < s.size; ++i) top += buf[i];
    const double value = 1.0 - top / s.size;
    if (value < best - 1e-12 || (value <= best + 1e-12 && canonical_mask_less(s.mask, best_mask))) {
      best = std::min(best, value);
      best_mask = s.mask;
    }
  });
  GapCertificate cert;
  cert.method = GapMethod::exhaustive;
  cert.witness_s = VertexSet::from_mask(g.size(), best_mask);
  const auto d = incoming_weights(g, cert.witness_s);
  cert.witness_t = top_prefix(d, static_cast<int>(cert.witness_s.size()));
  cert.value = 1.0 - cut_weight(g, cert.witness_s, cert.witness_t) / static_cast<double>(cert.witness_s.size());
  return cert;
}

}  // namespace detail

/// phi-bar(G) = min over |S| = |T| <= n/2 of 1 - w(S,T)/|S|. For fixed S the
/// best T is the top-|S| prefix of d_S, so one sweep over S suffices. Above
/// the capacity guard the fractional heuristic is used instead.
inline GapCertificate comb_gap(const WeightedGraph& g, int max_n = kBruteForceLimit) {
  require_unit_regular(g, "comb_gap");
  if (g.size() < 2) throw DomainError("comb_gap needs n >= 2");
  if (g.size() > max_n) return comb_gap_fractional(g, kDefaultRestarts, kDefaultIterationCap, 0);
  return detail::comb_gap_sizes(g, g.size() / 2, max_n);
}

/// The same minimum restricted to |S| <= delta n.
inline GapCertificate comb_gap_delta(const WeightedGraph& g, double delta, int max_n = kBruteForceLimit) {
  require_unit_regular(g, "comb_gap_delta");
  if (!(delta > 0.0 && delta <= 0.5)) throw DomainError("comb_gap_delta needs 0 < delta <= 1/2");
  const int max_size = static_cast<int>(std::floor(delta * g.size() + 1e-9));
  if (max_size < 1) throw DomainError("comb_gap_delta: delta * n < 1 admits no set");
  if (g.size() > max_n) {
    return comb_gap_fractional(g, kDefaultRestarts, kDefaultIterationCap, 0, static_cast<double>(max_size));
  }
  return detail::comb_gap_sizes(g, max_size, max_n);
}

struct VertexExpansionProfile {
  double n_half = 0.0;  // +inf when the cut is empty
  double phi_v = 1.0;
  double psi_product = 0.0;
  double expansion = 0.0;
  double cut = 0.0;
};

namespace detail {

inline void require_profile_domain(const WeightedGraph& g, const VertexSet& s) {
  require_same_universe(g, s);
  if (s.empty()) throw DomainError("vertex_profile needs a nonempty set");
  if (volume(g, s) > g.volume() / 2 + kRegularTolerance) throw DomainError("vertex_profile needs vol(S) <= vol(V)/2");
}

inline VertexExpansionProfile finish_profile(double vol, double cut, double n_half) {
  VertexExpansionProfile p;
  p.cut = cut;
  p.expansion = cut / vol;
  if (cut <= 1e-15) {
    p.n_half = std::numeric_limits<double>::infinity();
    p.phi_v = 1.0;
    p.psi_product = 0.0;
    return p;
  }
  p.n_half = n_half;
  p.phi_v = std::min(n_half / vol, 1.0);
  p.psi_product = p.expansion * p.phi_v;
  return p;
}

/// Fractional greedy over V - S by d_S/deg until half the cut is absorbed.
template <class InSet>
double greedy_n_half(const WeightedGraph& g, std::span<const double> d, InSet&& in_set, double cut) {
  std::vector<Vertex> outside;
  for (Vertex i = 0; i < g.size(); ++i) {
    if (!in_set(i) && d[i] > 0.0) outside.push_back(i);
  }
  std::stable_sort(outside.begin(), outside.end(), [&](Vertex a, Vertex b) {
    return d[a] / g.degree(a) > d[b] / g.degree(b);
  });
  const double half = cut / 2;
  double acc = 0.0;
  double x = 0.0;
  for (Vertex v : outside) {
    if (acc + d[v] >= half) return x + g.degree(v) * (half - acc) / d[v];
    acc += d[v];
    x += g.degree(v);
  }
  return x;
}

}  // namespace detail

/// N_1/2(S), phi^v(S) = min{N_1/2(S)/vol(S), 1} and Psi(S) = phi(S) phi^v(S),
/// with N_1/2 from the set form (greedy prefix over V - S).
inline VertexExpansionProfile vertex_profile(const WeightedGraph& g, const VertexSet& s) {
  detail::require_profile_domain(g, s);
  const auto d = incoming_weights(g, s);
  const double vol = volume(g, s);
  const double cut = std::max(0.0, vol - cut_weight(g, s, s));
  const auto mark = s.indicator();
  return detail::finish_profile(vol, cut, detail::greedy_n_half(g, d, [&](Vertex i) { return mark[i] != 0; }, cut));
}

/// Curve form: N_1/2 = min{x : C(d_S, vol(S)+x) - C(d_S, vol(S)) >= cut/2}.
/// Agrees with vertex_profile on lazy graphs, where S heads the density order.
inline VertexExpansionProfile vertex_profile_curve(const WeightedGraph& g, const VertexSet& s) {
  detail::require_profile_domain(g, s);
  const IncomingProfile prof(g, s);
  const ConcaveCurve curve = prof.curve();
  const double vol = prof.set_volume();
  const double cut = std::max(0.0, vol - cut_weight(g, s, s));
  const double target = curve(vol) + cut / 2;
  return detail::finish_profile(vol, cut, curve.first_reach(target) - vol);
}

/// Psi(G): min Psi(S) over nonempty S with vol(S) <= vol(V)/2.
inline SetValue psi_graph(const WeightedGraph& g, int max_n = kBruteForceLimit) {
  const double half = g.volume() / 2 + kRegularTolerance;
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_mask = 0;
  for_each_subset(g, max_n, [&](const SubsetState& s) {
    if (s.volume > half || s.volume <= 0.0) return;
    const double cut = std::max(0.0, s.volume - s.inner);
    const auto prof = detail::finish_profile(
        s.volume, cut, detail::greedy_n_half(g, s.incoming, [&](Vertex i) { return ((s.mask >> i) & 1U) != 0; }, cut));
    if (prof.psi_product < best - 1e-12 || (prof.psi_product <= best + 1e-12 && canonical_mask_less(s.mask, best_mask))) {
      best = std::min(best, prof.psi_product);
      best_mask = s.mask;
    }
  });
  if (best_mask == 0) throw DomainError("psi_graph: no admissible set");
  VertexSet set = VertexSet::from_mask(g.size(), best_mask);
  return {vertex_profile(g, set).psi_product, std::move(set)};
}

/// Per-set pair (1 + phi^v(S), 1 - phi(S)/2).
struct CertifiedPair {
  double a = 0.0;
  double b = 0.0;
};

inline CertifiedPair certified_pair(const WeightedGraph& g, const VertexSet& s) {
  const auto p = vertex_profile(g, s);
  return {1.0 + p.phi_v, 1.0 - p.expansion / 2};
}

struct HypothesisCheck {
  bool passed = true;
  double max_violation = -std::numeric_limits<double>::infinity();  // max of C(d_S, a vol) - b vol
  std::optional<VertexSet> witness;
};

namespace detail {

template <class PairOf>
HypothesisCheck check_hypothesis(const WeightedGraph& g, int max_n, PairOf&& pair_of) {
  const double half = g.volume() / 2 + kRegularTolerance;
  HypothesisCheck out;
  std::uint64_t worst_mask = 0;
  for_each_subset(g, max_n, [&](const SubsetState& s) {
    if (s.volume > half || s.volume <= 0.0) return;
    const auto [a, b] = pair_of(s);
    const ConcaveCurve c(g.degrees(), s.incoming);
    const double gap = c(a * s.volume) - b * s.volume;
    if (gap > out.max_violation) {
      out.max_violation = gap;
      worst_mask = s.mask;
    }
  });
  out.passed = out.max_violation <= 1e-9;
  if (!out.passed) out.witness = VertexSet::from_mask(g.size(), worst_mask);
  return out;
}

}  // namespace detail

/// Checks C(d_S, a vol(S)) <= b vol(S) for every S with vol(S) <= vol(V)/2.
inline HypothesisCheck curve_hypothesis_check(const WeightedGraph& g, double a, double b,
                                              int max_n = kBruteForceLimit) {
  return detail::check_hypothesis(g, max_n, [&](const SubsetState&) { return std::pair{a, b}; });
}

/// The same check with each set's own certified pair.
inline HypothesisCheck certified_pair_check(const WeightedGraph& g, int max_n = kBruteForceLimit) {
  return detail::check_hypothesis(g, max_n, [&](const SubsetState& s) {
    const auto p = certified_pair(g, VertexSet::from_mask(g.size(), s.mask));
    return std::pair{p.a, p.b};
  });
}

/// Global pair (1 + phi^v(G), 1 - phi(G)/2) with both minima over sets of
/// at most half the volume; empty when phi(G) = 0 (no valid b < 1).
inline std::optional<CurveDominanceParams> global_vertex_pair(const WeightedGraph& g, int max_n = kBruteForceLimit) {
  const double half = g.volume() / 2 + kRegularTolerance;
  double phi = std::numeric_limits<double>::infinity();
  double phi_v = std::numeric_limits<double>::infinity();
  for_each_subset(g, max_n, [&](const SubsetState& s) {
    if (s.volume > half || s.volume <= 0.0) return;
    const double cut = std::max(0.0, s.volume - s.inner);
    const auto prof = detail::finish_profile(
        s.volume, cut, detail::greedy_n_half(g, s.incoming, [&](Vertex i) { return ((s.mask >> i) & 1U) != 0; }, cut));
    phi = std::min(phi, prof.expansion);
    phi_v = std::min(phi_v, prof.phi_v);
  });
  if (!(phi > 1e-12) || !(phi_v > 0.0)) return std::nullopt;
  return CurveDominanceParams(1.0 + phi_v, 1.0 - phi / 2);
}

struct RelationResult {
  double lhs = 0.0;  // phi-bar_{delta/2}
  double rhs = 0.0;  // phi_delta / 2
  bool holds() const noexcept { return lhs >= rhs - 1e-9; }
};

/// (phi-bar_{delta/2}(G), phi_delta(G)/2).
inline RelationResult relation_check(const WeightedGraph& g, double delta, int max_n = kBruteForceLimit) {
  return {comb_gap_delta(g, delta / 2, max_n).value, small_set_expansion(g, delta, max_n).value / 2};
}

}  // namespace spexlab

#endif  // SPEXLAB_GAP_MEASURES_HPP
