#ifndef SPEXLAB_EVOLVING_SETS_HPP
#define SPEXLAB_EVOLVING_SETS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "spexlab/errors.hpp"
#include "spexlab/graph.hpp"
#include "spexlab/incoming_profile.hpp"
#include "spexlab/rng.hpp"

namespace spexlab {

/// One outcome of an evolving-set step: every U in (u_lo, u_hi] produces
/// `successor`.
struct EspAtom {
  double u_lo = 0.0;
  double u_hi = 0.0;
  VertexSet successor;
  double successor_volume = 0.0;
  double probability = 0.0;
};

/// Exact law of S~ = {y : q(y) >= U}, U ~ Uniform(0, 1], where
/// q(y) = w(y, S)/deg(y). Atoms are ordered by decreasing threshold, so
/// successors grow along the sequence.
class EspTransition {
 public:
  EspTransition(const WeightedGraph& g, const VertexSet& s) : profile_(g, s) {
    const auto q = profile_.heights();
    const auto order = profile_.order();
    std::vector<Vertex> members;
    double vol = 0.0;
    double upper = 1.0;
    std::size_t k = 0;
    while (k < order.size() && q[order[k]] > 0.0) {
      const double level = q[order[k]];
      if (level < upper) atoms_.push_back(make_atom(g, level, upper, members, vol));
      while (k < order.size() && q[order[k]] == level) {
        members.push_back(order[k]);
        vol += g.degree(order[k]);
        ++k;
      }
      upper = level;
    }
    atoms_.push_back(make_atom(g, 0.0, upper, members, vol));
  }

  const IncomingProfile& profile() const noexcept { return profile_; }
  std::span<const EspAtom> atoms() const noexcept { return atoms_; }

  /// E[vol(S~)]; equals vol(S).
  double expected_volume() const {
    double e = 0.0;
    for (const EspAtom& a : atoms_) e += a.probability * a.successor_volume;
    return e;
  }

  /// The atom selected by a threshold u in (0, 1].
  const EspAtom& atom_for(double u) const {
    for (const EspAtom& a : atoms_) {
      if (u > a.u_lo && u <= a.u_hi) return a;
    }
    return atoms_.back();
  }

 private:
  static EspAtom make_atom(const WeightedGraph& g, double lo, double hi, const std::vector<Vertex>& members,
                           double vol) {
    return {lo, hi, VertexSet(g.size(), members), vol, hi - lo};
  }

  IncomingProfile profile_;
  std::vector<EspAtom> atoms_;
};

inline EspTransition esp_transition_distribution(const WeightedGraph& g, const VertexSet& s) {
  return EspTransition(g, s);
}

/// {y : q(y) >= u}.
inline VertexSet esp_successor(const IncomingProfile& profile, double u) {
  const auto q = profile.heights();
  return VertexSet::where(static_cast<int>(q.size()), [&](Vertex y) { return q[y] >= u; });
}

struct EspStep {
  VertexSet next;
  double u = 0.0;
};

/// One evolving-set step with the threshold drawn from rng.
inline EspStep esp_sample_step(const WeightedGraph& g, const VertexSet& s, Rng& rng) {
  const IncomingProfile profile(g, s);
  const double u = rng.uniform_open_closed();
  return {esp_successor(profile, u), u};
}

/// One evolving-set step with a forced threshold u in (0, 1].
inline EspStep esp_step_at(const WeightedGraph& g, const VertexSet& s, double u) {
  if (!(u > 0.0 && u <= 1.0)) throw DomainError("evolving-set threshold must lie in (0, 1]");
  return {esp_successor(IncomingProfile(g, s), u), u};
}

namespace detail {
inline void require_gauge_domain(const WeightedGraph& g, const VertexSet& s) {
  if (s.empty()) throw DomainError("gauge of the empty set is undefined");
  if (volume(g, s) > g.volume() / 2 + kRegularTolerance) throw DomainError("gauge needs vol(S) <= vol(V)/2");
}
}  // namespace detail

/// psi(S) = 1 - E[sqrt(vol(S~)/vol(S))], integrated exactly over the atoms.
inline double gauge_exact(const WeightedGraph& g, const VertexSet& s) {
  detail::require_gauge_domain(g, s);
  const EspTransition tr(g, s);
  const double vol = tr.profile().set_volume();
  double e = 0.0;
  for (const EspAtom& a : tr.atoms()) e += a.probability * std::sqrt(a.successor_volume / vol);
  return 1.0 - e;
}

struct MonteCarloEstimate {
  double mean = 0.0;
  std::optional<double> standard_error;  // absent for a single trial
  int trials = 0;
};

/// Empirical mean of 1 - sqrt(vol(S~)/vol(S)) over independent thresholds.
inline MonteCarloEstimate gauge_monte_carlo(const WeightedGraph& g, const VertexSet& s, int trials,
                                            std::uint64_t seed) {
  detail::require_gauge_domain(g, s);
  if (trials < 1) throw DomainError("gauge_monte_carlo needs trials >= 1");
  const IncomingProfile profile(g, s);
  const double vol = profile.set_volume();
  Rng rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < trials; ++i) {
    const double u = rng.uniform_open_closed();
    const VertexSet next = esp_successor(profile, u);
    const double x = 1.0 - std::sqrt(volume(g, next) / vol);
    sum += x;
    sum_sq += x * x;
  }
  MonteCarloEstimate est;
  est.trials = trials;
  est.mean = sum / trials;
  if (trials > 1) {
    const double var = std::max(0.0, (sum_sq - trials * est.mean * est.mean) / (trials - 1));
    est.standard_error = std::sqrt(var / trials);
  }
  return est;
}

/// Both sides of t E[vol(S~) | U <= t] = sum_i deg(i) min{t, q(i)}: the left
/// from the exact atoms, the right by direct summation.
inline std::pair<double, double> mp_identity_check(const EspTransition& tr, double t) {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("mp_identity_check needs t in (0, 1]");
  double lhs = 0.0;
  for (const EspAtom& a : tr.atoms()) {
    const double overlap = std::max(0.0, std::min(a.u_hi, t) - a.u_lo);
    lhs += overlap * a.successor_volume;
  }
  return {lhs, tr.profile().lower_area(t)};
}

inline std::pair<double, double> mp_identity_check(const WeightedGraph& g, const VertexSet& s, double t) {
  return mp_identity_check(EspTransition(g, s), t);
}

/// Exact volume-biased law K^(S, S') = vol(S')/vol(S) K(S, S').
inline std::vector<EspAtom> vb_transition_distribution(const WeightedGraph& g, const VertexSet& s) {
  if (s.empty()) throw DomainError("volume-biased process is undefined on the empty set");
  const EspTransition tr(g, s);
  const double vol = tr.profile().set_volume();
  std::vector<EspAtom> atoms(tr.atoms().begin(), tr.atoms().end());
  for (EspAtom& a : atoms) a.probability *= a.successor_volume / vol;
  return atoms;
}

struct VbStep {
  VertexSet next;
  Vertex walker = 0;
  double u = 0.0;
};

/// Coupled volume-biased step: the walker moves x -> x' along row x of the
/// walk matrix, then U ~ Uniform(0, q(x')] and S~ = {y : q(y) >= U}, which
/// contains x'. When x is distributed as deg restricted to S, the set
/// marginal is K^(S, .).
inline VbStep vb_esp_sample_step(const WeightedGraph& g, const VertexSet& s, Vertex x, Rng& rng) {
  if (s.empty()) throw DomainError("volume-biased process is undefined on the empty set");
  if (!s.contains(x)) throw DomainError("volume-biased walker must lie in the current set");
  const IncomingProfile profile(g, s);
  const auto row = g.neighbors(x);
  const double r = rng.uniform01() * g.degree(x);
  Vertex next = row.back().vertex;
  double acc = 0.0;
  for (const Neighbor& nb : row) {
    acc += nb.weight;
    if (r < acc) {
      next = nb.vertex;
      break;
    }
  }
  const double height = profile.heights()[next];
  if (height <= 0.0) throw DomainError("volume-biased walker reached a vertex with no weight into S");
  const double u = height * rng.uniform_open_closed();
  return {esp_successor(profile, u), next, u};
}

/// Draws the walker from S with probability deg(x)/vol(S), then steps.
inline VbStep vb_esp_sample_step(const WeightedGraph& g, const VertexSet& s, Rng& rng) {
  if (s.empty()) throw DomainError("volume-biased process is undefined on the empty set");
  const double r = rng.uniform01() * volume(g, s);
  double acc = 0.0;
  Vertex x = s.members().back();
  for (Vertex v : s.members()) {
    acc += g.degree(v);
    if (r < acc) {
      x = v;
      break;
    }
  }
  return vb_esp_sample_step(g, s, x, rng);
}

enum class Termination { reached_empty, reached_full, reached_target, over_budget, step_cap };

inline std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::reached_empty: return "reached_empty";
    case Termination::reached_full: return "reached_full";
    case Termination::reached_target: return "reached_target";
    case Termination::over_budget: return "over_budget";
    case Termination::step_cap: return "step_cap";
  }
  return "unknown";
}

struct TrajectoryStep {
  int t = 0;
  VertexSet set;
  double volume = 0.0;
  std::optional<double> u;          // absent for the starting set
  std::optional<double> expansion;  // absent for the empty set
  double gauge_term = 0.0;          // 1 - sqrt(vol(S_t)/vol(S_{t-1}))
};

struct EspTrajectory {
  std::uint64_t seed = 0;
  bool volume_biased = false;
  std::vector<TrajectoryStep> steps;
  Termination termination = Termination::step_cap;
};

struct EspPartitionOptions {
  Vertex seed_vertex = 0;
  int step_cap = 100;
  double size_budget = 0.0;  // volume budget; equals |S| on unit-regular graphs
  double phi_target = 0.0;
  std::uint64_t rng_seed = 0;
  bool volume_biased = true;
};

struct EspPartitionResult {
  VertexSet set;
  double expansion = 0.0;
  bool within_budget = true;  // false when no visited set met the budget
  EspTrajectory trajectory;
};

/// Evolving-set local partitioning from {seed_vertex}.
///
/// Records phi(S_t) after every step and stops on an empty or full set, when
/// phi(S_t) <= phi_target for a set within budget, when vol(S_t) exceeds the
/// budget, or at the step cap. Returns the lowest-expansion visited set with
/// volume within the budget (earliest on ties) and the full trajectory.
inline EspPartitionResult esp_local_partition(const WeightedGraph& g, const EspPartitionOptions& opt) {
  if (opt.seed_vertex < 0 || opt.seed_vertex >= g.size()) throw DomainError("seed vertex out of range");
  if (opt.step_cap < 1) throw DomainError("esp_local_partition needs step_cap >= 1");
  if (opt.size_budget > g.volume() / 2 + kRegularTolerance) {
    throw DomainError("size budget must not exceed vol(V)/2");
  }
  Rng rng(opt.rng_seed);
  EspPartitionResult result;
  result.trajectory.seed = opt.rng_seed;
  result.trajectory.volume_biased = opt.volume_biased;

  VertexSet current = VertexSet::singleton(g.size(), opt.seed_vertex);
  Vertex walker = opt.seed_vertex;
  double best = std::numeric_limits<double>::infinity();
  std::optional<VertexSet> best_set;
  std::optional<VertexSet> fallback;
  double fallback_phi = std::numeric_limits<double>::infinity();

  const auto record = [&](int t, std::optional<double> u, double prev_vol) -> std::optional<Termination> {
    TrajectoryStep step;
    step.t = t;
    step.set = current;
    step.volume = volume(g, current);
    step.u = u;
    step.gauge_term = prev_vol > 0.0 ? 1.0 - std::sqrt(step.volume / prev_vol) : 0.0;
    if (current.empty()) {
      result.trajectory.steps.push_back(std::move(step));
      return Termination::reached_empty;
    }
    const double phi = expansion_unchecked(g, current);
    step.expansion = phi;
    result.trajectory.steps.push_back(std::move(step));
    const double vol = result.trajectory.steps.back().volume;
    if (vol <= opt.size_budget + kRegularTolerance) {
      if (phi < best - 1e-12) {
        best = phi;
        best_set = current;
      }
      if (phi <= opt.phi_target) return Termination::reached_target;
    } else if (phi < fallback_phi - 1e-12) {
      fallback_phi = phi;
      fallback = current;
    }
    if (current.size() == g.size()) return Termination::reached_full;
    if (vol > opt.size_budget + kRegularTolerance) return Termination::over_budget;
    return std::nullopt;
  };

  std::optional<Termination> stop = record(0, std::nullopt, 0.0);
  for (int t = 1; !stop && t <= opt.step_cap; ++t) {
    const double prev_vol = volume(g, current);
    double u = 0.0;
    if (opt.volume_biased) {
      VbStep step = vb_esp_sample_step(g, current, walker, rng);
      current = std::move(step.next);
      walker = step.walker;
      u = step.u;
    } else {
      EspStep step = esp_sample_step(g, current, rng);
      current = std::move(step.next);
      u = step.u;
    }
    stop = record(t, u, prev_vol);
  }
  result.trajectory.termination = stop.value_or(Termination::step_cap);
  if (best_set) {
    result.set = *best_set;
    result.expansion = best;
  } else {
    result.within_budget = false;
    result.set = fallback.value_or(VertexSet::singleton(g.size(), opt.seed_vertex));
    result.expansion = fallback ? fallback_phi : expansion_unchecked(g, result.set);
  }
  return result;
}

}  // namespace spexlab

#endif  // SPEXLAB_EVOLVING_SETS_HPP
