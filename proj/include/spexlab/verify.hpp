#ifndef SPEXLAB_VERIFY_HPP
#define SPEXLAB_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spexlab/battery.hpp"
#include "spexlab/evolving_sets.hpp"
#include "spexlab/gap_measures.hpp"
#include "spexlab/graph.hpp"
#include "spexlab/graph_ops.hpp"
#include "spexlab/hypercube.hpp"
#include "spexlab/incoming_profile.hpp"
#include "spexlab/ls_curve.hpp"
#include "spexlab/rng.hpp"
#include "spexlab/stats.hpp"
#include "spexlab/walks.hpp"

namespace spexlab {

inline constexpr double kInequalityTolerance = 1e-9;

/// Outcome of one named check. max_violation is the largest amount by which
/// a checked inequality "lhs <= rhs" was exceeded (lhs - rhs), so negative
/// values mean slack everywhere.
struct CheckResult {
  std::string name;
  std::string statement;
  bool passed = true;
  double max_violation = -std::numeric_limits<double>::infinity();
  long long cases = 0;
  std::string witness;
  std::vector<std::pair<std::string, double>> metrics;
};

inline CheckResult named_result(std::string name, std::string statement) {
  CheckResult r;
  r.name = std::move(name);
  r.statement = std::move(statement);
  return r;
}

struct VerifyOptions {
  std::uint64_t seed = 7;
  int max_n = 10;
  int samples = 3;    // random mass vectors per graph
  int horizon = 50;   // walk steps for envelope checks
};

inline std::string set_string(const VertexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.members().size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.members()[i]);
  }
  return out + "}";
}

/// Running maximum of observed violations with the worst witness.
class Tracker {
 public:
  template <class Describe>
  void observe(double violation, double tol, Describe&& describe) {
    ++cases_;
    if (!(violation <= tol)) passed_ = false;
    if (violation > worst_ || std::isnan(violation)) {
      worst_ = std::isnan(violation) ? std::numeric_limits<double>::infinity() : violation;
      witness_ = describe();
    }
  }

  void finish(CheckResult& r) const {
    r.passed = passed_;
    r.max_violation = worst_;
    r.cases = cases_;
    r.witness = witness_;
  }

 private:
  bool passed_ = true;
  double worst_ = -std::numeric_limits<double>::infinity();
  long long cases_ = 0;
  std::string witness_;
};

/// Shared inputs for the checks: the battery and each graph's gap.
class VerifyContext {
 public:
  explicit VerifyContext(const VerifyOptions& opt) : opt_(opt), battery_(generator_battery(opt.seed, opt.max_n)) {
    gaps_.reserve(battery_.size());
    for (const auto& g : battery_) gaps_.push_back(comb_gap(g.graph).value);
  }

  const VerifyOptions& options() const noexcept { return opt_; }
  const std::vector<NamedGraph>& battery() const noexcept { return battery_; }
  double gap(std::size_t i) const { return gaps_[i]; }

  /// Independent stream per (check, graph, sample).
  Rng stream(std::uint64_t check, std::uint64_t graph, std::uint64_t sample = 0) const {
    return Rng(opt_.seed).split(check).split(graph).split(sample);
  }

 private:
  VerifyOptions opt_;
  std::vector<NamedGraph> battery_;
  std::vector<double> gaps_;
};

namespace detail {

/// Calls f(S) for every nonempty S with vol(S) <= vol(V)/2 (all nonempty S
/// when `all` is set), in mask order.
template <class F>
void for_each_admissible(const WeightedGraph& g, F&& f, bool all = false) {
  const std::uint64_t count = std::uint64_t{1} << g.size();
  const double half = g.volume() / 2 + kRegularTolerance;
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    VertexSet s = VertexSet::from_mask(g.size(), mask);
    if (!all && volume(g, s) > half) continue;
    f(s);
  }
}

inline std::vector<std::vector<double>> mass_samples(const VerifyContext& ctx, std::uint64_t check, std::size_t gi,
                                                     int n) {
  std::vector<std::vector<double>> out;
  std::vector<double> point(static_cast<std::size_t>(n), 0.0);
  point[0] = 1.0;
  out.push_back(point);
  for (int j = 0; j < ctx.options().samples; ++j) {
    Rng rng = ctx.stream(check, gi, static_cast<std::uint64_t>(j));
    out.push_back(random_probability(n, rng));
  }
  return out;
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace detail

// C(Ap, x) <= (C(p, x(1 - gap)) + C(p, x(1 + gap)))/2 for integral x <= n/2.
inline CheckResult check_comb_drop(const VerifyContext& ctx) {
  Tracker tr;
  for (std::size_t gi = 0; gi < ctx.battery().size(); ++gi) {
    const auto& [name, g] = ctx.battery()[gi];
    const auto ps = detail::mass_samples(ctx, 1, gi, g.size());
    for (std::size_t j = 0; j < ps.size(); ++j) {
      for (int x = 1; 2 * x <= g.size(); ++x) {
        const double slack = chord_slack(g, ps[j], x, ctx.gap(gi));
        tr.observe(-slack, kInequalityTolerance,
                   [&] { return name + " p#" + std::to_string(j) + " x=" + std::to_string(x); });
      }
    }
  }
  CheckResult r = named_result("l:comb_drop", "C(Ap,x) <= (C(p,x(1-gap)) + C(p,x(1+gap)))/2, gap = combinatorial gap");
  tr.finish(r);
  return r;
}

// (Ap)(S) <= (C(p, 2x) + C(p, 2(|S| - x)))/2 with x the upper area above 1/2.
inline CheckResult check_drop_by_upper_area(const VerifyContext& ctx) {
  Tracker tr;
  for (std::size_t gi = 0; gi < ctx.battery().size(); ++gi) {
    const auto& [name, g] = ctx.battery()[gi];
    const auto ps = detail::mass_samples(ctx, 2, gi, g.size());
    for (std::size_t j = 0; j < ps.size(); ++j) {
      const ConcaveCurve c(g, ps[j]);
      const auto ap = walk_step(g, ps[j]);
      detail::for_each_admissible(g, [&](const VertexSet& s) {
        const IncomingProfile prof(g, s);
        const double x = prof.upper_area(0.5);
        double lhs = 0.0;
        for (Vertex v : s.members()) lhs += ap[v];
        const double rhs = 0.5 * (c(2 * x) + c(2 * (s.size() - x)));
        tr.observe(lhs - rhs, kInequalityTolerance, [&] { return name + " p#" + std::to_string(j) + " S=" + set_string(s); });
      });
    }
  }
  CheckResult r = named_result("l:drop_by_upper_area", "(Ap)(S) <= (C(p,2x) + C(p,2(|S|-x)))/2, x = sum_i max{d_S(i) - 1/2, 0}");
  tr.finish(r);
  return r;
}

// sum_i max{d_S(i) - 1/2, 0} <= (1 - gap)|S|/2.
inline CheckResult check_upper_area_bound(const VerifyContext& ctx) {
  Tracker tr;
  for (std::size_t gi = 0; gi < ctx.battery().size(); ++gi) {
    const auto& [name, g] = ctx.battery()[gi];
    detail::for_each_admissible(g, [&](const VertexSet& s) {
      const double area = IncomingProfile(g, s).upper_area(0.5);
      tr.observe(area - (1.0 - ctx.gap(gi)) * s.size() / 2, kInequalityTolerance,
                 [&] { return name + " S=" + set_string(s); });
    });
  }
  CheckResult r = named_result("l:upper_area_bound", "sum_i max{d_S(i) - 1/2, 0} <= (1 - gap)|S|/2");
  tr.finish(r);
  return r;
}

// psi(S) >= gap^2/8 per set, and the mixing bound ceil(8 ln(4n)/gap^2).
inline CheckResult check_cgap(const VerifyContext& ctx) {
  Tracker tr;
  double worst_ratio = 0.0;
  long long mixing_cases = 0;
  for (std::size_t gi = 0; gi < ctx.battery().size(); ++gi) {
    const auto& [name, g] = ctx.battery()[gi];
    const double gap = ctx.gap(gi);
    detail::for_each_admissible(g, [&](const VertexSet& s) {
      tr.observe(gap * gap / 8 - gauge_exact(g, s), kInequalityTolerance, [&] { return name + " S=" + set_string(s); });
    });
    const bool bipartite = is_bipartite(g);
    if (bipartite) {
      const auto mix = mixing_time(g, 200);
      ++mixing_cases;
      tr.observe(mix.mixed() ? 1.0 : 0.0, 0.0, [&] { return name + " bipartite graph mixed"; });
    } else if (is_connected(g) && gap > 0.0) {
      const int bound = static_cast<int>(std::ceil(8.0 * std::log(4.0 * g.size()) / (gap * gap)));
      const auto mix = mixing_time(g, bound);
      ++mixing_cases;
      const double v = mix.mixed() ? static_cast<double>(*mix.steps - bound) / bound : 1.0;
      if (mix.mixed()) worst_ratio = std::max(worst_ratio, static_cast<double>(*mix.steps) / bound);
      tr.observe(v, 0.0, [&] { return name + " mixing beyond ceil(8 ln(4n)/gap^2) = " + std::to_string(bound); });
    }
  }
  CheckResult r = named_result("t:cgap", "psi(S) >= gap^2/8 for all |S| <= n/2; T_mix <= ceil(8 ln(4n)/gap^2)");
  tr.finish(r);
  r.metrics = {{"mixing_graphs", static_cast<double>(mixing_cases)}, {"max_mixing_over_bound", worst_ratio}};
  return r;
}

// t E[vol(S~) | U <= t] = sum_i deg(i) min{t, q(i)} on a 99-point grid.
inline CheckResult check_mp(const VerifyContext& ctx) {
  Tracker tr;
  for (std::size_t gi = 0; gi < ctx.battery().size(); ++gi) {
    const auto& [name, g] = ctx.battery()[gi];
    detail::for_each_admissible(
        g,
        [&](const VertexSet& s) {
          const EspTransition trans(g, s);
          for (int j = 1; j <= 99; ++j) {
            const double t = j / 100.0;
            const auto [lhs, rhs] = mp_identity_check(trans, t);
            tr.observe(std::abs(lhs - rhs), 1e-12,
                       [&] { return name + " S=" + set_string(s) + " t=" + detail::fmt(t); });
          }
        },
        true);
  }
  CheckResult r = named_result("c:MP", "t E[vol(S~) | U <= t] = sum_i deg(i) min{t, q(i)} (|lhs - rhs| <= 1e-12)");
  tr.finish(r);
  return r;
}

// gap_{delta/2}(G) >= phi_delta(G)/2.
inline CheckResult check_relation(const VerifyContext& ctx) {
  Tracker tr;
  for (const auto& [name, g] : ctx.battery()) {
    for (double delta : {0.5, 0.25}) {
      if (std::floor(delta / 2 * g.size() + 1e-9) < 1) continue;
      const auto rel = relation_check(g, delta);
      tr.observe(rel.rhs - rel.lhs, kInequalityTolerance, [&] { return name + " delta=" + detail::fmt(delta); });
    }
  }
  CheckResult r = named_result("l:relation", "gap_{delta/2}(G) >= phi_delta(G)/2");
  tr.finish(r);
  return r;
}

// Graph powers: relation and chord on G^t, the envelope
// C(A^t p, x) <= x/n + sqrt(x)(1 - gap^2/8)^t, and the empirical constant
// of phi_{delta/4}(G^t) against min{sqrt(t) phi_delta(G), 1}.
inline CheckResult check_power_chain(const VerifyContext& ctx) {
  Tracker tr;
  double worst_c = 0.0;
  for (std::size_t gi = 0; gi < ctx.battery().size(); ++gi) {
    const auto& [name, g] = ctx.battery()[gi];
    const int n = g.size();
    const auto ps = detail::mass_samples(ctx, 7, gi, n);
    for (const auto& p : ps) {
      std::vector<double> cur = p;
      for (int t = 0; t <= ctx.options().horizon; ++t) {
        const ConcaveCurve c(g, cur);
        for (int x = 1; 2 * x <= n; ++x) {
          tr.observe(c(x) - gap_envelope(ctx.gap(gi), t, x, n), kInequalityTolerance,
                     [&] { return name + " envelope t=" + std::to_string(t) + " x=" + std::to_string(x); });
        }
        cur = walk_step(g, cur);
      }
    }
    const double phi_delta = n >= 2 ? small_set_expansion(g, 0.5).value : 0.0;
    for (int s : {2, 4}) {
      const WeightedGraph h = graph_power(g, s);
      const double hgap = comb_gap(h).value;
      if (n >= 4) {
        const auto rel = relation_check(h, 0.5);
        tr.observe(rel.rhs - rel.lhs, kInequalityTolerance, [&] { return name + "^" + std::to_string(s) + " relation"; });
      }
      for (std::size_t j = 0; j < ps.size(); ++j) {
        for (int x = 1; 2 * x <= n; ++x) {
          tr.observe(-chord_slack(h, ps[j], x, hgap), kInequalityTolerance, [&] {
            return name + "^" + std::to_string(s) + " chord p#" + std::to_string(j) + " x=" + std::to_string(x);
          });
        }
      }
      if (n >= 8) {
        const double small = small_set_expansion(h, 0.125).value;
        const double target = std::min(std::sqrt(static_cast<double>(s)) * phi_delta, 1.0);
        if (small > 0.0) worst_c = std::max(worst_c, target / small);
      }
    }
  }
  CheckResult r = named_result("c:power-chain", "relation and chord inequality on G^t; C(A^t p,x) <= x/n + sqrt(x)(1-gap^2/8)^t");
  tr.finish(r);
  r.metrics = {{"empirical_power_constant", worst_c}};
  return r;
}

namespace detail {
inline bool is_lazy_member(const NamedGraph& g) { return g.graph.lazy(); }
}  // namespace detail

// Lazy graphs: C(d_S, (1 + phi^v(S)) vol(S)) <= (1 - phi(S)/2) vol(S), and
// the set and curve forms of N_1/2 agree.
inline CheckResult check_vertex_profile(const VerifyContext& ctx) {
  Tracker tr;
  for (const auto& ng : ctx.battery()) {
    if (!detail::is_lazy_member(ng)) continue;
    const auto& g = ng.graph;
    detail::for_each_admissible(g, [&](const VertexSet& s) {
      const auto set_form = vertex_profile(g, s);
      const auto curve_form = vertex_profile_curve(g, s);
      const IncomingProfile prof(g, s);
      const double vol = prof.set_volume();
      const double lhs = prof.curve()((1.0 + set_form.phi_v) * vol);
      tr.observe(lhs - (1.0 - set_form.expansion / 2) * vol, kInequalityTolerance,
                 [&] { return ng.name + " S=" + set_string(s); });
      const double diff = std::isinf(set_form.n_half) && std::isinf(curve_form.n_half)
                              ? 0.0
                              : std::abs(set_form.n_half - curve_form.n_half);
      tr.observe(diff, kInequalityTolerance, [&] { return ng.name + " S=" + set_string(s) + " set/curve forms"; });
    });
  }
  CheckResult r = named_result("l:vertex-profile", "lazy G: C(d_S, (1 + phi^v(S)) vol(S)) <= (1 - phi(S)/2) vol(S)");
  tr.finish(r);
  return r;
}

// Lazy graphs with the certified pair (a, b): the hypothesis, the area bound
// above t = (b - b^2)/(a - b^2), and the dominance inequality.
inline CheckResult check_comb_drop_vertex(const VerifyContext& ctx) {
  Tracker tr;
  long long skipped = 0;
  for (std::size_t gi = 0; gi < ctx.battery().size(); ++gi) {
    const auto& ng = ctx.battery()[gi];
    if (!detail::is_lazy_member(ng)) continue;
    const auto& g = ng.graph;
    const auto params = global_vertex_pair(g);
    if (!params) {
      ++skipped;
      continue;
    }
    const auto hyp = curve_hypothesis_check(g, params->a(), params->b());
    tr.observe(hyp.max_violation, kInequalityTolerance, [&] { return ng.name + " hypothesis"; });
    detail::for_each_admissible(g, [&](const VertexSet& s) {
      const IncomingProfile prof(g, s);
      tr.observe(prof.upper_area(params->threshold()) - params->area_factor() * prof.set_volume(), kInequalityTolerance,
                 [&] { return ng.name + " area S=" + set_string(s); });
    });
    const auto ps = detail::mass_samples(ctx, 9, gi, g.size());
    for (std::size_t j = 0; j < ps.size(); ++j) {
      for (int x = 1; 2 * x <= g.size(); ++x) {
        tr.observe(-dominance_slack(g, ps[j], x, *params), kInequalityTolerance,
                   [&] { return ng.name + " dominance p#" + std::to_string(j) + " x=" + std::to_string(x); });
      }
    }
  }
  CheckResult r = named_result("l:comb_drop_vertex",
                "C(Ap,x) <= (a-b)/(a-b^2) C(p,bx) + (b-b^2)/(a-b^2) C(p,ax/b) under C(d_S,a|S|) <= b|S|");
  tr.finish(r);
  r.metrics = {{"graphs_without_pair", static_cast<double>(skipped)}};
  return r;
}

// Lazy graphs: C(A^t p, x) <= x/n + sqrt(min{x, n-x})(1 - decay(a, b))^t.
inline CheckResult check_lovasz(const VerifyContext& ctx) {
  Tracker tr;
  for (std::size_t gi = 0; gi < ctx.battery().size(); ++gi) {
    const auto& ng = ctx.battery()[gi];
    if (!detail::is_lazy_member(ng)) continue;
    const auto& g = ng.graph;
    const auto params = global_vertex_pair(g);
    if (!params) continue;
    const int n = g.size();
    for (const auto& p : detail::mass_samples(ctx, 10, gi, n)) {
      std::vector<double> cur = p;
      for (int t = 0; t <= ctx.options().horizon; ++t) {
        const ConcaveCurve c(g, cur);
        for (int x = 1; x < n; ++x) {
          tr.observe(c(x) - convergence_envelope(*params, 1.0, t, x, n), kInequalityTolerance,
                     [&] { return ng.name + " t=" + std::to_string(t) + " x=" + std::to_string(x); });
        }
        cur = walk_step(g, cur);
      }
    }
  }
  CheckResult r = named_result("l:lovasz", "C(A^t p, x) <= x/n + sqrt(min{x, n-x}) (1 - decay(a,b))^t");
  tr.finish(r);
  return r;
}

// Lazy graphs: psi(S) >= Psi(S)/18, and psi(S) >= decay(a, b) for the certified pair.
inline CheckResult check_vertex(const VerifyContext& ctx) {
  Tracker tr;
  for (const auto& ng : ctx.battery()) {
    if (!detail::is_lazy_member(ng)) continue;
    const auto& g = ng.graph;
    const auto params = global_vertex_pair(g);
    detail::for_each_admissible(g, [&](const VertexSet& s) {
      const double psi = gauge_exact(g, s);
      tr.observe(vertex_profile(g, s).psi_product / 18 - psi, kInequalityTolerance,
                 [&] { return ng.name + " S=" + set_string(s); });
      if (params) {
        tr.observe(params->decay() - psi, kInequalityTolerance, [&] { return ng.name + " decay S=" + set_string(s); });
      }
    });
  }
  CheckResult r = named_result("t:vertex", "lazy G: psi(S) >= Psi(S)/18 and psi(S) >= decay(a,b)");
  tr.finish(r);
  return r;
}

namespace detail {

struct CubeSpec {
  int k, d;
  double eps;
};

inline std::string cube_name(const HypercubeModel& m) {
  return "(" + std::to_string(m.k()) + "," + std::to_string(m.d()) + "," + fmt(m.eps()) + ")";
}

}  // namespace detail

// Coordinate cut {x : x_1 = 0}: expansion eps (k-1)/k <= eps, matching the explicit graph.
inline CheckResult check_dimension(const VerifyContext&) {
  Tracker tr;
  const detail::CubeSpec models[] = {{8, 128, 0.1}, {2, 3, 0.2}, {3, 3, 0.3}, {4, 2, 0.5}, {2, 6, 0.0}};
  for (const auto& c : models) {
    const HypercubeModel m(c.k, c.d, c.eps);
    const auto cut = coordinate_cut_expansion(m);
    tr.observe(cut.expansion - m.eps(), 1e-15, [&] { return detail::cube_name(m); });
    tr.observe(std::abs(cut.size_fraction - 1.0 / m.k()), 1e-15, [&] { return detail::cube_name(m) + " size"; });
    if (m.explicit_size() != 0 && m.explicit_size() <= kExplicitGraphLimit) {
      const auto g = hypercube_graph(m);
      const auto s = VertexSet::where(g.size(), [&](Vertex x) { return m.decode(x)[0] == 0; });
      tr.observe(std::abs(expansion_unchecked(g, s) - cut.expansion), kInequalityTolerance,
                 [&] { return detail::cube_name(m) + " explicit"; });
    }
  }
  const auto big = coordinate_cut_expansion(HypercubeModel(8, 128, 0.1));
  CheckResult r = named_result("c:dimension", "coordinate cut has size 1/k and expansion eps(k-1)/k <= eps");
  tr.finish(r);
  r.metrics = {{"coordinate_cut_expansion", big.expansion}, {"coordinate_cut_size_fraction", big.size_fraction}};
  return r;
}

// |x| <= |y| implies w(x, B(r)) >= w(y, B(r)) for eps <= 1/2, explicit
// instances agree with the weight chain, and implicit stay weights are
// nonincreasing.
inline CheckResult check_level(const VerifyContext&) {
  Tracker tr;
  for (double eps : {0.1, 0.3, 0.5}) {
    for (int k : {2, 3}) {
      for (int d = 1; d <= (k == 2 ? 8 : 5); ++d) {
        const HypercubeModel m(k, d, eps);
        for (int r = 0; r <= d; ++r) {
          const auto lc = level_monotonicity_check(m, r);
          tr.observe(lc.max_violation, 1e-12, [&] { return detail::cube_name(m) + " r=" + std::to_string(r); });
          tr.observe(lc.max_kernel_error, 1e-12,
                     [&] { return detail::cube_name(m) + " r=" + std::to_string(r) + " kernel"; });
        }
      }
    }
  }
  for (const detail::CubeSpec c : {detail::CubeSpec{8, 128, 0.1}, {2, 64, 0.5}, {3, 200, 0.3}}) {
    const HypercubeModel m(c.k, c.d, c.eps);
    const WeightChainKernel kernel(m);
    for (int r = 0; r <= m.d(); ++r) {
      const auto b = ball_profile(kernel, r);
      double rise = -1.0;
      for (int s = 1; s <= m.d(); ++s) rise = std::max(rise, b.stay_weight[s] - b.stay_weight[s - 1]);
      tr.observe(rise, 1e-12, [&] { return detail::cube_name(m) + " implicit r=" + std::to_string(r); });
    }
  }
  // outside eps <= 1/2 monotonicity is not guaranteed; recorded only
  double synthetic = -1.0;
  const HypercubeModel noisy(2, 6, 0.9);
  for (int r = 0; r <= noisy.d(); ++r) synthetic = std::max(synthetic, level_monotonicity_check(noisy, r).max_violation);
  CheckResult r = named_result("l:level", "eps <= 1/2: |x| <= |y| implies w(x, B(r)) >= w(y, B(r))");
  tr.finish(r);
  r.metrics = {{"eps_0.9_max_violation", synthetic}};
  return r;
}

// Exact ball expansions: weight chain vs explicit graphs, kernel sanity, and
// the largest ball radius at (8, 128, 0.1) whose expansion stays >= 1 - eps.
inline CheckResult check_hamming_numeric(const VerifyContext&) {
  Tracker tr;
  const detail::CubeSpec explicit_cubes[] = {{2, 4, 0.2}, {3, 3, 0.3}, {4, 2, 0.1}, {9, 2, 0.5}, {3, 4, 0.4}};
  for (const auto& c : explicit_cubes) {
    const HypercubeModel m(c.k, c.d, c.eps);
    const auto g = hypercube_graph(m);
    const WeightChainKernel kernel(m);
    for (int r = 0; r < m.d(); ++r) {
      const auto ball = explicit_ball(m, r);
      const double exact = expansion_unchecked(g, ball);
      const auto prof = ball_profile(kernel, r);
      tr.observe(std::abs(exact - prof.expansion), kInequalityTolerance,
                 [&] { return detail::cube_name(m) + " r=" + std::to_string(r); });
      tr.observe(std::abs(prof.size_fraction - static_cast<double>(ball.size()) / g.size()), kInequalityTolerance,
                 [&] { return detail::cube_name(m) + " size r=" + std::to_string(r); });
    }
  }
  const HypercubeModel m(8, 128, 0.1);
  const WeightChainKernel kernel(m);
  tr.observe(kernel.max_row_error(), 1e-12, [] { return std::string("row sums"); });
  tr.observe(kernel.max_stationarity_error(), 1e-12, [] { return std::string("stationarity"); });
  tr.observe(kernel.max_reversibility_error(), 1e-12, [] { return std::string("reversibility"); });
  const auto rep = counterexample_report(m, 1.0);
  tr.observe(rep.certified_prefix ? 0.0 : 1.0, 0.0, [] { return std::string("no ball reaches 1 - eps"); });
  CheckResult r = named_result("l:hamming-numeric", "exact ball expansions on the weight chain; small balls expand by >= 1 - eps");
  tr.finish(r);
  if (rep.certified_prefix) {
    r.metrics = {{"largest_certified_radius", static_cast<double>(rep.certified_prefix->r)},
                 {"largest_certified_size_fraction", rep.certified_prefix->size_fraction}};
  }
  return r;
}

// The counterexample: the coordinate cut has size 1/k and expansion <= eps,
// every ball up to the certified radius expands by >= 1 - eps, every ball of
// size <= 1/k beats the cut, and explicit ESP and walk level sets from a
// singleton only ever produce balls.
inline CheckResult check_hypercube(const VerifyContext& ctx) {
  Tracker tr;
  const HypercubeModel m(8, 128, 0.1);
  const auto rep = counterexample_report(m, 0.01);
  tr.observe(rep.coordinate.expansion - m.eps(), 1e-15, [] { return std::string("coordinate cut"); });
  tr.observe(rep.certified_prefix ? 0.0 : 1.0, 0.0, [] { return std::string("no certified ball"); });
  const WeightChainKernel kernel(m);
  for (int r = 0; r <= m.d(); ++r) {
    const auto b = ball_profile(kernel, r);
    if (b.size_fraction > 1.0 / m.k()) break;
    tr.observe(rep.coordinate.expansion - b.expansion, 0.0,
               [&] { return "ball r=" + std::to_string(r) + " below coordinate cut"; });
  }

  for (const detail::CubeSpec c : {detail::CubeSpec{2, 3, 0.2}, {3, 2, 0.3}, {2, 4, 0.5}}) {
    const HypercubeModel small(c.k, c.d, c.eps);
    const auto g = hypercube_graph(small);
    for (bool vb : {false, true}) {
      for (int run = 0; run < 20; ++run) {
        EspPartitionOptions opt;
        opt.seed_vertex = 0;
        opt.step_cap = 30;
        opt.size_budget = g.volume() / 2;
        opt.phi_target = -1.0;
        opt.volume_biased = vb;
        opt.rng_seed = ctx.stream(15, static_cast<std::uint64_t>(c.k * 100 + c.d), static_cast<std::uint64_t>(run * 2 + vb))
                           .seed();
        const auto res = esp_local_partition(g, opt);
        for (const auto& st : res.trajectory.steps) {
          const bool ball = st.set.size() == g.size() || ball_radius(small, st.set).has_value();
          tr.observe(ball ? 0.0 : 1.0, 0.0, [&] { return detail::cube_name(small) + " ESP visited " + set_string(st.set); });
        }
      }
    }
    std::vector<double> p(static_cast<std::size_t>(g.size()), 0.0);
    p[0] = 1.0;
    for (int t = 1; t <= 8; ++t) {
      p = walk_step(g, p);
      // mass is a function of the weight class, nonincreasing in it
      std::vector<double> lo(static_cast<std::size_t>(small.d()) + 1, std::numeric_limits<double>::infinity());
      std::vector<double> hi(lo.size(), -std::numeric_limits<double>::infinity());
      for (Vertex x = 0; x < g.size(); ++x) {
        const int a = hamming_weight(small.decode(x));
        lo[a] = std::min(lo[a], p[x]);
        hi[a] = std::max(hi[a], p[x]);
      }
      double v = -1.0;
      for (int a = 0; a <= small.d(); ++a) {
        for (int b = a; b <= small.d(); ++b) v = std::max(v, hi[b] - lo[a]);
      }
      tr.observe(v, 1e-12, [&] { return detail::cube_name(small) + " walk level sets t=" + std::to_string(t); });
    }
  }

  // ESP on balls against the explicit process on (2,3): radius law after 3 steps
  double z_max = 0.0;
  {
    const HypercubeModel small(2, 3, 0.2);
    const auto g = hypercube_graph(small);
    BallProcess proc(small);
    const int steps = 3;
    std::vector<double> law(static_cast<std::size_t>(small.d()) + 2, 0.0);
    law[1] = 1.0;
    for (int t = 0; t < steps; ++t) {
      std::vector<double> next(law.size(), 0.0);
      for (int r = -1; r <= small.d(); ++r) {
        if (law[r + 1] == 0.0) continue;
        if (r == kEmptyRadius || r == small.d()) {
          next[r + 1] += law[r + 1];
          continue;
        }
        const auto row = ball_chain_transition(proc.ball(r));
        for (std::size_t s = 0; s < row.size(); ++s) next[s] += law[r + 1] * row[s];
      }
      law = std::move(next);
    }
    const long long trials = 4000;
    std::vector<long long> implicit_counts(law.size(), 0);
    std::vector<long long> explicit_counts(law.size(), 0);
    Rng rng_implicit = ctx.stream(15, 1);
    Rng rng_explicit = ctx.stream(15, 2);
    for (long long i = 0; i < trials; ++i) {
      const auto traj = proc.run(steps, rng_implicit);
      ++implicit_counts[traj.back().r + 1];
      VertexSet s = VertexSet::singleton(g.size(), 0);
      for (int t = 0; t < steps && !s.empty() && s.size() < g.size(); ++t) s = esp_sample_step(g, s, rng_explicit).next;
      const auto r = s.size() == g.size() ? std::optional<int>{small.d()} : ball_radius(small, s);
      if (r) ++explicit_counts[*r + 1];
    }
    const double z_implicit = max_sigma_deviation(implicit_counts, law, trials);
    const double z_explicit = max_sigma_deviation(explicit_counts, law, trials);
    tr.observe(z_implicit - 4.0, 0.0, [] { return std::string("ball chain vs exact radius law"); });
    tr.observe(z_explicit - 4.0, 0.0, [] { return std::string("explicit ESP vs exact radius law"); });
    z_max = std::max(z_implicit, z_explicit);
  }

  CheckResult r = named_result("t:hypercube",
                "coordinate cut expansion <= eps while small balls expand by >= 1 - eps; local processes only see balls");
  tr.finish(r);
  r.metrics = {{"coordinate_cut_expansion", rep.coordinate.expansion},
               {"certified_radius", rep.certified_prefix ? rep.certified_prefix->r : -1.0},
               {"certified_size_fraction", rep.certified_prefix ? rep.certified_prefix->size_fraction : 0.0},
               {"cap", rep.cap},
               {"min_ball_expansion_within_cap", rep.weakest ? rep.weakest->expansion : 0.0},
               {"min_ball_radius_within_cap", rep.weakest ? rep.weakest->r : -1.0},
               {"ball_chain_max_sigma", z_max}};
  return r;
}

struct CheckEntry {
  std::string name;
  std::function<CheckResult(const VerifyContext&)> run;
};

/// Every named check, in report order.
inline const std::vector<CheckEntry>& check_registry() {
  static const std::vector<CheckEntry> registry = {
      {"l:comb_drop", check_comb_drop},
      {"l:drop_by_upper_area", check_drop_by_upper_area},
      {"l:upper_area_bound", check_upper_area_bound},
      {"t:cgap", check_cgap},
      {"c:MP", check_mp},
      {"l:relation", check_relation},
      {"c:power-chain", check_power_chain},
      {"l:vertex-profile", check_vertex_profile},
      {"l:comb_drop_vertex", check_comb_drop_vertex},
      {"l:lovasz", check_lovasz},
      {"t:vertex", check_vertex},
      {"c:dimension", check_dimension},
      {"l:level", check_level},
      {"l:hamming-numeric", check_hamming_numeric},
      {"t:hypercube", check_hypercube},
  };
  return registry;
}

inline std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const auto& e : check_registry()) out.push_back(e.name);
  return out;
}

inline std::optional<CheckResult> run_check(const VerifyContext& ctx, const std::string& name) {
  for (const auto& e : check_registry()) {
    if (e.name == name) return e.run(ctx);
  }
  return std::nullopt;
}

inline std::vector<CheckResult> run_all_checks(const VerifyContext& ctx) {
  std::vector<CheckResult> out;
  for (const auto& e : check_registry()) out.push_back(e.run(ctx));
  return out;
}

}  // namespace spexlab

#endif  // SPEXLAB_VERIFY_HPP
