// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "spexlab/spexlab.hpp"

using namespace spexlab;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const std::vector<NamedGraph>& battery() {
  static const auto b = generator_battery(7, 10);
  return b;
}

std::vector<double> point_mass(int n, Vertex v) {
  std::vector<double> p(static_cast<std::size_t>(n), 0.0);
  p[v] = 1.0;
  return p;
}

// 1. chord inequality over (graph, p, x) triples
Outcome chord_suite() {
  const auto t0 = Clock::now();
  Rng root(101);
  long long cases = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t gi = 0; gi < battery().size(); ++gi) {
    const auto& g = battery()[gi].graph;
    const double gap = comb_gap(g).value;
    Rng rng = root.split(gi);
    std::vector<std::vector<double>> ps;
    for (Vertex v = 0; v < g.size(); ++v) ps.push_back(point_mass(g.size(), v));
    for (int i = 0; i < 3; ++i) ps.push_back(random_probability(g.size(), rng));
    for (const auto& p : ps) {
      for (int x = 1; 2 * x <= g.size(); ++x) {
        worst = std::min(worst, chord_slack(g, p, x, gap));
        ++cases;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {cases >= 200 && worst >= -1e-9 && secs < 10.0,
          std::to_string(cases) + " triples, min slack " + fmt(worst) + ", " + fmt(secs) + " s"};
}

// 2. gauge lower bounds, exhaustive over |S| <= n/2
Outcome gauge_bounds() {
  const auto t0 = Clock::now();
  long long cases = 0;
  double worst_gap = std::numeric_limits<double>::infinity();
  double worst_vertex = std::numeric_limits<double>::infinity();
  for (const auto& [name, g] : battery()) {
    const double gap = comb_gap(g).value;
    const int n = g.size();
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
      const auto s = VertexSet::from_mask(n, m);
      if (2 * s.size() > n) continue;
      const double psi = gauge_exact(g, s);
      worst_gap = std::min(worst_gap, psi - gap * gap / 8);
      if (g.lazy()) worst_vertex = std::min(worst_vertex, psi - vertex_profile(g, s).psi_product / 18);
      ++cases;
    }
  }
  const double secs = seconds_since(t0);
  return {worst_gap >= -1e-9 && worst_vertex >= -1e-9 && secs < 60.0,
          std::to_string(cases) + " sets, min psi - gap^2/8 = " + fmt(worst_gap) + ", min psi - Psi/18 = " +
              fmt(worst_vertex) + ", " + fmt(secs) + " s"};
}

// 3. Morris-Peres identity on a 99-point grid
Outcome mp_identity() {
  long long cases = 0;
  double worst = 0.0;
  for (const auto& [name, g] : battery()) {
    const int n = g.size();
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
      const EspTransition tr(g, VertexSet::from_mask(n, m));
      for (int j = 1; j <= 99; ++j) {
        const auto [lhs, rhs] = mp_identity_check(tr, j / 100.0);
        worst = std::max(worst, std::abs(lhs - rhs));
        ++cases;
      }
    }
  }
  return {worst <= 1e-12, std::to_string(cases) + " cases, max |lhs - rhs| = " + fmt(worst)};
}

// 4. sampler fidelity
Outcome sampler_fidelity() {
  const long long draws = 10000;
  const auto small = generator_battery(7, 8);
  Rng root(404);
  double z_plain = 0.0;
  double z_vb = 0.0;
  long long laws = 0;
  for (std::size_t gi = 0; gi < small.size(); ++gi) {
    const auto& g = small[gi].graph;
    const int n = g.size();
    Rng pick = root.split(gi);
    // four sets per graph: a singleton, a half-size prefix and two random proper subsets
    std::vector<std::uint64_t> masks = {1, (std::uint64_t{1} << (n / 2)) - 1};
    while (masks.size() < 4) {
      const std::uint64_t m = 1 + pick.below((std::uint64_t{1} << n) - 2);
      masks.push_back(m);
    }
    for (std::size_t si = 0; si < masks.size(); ++si) {
      const auto s = VertexSet::from_mask(n, masks[si]);
      const EspTransition tr(g, s);
      const auto vb = vb_transition_distribution(g, s);
      const auto index_of = [](const auto& atoms, const VertexSet& next) {
        for (std::size_t i = 0; i < atoms.size(); ++i)
          if (atoms[i].successor == next) return i;
        return atoms.size();
      };
      std::vector<double> law_plain, law_vb;
      for (const auto& a : tr.atoms()) law_plain.push_back(a.probability);
      for (const auto& a : vb) law_vb.push_back(a.probability);
      law_plain.push_back(0.0);
      law_vb.push_back(0.0);
      std::vector<long long> c_plain(law_plain.size(), 0), c_vb(law_vb.size(), 0);
      Rng rng_plain = root.split(1000 + gi).split(2 * si);
      Rng rng_vb = root.split(1000 + gi).split(2 * si + 1);
      for (long long i = 0; i < draws; ++i) {
        ++c_plain[index_of(tr.atoms(), esp_sample_step(g, s, rng_plain).next)];
        ++c_vb[index_of(vb, vb_esp_sample_step(g, s, rng_vb).next)];
      }
      z_plain = std::max(z_plain, max_sigma_deviation(c_plain, law_plain, draws));
      z_vb = std::max(z_vb, max_sigma_deviation(c_vb, law_vb, draws));
      laws += 2;
    }
  }

  // gauge Monte Carlo against the exact value on 50 (graph, set) pairs
  int pairs = 0;
  int outside = 0;
  double worst_ratio = 0.0;
  for (std::size_t gi = 0; pairs < 50; gi = (gi + 7) % small.size()) {
    const auto& g = small[gi].graph;
    const int n = g.size();
    Rng pick = root.split(5000 + static_cast<std::uint64_t>(pairs));
    auto s = VertexSet::from_mask(n, 1 + pick.below((std::uint64_t{1} << n) - 2));
    while (2 * s.size() > n) s = VertexSet::from_mask(n, 1 + pick.below((std::uint64_t{1} << n) - 2));
    const auto est = gauge_monte_carlo(g, s, 4000, 6000 + static_cast<std::uint64_t>(pairs));
    const double diff = std::abs(est.mean - gauge_exact(g, s));
    const double se = est.standard_error.value_or(0.0);
    if (diff > 3.0 * se + 1e-12) ++outside;
    if (se > 0.0) worst_ratio = std::max(worst_ratio, diff / se);
    ++pairs;
  }
  return {z_plain <= 4.0 && z_vb <= 4.0 && outside == 0,
          std::to_string(laws) + " laws x " + std::to_string(draws) + " draws, max sigma " + fmt(z_plain) + " (ESP) " +
              fmt(z_vb) + " (volume-biased); gauge MC " + std::to_string(pairs - outside) + "/" +
              std::to_string(pairs) + " within 3 stderr, worst " + fmt(worst_ratio)};
}

// 5. graph-power chain
Outcome power_chain() {
  double worst_relation = std::numeric_limits<double>::infinity();
  double worst_envelope = std::numeric_limits<double>::infinity();
  double empirical = 0.0;
  long long relations = 0;
  long long points = 0;
  for (const auto& [name, g] : battery()) {
    const int n = g.size();
    std::vector<WeightedGraph> family = {g, graph_power(g, 2), graph_power(g, 4)};
    for (const auto& h : family) {
      for (double delta : {0.5, 0.25}) {
        if (std::floor(delta / 2 * n + 1e-9) < 1) continue;
        const auto r = relation_check(h, delta);
        worst_relation = std::min(worst_relation, r.lhs - r.rhs);
        ++relations;
      }
    }
    const double gap = comb_gap(g).value;
    for (Vertex v = 0; v < n; ++v) {
      auto p = point_mass(n, v);
      for (int t = 0; t <= 50; ++t) {
        const ConcaveCurve c(g, p);
        for (int x = 1; 2 * x <= n; ++x) {
          worst_envelope = std::min(worst_envelope, gap_envelope(gap, t, x, n) - c(x));
          ++points;
        }
        p = walk_step(g, p);
      }
    }
    // how far phi-bar(G^2) sits above phi-bar(G), as a multiple of phi-bar(G)
    const double gap2 = comb_gap(family[1]).value;
    if (gap > 1e-9) empirical = std::max(empirical, gap2 / gap);
  }
  return {worst_relation >= -1e-9 && worst_envelope >= -1e-9,
          std::to_string(relations) + " relations, min slack " + fmt(worst_relation) + "; " + std::to_string(points) +
              " envelope points, min slack " + fmt(worst_envelope) + "; reported max gap(G^2)/gap(G) = " +
              fmt(empirical)};
}

// 6. mixing bound
Outcome mixing_bound() {
  int mixing = 0;
  int unmixed = 0;
  int skipped = 0;
  bool ok = true;
  std::string bad;
  double worst = 0.0;
  for (const auto& [name, g] : battery()) {
    if (!is_connected(g)) {
      ++skipped;
      continue;
    }
    if (is_bipartite(g)) {
      if (mixing_time(g, 200).mixed()) {
        ok = false;
        bad += " " + name + " mixed";
      }
      ++unmixed;
      continue;
    }
    const double gap = comb_gap(g).value;
    const int bound = static_cast<int>(std::ceil(8.0 * std::log(4.0 * g.size()) / (gap * gap)));
    const auto res = mixing_time(g, bound);
    if (!res.mixed()) {
      ok = false;
      bad += " " + name;
    } else {
      worst = std::max(worst, static_cast<double>(*res.steps) / bound);
    }
    ++mixing;
  }
  return {ok, std::to_string(mixing) + " graphs mixed within bound (max T/bound " + fmt(worst) + "), " +
                  std::to_string(unmixed) + " bipartite unmixed, " + std::to_string(skipped) + " disconnected skipped" +
                  bad};
}

// 7. hypercube counterexample
Outcome hypercube_counterexample() {
  const auto t0 = Clock::now();
  std::string detail;
  bool ok = true;

  const HypercubeModel target(8, 128, 0.1);
  const auto cut = coordinate_cut_expansion(target);
  const bool cut_ok = cut.size_fraction == 0.125 && std::abs(cut.expansion - 0.0875) <= 1e-15 && cut.expansion <= 0.1;
  ok &= cut_ok;
  detail += "coordinate cut " + fmt(cut.size_fraction) + "/" + fmt(cut.expansion) + (cut_ok ? " ok" : " BAD");

  const auto rep = counterexample_report(target, 0.01, 0.9);
  const bool balls_ok = !rep.balls.empty() && rep.passed;
  ok &= balls_ok;
  detail += "; balls within 0.01: " + std::to_string(rep.balls.size()) + ", min expansion " +
            fmt(rep.weakest ? rep.weakest->expansion : 0.0) + " at r=" +
            std::to_string(rep.weakest ? rep.weakest->r : -1) + (balls_ok ? " ok" : " < 0.9 BAD");

  int level_cases = 0;
  bool level_ok = true;
  for (double eps : {0.1, 0.3, 0.5}) {
    for (int d = 1; d <= 8; ++d) {
      for (int r = 0; r <= d; ++r, ++level_cases) level_ok &= level_monotonicity_check(HypercubeModel(2, d, eps), r).passed();
    }
    for (int d = 1; d <= 5; ++d) {
      for (int r = 0; r <= d; ++r, ++level_cases) level_ok &= level_monotonicity_check(HypercubeModel(3, d, eps), r).passed();
    }
  }
  ok &= level_ok;
  detail += "; level monotonicity " + std::to_string(level_cases) + (level_ok ? " ok" : " BAD");

  // radius law after 3 steps from B(0): exact chain, ball process, explicit process
  const HypercubeModel small(2, 3, 0.2);
  const auto g = hypercube_graph(small);
  BallProcess proc(small);
  const int steps = 3;
  std::vector<double> law(static_cast<std::size_t>(small.d()) + 3, 0.0);  // last slot: not a ball
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
  const long long trials = 10000;
  std::vector<long long> implicit(law.size(), 0), explicit_counts(law.size(), 0);
  Rng rng_i(707), rng_e(708);
  for (long long i = 0; i < trials; ++i) {
    ++implicit[proc.run(steps, rng_i).back().r + 1];
    VertexSet s = VertexSet::singleton(g.size(), 0);
    for (int t = 0; t < steps; ++t) s = esp_sample_step(g, s, rng_e).next;
    const auto r = ball_radius(small, s);
    ++explicit_counts[r ? *r + 1 : law.size() - 1];
  }
  const double zi = max_sigma_deviation(implicit, law, trials);
  const double ze = max_sigma_deviation(explicit_counts, law, trials);
  const bool esp_ok = zi <= 4.0 && ze <= 4.0;
  ok &= esp_ok;
  detail += "; ESP on balls vs explicit (2,3): max sigma " + fmt(std::max(zi, ze)) + (esp_ok ? " ok" : " BAD");

  const double secs = seconds_since(t0);
  ok &= secs < 30.0;
  detail += "; " + fmt(secs) + " s";
  return {ok, detail};
}

// 8. explicit vs implicit hypercube on k^d <= 729
Outcome explicit_implicit() {
  int instances = 0;
  double werr = 0.0;
  double eerr = 0.0;
  for (int k = 2; k <= 729; ++k) {
    std::uint64_t size = 1;
    for (int d = 1;; ++d) {
      size *= static_cast<std::uint64_t>(k);
      if (size > 729) break;
      const HypercubeModel m(k, d, 0.3);
      const WeightChainKernel kernel(m);
      std::vector<int> weight_of(size);
      for (std::uint64_t x = 0; x < size; ++x) weight_of[x] = hamming_weight(m.decode(x));
      for (int r = 0; r <= d; ++r) {
        const auto ball = ball_profile(kernel, r);
        const auto w = explicit_ball_weights(m, r);
        double inner = 0.0;
        double members = 0.0;
        for (std::uint64_t x = 0; x < size; ++x) {
          werr = std::max(werr, std::abs(w[x] - ball.stay_weight[weight_of[x]]));
          if (weight_of[x] <= r) {
            inner += w[x];
            members += 1.0;
          }
        }
        eerr = std::max(eerr, std::abs((members - inner) / members - ball.expansion));
        if (size <= 243) {
          const auto g = hypercube_graph(m);
          eerr = std::max(eerr, std::abs(expansion_unchecked(g, explicit_ball(m, r)) - ball.expansion));
        }
      }
      ++instances;
    }
  }
  return {werr <= 1e-12 && eerr <= 1e-9, std::to_string(instances) + " instances, max weight error " + fmt(werr) +
                                              ", max expansion error " + fmt(eerr)};
}

// 9. determinism of verify
Outcome determinism() {
  const auto once = [] {
    const char* argv[] = {"spexlab", "verify", "--seed", "7"};
    std::ostringstream out, err;
    const int code = cli::run(4, argv, out, err);
    return std::pair{code, out.str()};
  };
  const auto a = once();
  const auto b = once();
  return {a.second == b.second && !a.second.empty(),
          std::to_string(a.second.size()) + " bytes, exit codes " + std::to_string(a.first) + "/" +
              std::to_string(b.first) + (a.second == b.second ? ", identical" : ", DIFFERENT")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"chord inequality suite", chord_suite},
      {"gauge lower bounds", gauge_bounds},
      {"Morris-Peres identity", mp_identity},
      {"sampler fidelity", sampler_fidelity},
      {"graph-power chain", power_chain},
      {"mixing bound", mixing_bound},
      {"hypercube counterexample", hypercube_counterexample},
      {"explicit/implicit hypercube agreement", explicit_implicit},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %zu %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.passed) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
