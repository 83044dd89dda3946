#ifndef SPEXLAB_TOOLS_CLI_HPP
#define SPEXLAB_TOOLS_CLI_HPP

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spexlab/spexlab.hpp"

namespace spexlab::cli {

using Json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kAssertion = 1, kUsage = 2, kCapacity = 3 };

struct Options {
  std::string graph_path;
  std::string out_path;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::optional<int> steps;
  std::optional<double> budget;
  std::optional<double> delta;
  std::optional<double> eps;
  std::optional<int> k;
  std::optional<int> dim;
  std::optional<double> cap;
  bool volume_biased = false;
  std::optional<int> restarts;
  int max_n = kBruteForceLimit;
  std::optional<int> seed_vertex;
  bool report = false;
  bool esp = false;
  bool fractional = false;

  // graph
  std::string family;
  std::optional<int> n;
  std::optional<double> bridge;
  std::optional<double> lazy_alpha;
  std::optional<int> power;

  // verify
  std::vector<std::string> checks;
  bool list = false;
  std::optional<int> battery_n;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

inline Json set_json(const VertexSet& s) {
  Json a = Json::array();
  for (Vertex v : s.members()) a.push_back(v);
  return a;
}

/// JSON number, or null for non-finite values.
inline Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline std::string csv_num(double v) {
  if (!std::isfinite(v)) return "";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline void emit(const Options& opt, const std::string& payload, std::ostream& out) {
  if (opt.out_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(opt.out_path, std::ios::binary);
  if (!f) throw UsageError("cannot write output file '" + opt.out_path + "'");
  f << payload;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline WeightedGraph load_graph(const Options& opt) {
  if (opt.graph_path.empty()) throw UsageError("--graph PATH is required");
  return read_graph_file(opt.graph_path);
}

inline std::uint64_t require_seed(const Options& opt, const char* what) {
  if (!opt.seed) throw UsageError(std::string(what) + " is stochastic; pass --seed N");
  return *opt.seed;
}

inline Vertex seed_vertex(const Options& opt, const WeightedGraph& g) {
  const int v = opt.seed_vertex.value_or(0);
  if (v < 0 || v >= g.size()) throw UsageError("--seed-vertex must lie in [0, n)");
  return v;
}

inline std::string format_of(const Options& opt, const std::string& fallback) {
  return opt.format.empty() ? fallback : opt.format;
}

inline Json graph_summary(const WeightedGraph& g) {
  Json j;
  j["n"] = g.size();
  j["volume"] = g.volume();
  j["regular_unit"] = g.regular_unit();
  j["lazy"] = g.lazy();
  j["connected"] = is_connected(g);
  j["bipartite"] = is_bipartite(g);
  return j;
}

inline int cmd_graph(const Options& opt, std::ostream& out) {
  WeightedGraph g;
  if (!opt.family.empty()) {
    const auto fam = parse_family(opt.family);
    if (!fam) throw UsageError("unknown --family '" + opt.family + "'");
    GeneratorParams p;
    p.n = opt.n.value_or(0);
    p.bridge = opt.bridge.value_or(p.bridge);
    p.k = opt.k.value_or(2);
    p.d = opt.dim.value_or(1);
    p.eps = opt.eps.value_or(0.0);
    g = generate(*fam, p);
  } else {
    g = load_graph(opt);
  }
  if (opt.lazy_alpha) g = lazify(g, *opt.lazy_alpha);
  if (opt.power) g = graph_power(g, *opt.power);

  const std::string fmt = format_of(opt, "text");
  if (fmt == "text") {
    emit(opt, format_graph(g), out);
  } else if (fmt == "csv") {
    std::string s = "u,v,w\n";
    for (const Edge& e : g.edges()) s += std::to_string(e.u) + "," + std::to_string(e.v) + "," + csv_num(e.weight) + "\n";
    emit(opt, s, out);
  } else {
    Json j = graph_summary(g);
    Json edges = Json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, e.weight});
    j["edges"] = edges;
    emit(opt, dump(j), out);
  }
  return kOk;
}

inline int cmd_curve(const Options& opt, std::ostream& out) {
  const WeightedGraph g = load_graph(opt);
  const Vertex v = seed_vertex(opt, g);
  const int steps = opt.steps.value_or(10);
  if (steps < 0) throw UsageError("--steps must be >= 0");
  std::optional<double> gap;
  if (g.regular_unit()) gap = comb_gap(g, opt.max_n).value;
  std::vector<double> p(static_cast<std::size_t>(g.size()), 0.0);
  p[v] = 1.0;
  Json rows = Json::array();
  std::string csv = "t,x,curve,envelope\n";
  for (int t = 0; t <= steps; ++t) {
    const ConcaveCurve c(g, p);
    for (int x = 0; x <= static_cast<int>(std::round(g.volume())); ++x) {
      const double env = gap ? gap_envelope(*gap, t, x, g.size()) : std::nan("");
      csv += std::to_string(t) + "," + std::to_string(x) + "," + csv_num(c(x)) + "," + csv_num(env) + "\n";
      rows.push_back({{"t", t}, {"x", x}, {"curve", c(x)}, {"envelope", num(env)}});
    }
    p = walk_step(g, p);
  }
  if (format_of(opt, "csv") == "json") {
    Json j;
    j["command"] = "curve";
    j["seed_vertex"] = v;
    j["gap"] = gap ? num(*gap) : Json(nullptr);
    j["rows"] = rows;
    emit(opt, dump(j), out);
  } else {
    emit(opt, csv, out);
  }
  return kOk;
}

inline int cmd_walk(const Options& opt, std::ostream& out) {
  const WeightedGraph g = load_graph(opt);
  const Vertex v = seed_vertex(opt, g);
  const int steps = opt.steps.value_or(default_walk_horizon(g.size()));
  if (steps < 1) throw UsageError("--steps must be >= 1");
  const int max_size = opt.budget ? static_cast<int>(std::floor(*opt.budget + 1e-9)) : g.size() / 2;
  if (max_size < 1) throw UsageError("--budget must admit at least one vertex");
  std::vector<double> p(static_cast<std::size_t>(g.size()), 0.0);
  p[v] = 1.0;
  std::string csv = "t,l1_to_uniform,sweep_expansion,sweep_size\n";
  Json rows = Json::array();
  for (int t = 1; t <= steps; ++t) {
    p = walk_step(g, p);
    const auto sweep = sweep_cut(g, p, max_size);
    const double l1 = l1_distance_to_uniform(p);
    csv += std::to_string(t) + "," + csv_num(l1) + "," + csv_num(sweep.expansion) + "," +
           std::to_string(sweep.set.size()) + "\n";
    rows.push_back({{"t", t}, {"l1_to_uniform", l1}, {"sweep_expansion", sweep.expansion},
                    {"sweep_set", set_json(sweep.set)}});
  }
  if (format_of(opt, "csv") == "json") {
    const auto best = rw_local_partition(g, v, steps, max_size);
    Json j;
    j["command"] = "walk";
    j["seed_vertex"] = v;
    j["steps"] = rows;
    j["best"] = {{"set", set_json(best.set)}, {"expansion", best.expansion}, {"t", best.best_step}};
    emit(opt, dump(j), out);
  } else {
    emit(opt, csv, out);
  }
  return kOk;
}

inline int cmd_esp(const Options& opt, std::ostream& out) {
  const WeightedGraph g = load_graph(opt);
  EspPartitionOptions e;
  e.seed_vertex = seed_vertex(opt, g);
  e.step_cap = opt.steps.value_or(100);
  e.size_budget = opt.budget.value_or(g.volume() / 2);
  e.rng_seed = require_seed(opt, "esp");
  e.volume_biased = opt.volume_biased;
  e.phi_target = 0.0;
  const auto res = esp_local_partition(g, e);

  Json summary;
  summary["best_set"] = set_json(res.set);
  summary["expansion"] = res.expansion;
  summary["within_budget"] = res.within_budget;
  summary["termination"] = std::string(to_string(res.trajectory.termination));
  summary["seed"] = res.trajectory.seed;
  summary["volume_biased"] = res.trajectory.volume_biased;

  if (format_of(opt, "csv") == "json") {
    Json steps = Json::array();
    for (const auto& st : res.trajectory.steps) {
      steps.push_back({{"t", st.t},
                       {"set", set_json(st.set)},
                       {"volume", st.volume},
                       {"expansion", st.expansion ? num(*st.expansion) : Json(nullptr)},
                       {"u", st.u ? num(*st.u) : Json(nullptr)}});
    }
    Json j;
    j["command"] = "esp";
    j["steps"] = steps;
    j["summary"] = summary;
    emit(opt, dump(j), out);
  } else {
    std::string csv = "t,size,volume,expansion,u\n";
    for (const auto& st : res.trajectory.steps) {
      csv += std::to_string(st.t) + "," + std::to_string(st.set.size()) + "," + csv_num(st.volume) + "," +
             (st.expansion ? csv_num(*st.expansion) : "") + "," + (st.u ? csv_num(*st.u) : "") + "\n";
    }
    csv += "# summary " + summary.dump() + "\n";
    emit(opt, csv, out);
  }
  return kOk;
}

inline Json certificate_json(const GapCertificate& c) {
  Json j;
  j["value"] = c.value;
  j["method"] = std::string(to_string(c.method));
  j["witness_S"] = set_json(c.witness_s);
  j["witness_T"] = set_json(c.witness_t);
  if (c.method == GapMethod::heuristic) {
    j["chi_S"] = c.chi_s;
    j["chi_T"] = c.chi_t;
  }
  return j;
}

inline int cmd_gaps(const Options& opt, std::ostream& out) {
  const WeightedGraph g = load_graph(opt);
  Json j;
  j["command"] = "gaps";
  j["graph"] = graph_summary(g);
  const bool exhaustive = g.size() <= opt.max_n;
  if (!exhaustive && !opt.fractional) {
    throw CapacityError("gaps: n = " + std::to_string(g.size()) + " exceeds --max-n " + std::to_string(opt.max_n) +
                        "; raise --max-n or use --fractional --restarts R --seed N");
  }
  if (exhaustive) {
    if (g.regular_unit()) {
      j["comb_gap"] = certificate_json(comb_gap(g, opt.max_n));
      if (opt.delta) j["comb_gap_delta"] = certificate_json(comb_gap_delta(g, *opt.delta, opt.max_n));
    }
    const auto phi = small_set_expansion(g, 0.5, opt.max_n);
    j["expansion"] = {{"value", phi.value}, {"set", set_json(phi.set)}};
    if (opt.delta) {
      const auto phid = small_set_expansion(g, *opt.delta, opt.max_n);
      j["small_set_expansion"] = {{"delta", *opt.delta}, {"value", phid.value}, {"set", set_json(phid.set)}};
      if (g.regular_unit() && std::floor(*opt.delta / 2 * g.size() + 1e-9) >= 1) {
        const auto rel = relation_check(g, *opt.delta, opt.max_n);
        j["relation"] = {{"lhs", rel.lhs}, {"rhs", rel.rhs}, {"holds", rel.holds()}};
      }
    }
    const auto psi = psi_graph(g, opt.max_n);
    const auto prof = vertex_profile(g, psi.set);
    j["psi"] = {{"value", psi.value}, {"set", set_json(psi.set)}, {"phi_v", prof.phi_v}, {"n_half", num(prof.n_half)}};
    if (g.lazy()) {
      if (const auto pair = global_vertex_pair(g, opt.max_n)) {
        j["certified_pair"] = {{"a", pair->a()}, {"b", pair->b()}, {"decay", pair->decay()}};
      }
    }
  }
  if (opt.fractional) {
    const auto seed = require_seed(opt, "gaps --fractional");
    const int restarts = opt.restarts.value_or(kDefaultRestarts);
    if (restarts < 1) throw UsageError("--restarts must be >= 1");
    j["fractional"] = certificate_json(comb_gap_fractional(g, restarts, kDefaultIterationCap, seed));
    j["fractional"]["restarts"] = restarts;
    j["fractional"]["seed"] = seed;
  }
  emit(opt, dump(j), out);
  if (j.contains("relation") && !j["relation"]["holds"].get<bool>()) return kAssertion;
  return kOk;
}

inline int cmd_hypercube(const Options& opt, std::ostream& out) {
  if (!opt.k || !opt.dim || !opt.eps) throw UsageError("hypercube needs --k, --dim and --eps");
  const HypercubeModel m(*opt.k, *opt.dim, *opt.eps);
  const bool csv = format_of(opt, "json") == "csv";

  if (opt.esp) {
    const int steps = opt.steps.value_or(20);
    Rng rng(require_seed(opt, "hypercube --esp"));
    const auto traj = esp_on_balls(m, steps, rng, opt.volume_biased);
    if (csv) {
      std::string s = "t,r,size_fraction,expansion,u\n";
      for (const auto& st : traj) {
        s += std::to_string(st.t) + "," + std::to_string(st.r) + "," + csv_num(st.size_fraction) + "," +
             csv_num(st.expansion) + "," + (st.u ? csv_num(*st.u) : "") + "\n";
      }
      emit(opt, s, out);
    } else {
      Json rows = Json::array();
      for (const auto& st : traj) {
        Json row = {{"t", st.t}, {"r", st.r}, {"size_fraction", st.size_fraction}, {"expansion", st.expansion},
                    {"u", st.u ? num(*st.u) : Json(nullptr)}};
        if (st.walker_weight) row["walker_weight"] = *st.walker_weight;
        rows.push_back(row);
      }
      Json j;
      j["command"] = "hypercube";
      j["model"] = {{"k", m.k()}, {"d", m.d()}, {"eps", m.eps()}};
      j["seed"] = *opt.seed;
      j["volume_biased"] = opt.volume_biased;
      j["trajectory"] = rows;
      emit(opt, dump(j), out);
    }
    return kOk;
  }

  const double cap = opt.cap.value_or(1.0);
  const auto rep = counterexample_report(m, cap);
  if (csv) {
    std::string s = "r,size_fraction,expansion\n";
    for (const auto& b : rep.balls) s += std::to_string(b.r) + "," + csv_num(b.size_fraction) + "," + csv_num(b.expansion) + "\n";
    emit(opt, s, out);
  } else {
    Json j;
    j["command"] = "hypercube";
    j["model"] = {{"k", m.k()}, {"d", m.d()}, {"eps", m.eps()}};
    j["coordinate_cut"] = {{"size_fraction", rep.coordinate.size_fraction},
                           {"expansion", rep.coordinate.expansion},
                           {"within_eps", rep.coordinate.within_eps}};
    j["cap"] = rep.cap;
    j["threshold"] = rep.threshold;
    Json balls = Json::array();
    for (const auto& b : rep.balls) balls.push_back({{"r", b.r}, {"size_fraction", b.size_fraction}, {"expansion", b.expansion}});
    j["balls"] = balls;
    j["vacuous"] = rep.vacuous;
    j["degenerate"] = rep.degenerate;
    if (rep.weakest) {
      j["min_ball"] = {{"r", rep.weakest->r}, {"size_fraction", rep.weakest->size_fraction},
                       {"expansion", rep.weakest->expansion}};
    }
    if (rep.certified_prefix) {
      j["certified_prefix"] = {{"r", rep.certified_prefix->r}, {"size_fraction", rep.certified_prefix->size_fraction}};
    }
    if (opt.report) j["passed"] = rep.passed;
    j["reachability"] = rep.reachability;
    emit(opt, dump(j), out);
  }
  if (opt.report && !rep.vacuous && !rep.passed) return kAssertion;
  return kOk;
}

inline Json check_json(const CheckResult& r) {
  Json j;
  j["name"] = r.name;
  j["statement"] = r.statement;
  j["passed"] = r.passed;
  j["max_violation"] = num(r.max_violation);
  j["cases"] = r.cases;
  j["witness"] = r.witness;
  Json m = Json::object();
  for (const auto& [k, v] : r.metrics) m[k] = num(v);
  j["metrics"] = m;
  return j;
}

inline int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.list) {
    std::string s;
    for (const auto& name : check_names()) s += name + "\n";
    emit(opt, s, out);
    return kOk;
  }
  VerifyOptions vo;
  vo.seed = require_seed(opt, "verify");
  vo.max_n = opt.battery_n.value_or(10);
  if (vo.max_n > opt.max_n) throw CapacityError("verify battery size exceeds --max-n");
  const VerifyContext ctx(vo);
  std::vector<CheckResult> results;
  if (opt.checks.empty()) {
    results = run_all_checks(ctx);
  } else {
    for (const auto& name : opt.checks) {
      auto r = run_check(ctx, name);
      if (!r) throw UsageError("unknown check '" + name + "'");
      results.push_back(std::move(*r));
    }
  }
  Json j;
  j["command"] = "verify";
  j["seed"] = vo.seed;
  j["battery"] = {{"max_n", vo.max_n}, {"graphs", ctx.battery().size()}};
  Json checks = Json::array();
  bool ok = true;
  for (const auto& r : results) {
    checks.push_back(check_json(r));
    if (!r.passed) {
      ok = false;
      err << "FAIL " << r.name << ": " << r.witness << "\n";
    }
  }
  j["checks"] = checks;
  j["passed"] = ok;
  emit(opt, dump(j), out);
  return ok ? kOk : kAssertion;
}

/// Parses argv and dispatches; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"spexlab: random walks, evolving sets and small-set expansion experiments"};
  app.require_subcommand(1);
  Options opt;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--out", opt.out_path, "Write output to PATH instead of stdout");
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json", "text"}));
    sub->add_option("--max-n", opt.max_n, "Vertex-count guard for exhaustive enumeration")->check(CLI::Range(1, 62));
  };
  const auto graph_opt = [&](CLI::App* sub) { sub->add_option("--graph", opt.graph_path, "Graph file"); };

  auto* graph = app.add_subcommand("graph", "Generate, transform and print a graph");
  common(graph);
  graph_opt(graph);
  graph->add_option("--family", opt.family, "cycle|complete|complete_bipartite|path|dumbbell|hypercube_explicit");
  graph->add_option("--n", opt.n, "Vertices (side size for complete_bipartite and dumbbell)");
  graph->add_option("--bridge", opt.bridge, "Dumbbell bridge weight");
  graph->add_option("--k", opt.k, "Hypercube alphabet size");
  graph->add_option("--dim", opt.dim, "Hypercube dimension");
  graph->add_option("--eps", opt.eps, "Hypercube noise");
  graph->add_option("--lazy", opt.lazy_alpha, "Lazify with self-loop weight ALPHA");
  graph->add_option("--power", opt.power, "Replace the graph by its T-th power");

  auto* curve = app.add_subcommand("curve", "Curve of A^t chi_v with the gap envelope");
  common(curve);
  graph_opt(curve);
  curve->add_option("--seed-vertex", opt.seed_vertex, "Start vertex");
  curve->add_option("--steps", opt.steps, "Largest t");

  auto* walk = app.add_subcommand("walk", "Random walk sweeps from a seed vertex");
  common(walk);
  graph_opt(walk);
  walk->add_option("--seed-vertex", opt.seed_vertex, "Start vertex");
  walk->add_option("--steps", opt.steps, "Walk steps");
  walk->add_option("--budget", opt.budget, "Largest sweep prefix size");

  auto* esp = app.add_subcommand("esp", "Evolving set process local partitioning");
  common(esp);
  graph_opt(esp);
  esp->add_option("--seed-vertex", opt.seed_vertex, "Start vertex");
  esp->add_option("--steps", opt.steps, "Step cap");
  esp->add_option("--budget", opt.budget, "Volume budget");
  esp->add_option("--seed", opt.seed, "RNG seed");
  esp->add_flag("--volume-biased", opt.volume_biased, "Run the volume-biased process");

  auto* gaps = app.add_subcommand("gaps", "Combinatorial gap, expansion and vertex-expansion measures");
  common(gaps);
  graph_opt(gaps);
  gaps->add_option("--delta", opt.delta, "Small-set parameter");
  gaps->add_flag("--fractional", opt.fractional, "Also run the fractional heuristic");
  gaps->add_option("--restarts", opt.restarts, "Heuristic restarts");
  gaps->add_option("--seed", opt.seed, "RNG seed for the heuristic");

  auto* cube = app.add_subcommand("hypercube", "Noisy hypercube ball expansions and the counterexample report");
  common(cube);
  cube->add_option("--k", opt.k, "Alphabet size");
  cube->add_option("--dim", opt.dim, "Dimension");
  cube->add_option("--eps", opt.eps, "Noise");
  cube->add_flag("--report", opt.report, "Assert the ball threshold 1 - eps within the cap");
  cube->add_option("--cap", opt.cap, "Largest ball size fraction");
  cube->add_flag("--esp", opt.esp, "Simulate the evolving set process on balls");
  cube->add_option("--steps", opt.steps, "Steps for --esp");
  cube->add_option("--seed", opt.seed, "RNG seed for --esp");
  cube->add_flag("--volume-biased", opt.volume_biased, "Volume-biased process for --esp");

  auto* verify = app.add_subcommand("verify", "Run the named inequality checks over the generator battery");
  common(verify);
  verify->add_option("--seed", opt.seed, "Battery and sampling seed");
  verify->add_option("--check", opt.checks, "Run only the named check (repeatable)");
  verify->add_option("--battery-n", opt.battery_n, "Largest battery graph size");
  verify->add_flag("--list", opt.list, "List check names");
  // accepted for flag uniformity; unused by verify
  verify->add_option("--graph", opt.graph_path, "Unused");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (graph->parsed()) return cmd_graph(opt, out);
    if (curve->parsed()) return cmd_curve(opt, out);
    if (walk->parsed()) return cmd_walk(opt, out);
    if (esp->parsed()) return cmd_esp(opt, out);
    if (gaps->parsed()) return cmd_gaps(opt, out);
    if (cube->parsed()) return cmd_hypercube(opt, out);
    if (verify->parsed()) return cmd_verify(opt, out, err);
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kCapacity;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace spexlab::cli

#endif  // SPEXLAB_TOOLS_CLI_HPP
