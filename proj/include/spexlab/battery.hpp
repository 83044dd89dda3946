#ifndef SPEXLAB_BATTERY_HPP
#define SPEXLAB_BATTERY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spexlab/generators.hpp"
#include "spexlab/graph.hpp"
#include "spexlab/graph_ops.hpp"
#include "spexlab/hypercube_model.hpp"
#include "spexlab/rng.hpp"

namespace spexlab {

struct NamedGraph {
  std::string name;
  WeightedGraph graph;
};

/// Unit-regular test graphs with n <= max_n: cycles, completes, complete
/// bipartites, paths, dumbbells, random convex combinations of permutations
/// and small explicit hypercubes, followed by the half-lazy copy of each.
/// Only the random members depend on the seed.
inline std::vector<NamedGraph> generator_battery(std::uint64_t seed, int max_n = 10) {
  std::vector<NamedGraph> base;
  for (int n = 3; n <= max_n; ++n) base.push_back({"cycle(" + std::to_string(n) + ")", cycle_graph(n)});
  for (int n = 2; n <= max_n; ++n) base.push_back({"complete(" + std::to_string(n) + ")", complete_graph(n)});
  for (int m = 2; 2 * m <= max_n; ++m) {
    base.push_back({"complete_bipartite(" + std::to_string(m) + ")", complete_bipartite_graph(m)});
  }
  for (int n = 3; n <= max_n; n += 2) base.push_back({"path(" + std::to_string(n) + ")", path_graph(n)});
  for (int m = 3; 2 * m <= max_n; ++m) {
    base.push_back({"dumbbell(" + std::to_string(m) + ")", dumbbell_graph(m, 0.05)});
  }
  const Rng root(seed);
  for (int n = 4; n <= max_n; ++n) {
    for (int rep = 0; rep < 2; ++rep) {
      Rng rng = root.split(static_cast<std::uint64_t>(n * 16 + rep));
      base.push_back({"random(" + std::to_string(n) + "," + std::to_string(rep) + ")",
                      random_unit_regular(n, 3, rng)});
    }
  }
  const struct {
    int k, d;
    double eps;
  } cubes[] = {{2, 2, 0.5}, {2, 3, 0.2}, {3, 2, 0.3}};
  for (const auto& c : cubes) {
    const HypercubeModel m(c.k, c.d, c.eps);
    if (m.explicit_size() == 0 || m.explicit_size() > static_cast<std::uint64_t>(max_n)) continue;
    base.push_back({"hypercube(" + std::to_string(c.k) + "," + std::to_string(c.d) + "," + std::to_string(c.eps) + ")",
                    hypercube_graph(m)});
  }
  std::vector<NamedGraph> out = base;
  for (const auto& g : base) out.push_back({"lazy " + g.name, lazify(g.graph, 0.5)});
  return out;
}

}  // namespace spexlab

#endif  // SPEXLAB_BATTERY_HPP
