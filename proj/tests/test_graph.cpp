#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "spexlab/spexlab.hpp"

using namespace spexlab;

TEST(Graph, CycleIsUnitRegular) {
  const auto g = cycle_graph(5);
  EXPECT_EQ(g.size(), 5);
  EXPECT_TRUE(g.regular_unit());
  EXPECT_FALSE(g.lazy());
  EXPECT_DOUBLE_EQ(g.volume(), 5.0);
  EXPECT_DOUBLE_EQ(g.weight(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(g.weight(0, 2), 0.0);
}

TEST(Graph, DuplicateEdgesSum) {
  const std::vector<Edge> e = {{0, 1, 0.25}, {1, 0, 0.25}, {0, 0, 0.5}, {1, 1, 0.5}};
  const auto g = WeightedGraph::from_edges(2, e);
  EXPECT_DOUBLE_EQ(g.weight(0, 1), 0.5);
  EXPECT_TRUE(g.regular_unit());
  EXPECT_TRUE(g.lazy());
}

TEST(Graph, RejectsBadEdges) {
  const std::vector<Edge> neg = {{0, 1, -1.0}};
  EXPECT_THROW(WeightedGraph::from_edges(2, neg), DomainError);
  const std::vector<Edge> range = {{0, 2, 1.0}};
  EXPECT_THROW(WeightedGraph::from_edges(2, range), DomainError);
}

TEST(Graph, CutWeightIsBilinear) {
  Rng rng(3);
  const auto g = random_unit_regular(7, 3, rng);
  const auto w = oracle::dense(g);
  for (std::uint64_t s = 1; s < 128; s += 5) {
    for (std::uint64_t t = 1; t < 128; t += 7) {
      const auto S = VertexSet::from_mask(7, s);
      const auto T = VertexSet::from_mask(7, t);
      EXPECT_NEAR(cut_weight(g, S, T), oracle::weight(w, s, t), 1e-12);
    }
    if (std::popcount(s) <= 3) {
      EXPECT_NEAR(expansion(g, VertexSet::from_mask(7, s)), oracle::phi(w, s), 1e-12);
    }
  }
}

TEST(Graph, SmallSetExpansionMatchesOracle) {
  const std::vector<WeightedGraph> gs = {cycle_graph(8), dumbbell_graph(4, 0.05), complete_bipartite_graph(3),
                                         lazify(path_graph(7), 0.5)};
  for (const auto& g : gs) {
    const auto w = oracle::dense(g);
    for (double delta : {0.5, 0.25}) {
      EXPECT_NEAR(small_set_expansion(g, delta).value, oracle::small_set_expansion(w, delta), 1e-12);
    }
  }
}

TEST(Graph, DumbbellBottleneck) {
  const auto g = dumbbell_graph(4, 0.05);
  const auto best = small_set_expansion(g, 0.5);
  EXPECT_EQ(best.set.size(), 4);
  EXPECT_NEAR(best.value, 0.05 / 4, 1e-12);
}

TEST(Graph, PowerAndLazify) {
  const auto g = cycle_graph(6);
  const auto g2 = graph_power(g, 2);
  EXPECT_TRUE(g2.regular_unit());
  EXPECT_NEAR(g2.weight(0, 0), 0.5, 1e-12);
  EXPECT_NEAR(g2.weight(0, 2), 0.25, 1e-12);
  const auto l = lazify(g, 0.5);
  EXPECT_TRUE(l.lazy());
  EXPECT_NEAR(l.weight(0, 0), 0.5, 1e-12);
  EXPECT_NEAR(l.weight(0, 1), 0.25, 1e-12);
}

TEST(Graph, Connectivity) {
  EXPECT_TRUE(is_bipartite(cycle_graph(6)));
  EXPECT_FALSE(is_bipartite(cycle_graph(5)));
  EXPECT_FALSE(is_bipartite(lazify(cycle_graph(6), 0.5)));
  EXPECT_TRUE(is_connected(cycle_graph(6)));
  EXPECT_FALSE(is_connected(disjoint_union(cycle_graph(3), cycle_graph(3))));
}

TEST(GraphIo, RoundTrip) {
  Rng rng(11);
  const auto g = random_unit_regular(6, 3, rng);
  const auto h = parse_graph(format_graph(g));
  ASSERT_EQ(h.size(), g.size());
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) EXPECT_EQ(h.weight(i, j), g.weight(i, j));
}

TEST(GraphIo, ParseErrorsCarryLine) {
  try {
    parse_graph("# c\nn 3\n0 1 0.5\n0 5 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  EXPECT_THROW(parse_graph("0 1 1\n"), ParseError);
  EXPECT_THROW(parse_graph("n 2\n0 1 -1\n"), ParseError);
  EXPECT_THROW(parse_graph("n 2\n0 1 x\n"), ParseError);
}

TEST(Generators, HypercubeExplicitIsUnitRegular) {
  const HypercubeModel m(3, 2, 0.3);
  const auto g = hypercube_graph(m);
  EXPECT_EQ(g.size(), 9);
  EXPECT_TRUE(g.regular_unit());
  EXPECT_THROW(hypercube_graph(HypercubeModel(2, 13, 0.1)), CapacityError);
}

TEST(Battery, SeedOnlyMovesRandomMembers) {
  const auto a = generator_battery(7);
  const auto b = generator_battery(8);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_TRUE(a[i].graph.regular_unit()) << a[i].name;
    EXPECT_LE(a[i].graph.size(), 10);
  }
}
