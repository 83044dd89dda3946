#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spexlab/spexlab.hpp"

using namespace spexlab;

TEST(Walk, StepMatchesDenseProduct) {
  Rng rng(21);
  const auto g = random_unit_regular(8, 4, rng);
  const auto w = oracle::dense(g);
  auto p = random_probability(8, rng);
  auto q = p;
  for (int t = 0; t < 5; ++t) {
    p = walk_step(g, p);
    q = oracle::step(w, q);
  }
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(p[i], q[i], 1e-14);
}

TEST(Walk, MassVectorValidates) {
  EXPECT_THROW(MassVector(std::vector<double>{0.5, -0.1, 0.6}), DomainError);
  const MassVector m(std::vector<double>{0.25, 0.75});
  EXPECT_TRUE(m.is_probability());
}

TEST(Walk, MixingTimeMatchesOracle) {
  const std::vector<WeightedGraph> gs = {cycle_graph(5), complete_graph(6), lazify(cycle_graph(8), 0.5),
                                         lazify(dumbbell_graph(3, 0.05), 0.5)};
  for (const auto& g : gs) {
    const auto res = mixing_time(g, 500);
    const int t = oracle::mixing_time(oracle::dense(g), 500);
    ASSERT_TRUE(res.mixed());
    EXPECT_EQ(*res.steps, t);
  }
}

TEST(Walk, BipartiteNeverMixes) {
  const auto res = mixing_time(cycle_graph(6), 200);
  EXPECT_FALSE(res.mixed());
  EXPECT_EQ(oracle::mixing_time(oracle::dense(cycle_graph(6)), 200), -1);
}

TEST(Walk, SweepFindsDumbbellSide) {
  const auto g = lazify(dumbbell_graph(5, 0.01), 0.5);
  const auto res = rw_local_partition(g, 0, 8, 5);
  EXPECT_EQ(res.set.size(), 5);
  EXPECT_TRUE(res.set.contains(0));
  EXPECT_NEAR(res.expansion, small_set_expansion(g, 0.5).value, 1e-12);
}

TEST(Walk, LevelOrderBreaksTiesByIndex) {
  const auto g = cycle_graph(4);
  const std::vector<double> p = {0.25, 0.25, 0.25, 0.25};
  const auto order = level_order(g, p);
  EXPECT_EQ(order, (std::vector<Vertex>{0, 1, 2, 3}));
}

TEST(Walk, LazyEdgeMixesInOneStep) {
  const auto res = mixing_time(lazify(complete_graph(2), 0.5), 10);
  ASSERT_TRUE(res.mixed());
  EXPECT_EQ(*res.steps, 1);
}
