#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spexlab/spexlab.hpp"

using namespace spexlab;

TEST(Curve, IntegerPointsMatchBestSubset) {
  Rng rng(5);
  for (int n : {5, 7, 9}) {
    const auto g = random_unit_regular(n, 3, rng);
    for (int rep = 0; rep < 4; ++rep) {
      const auto p = random_probability(n, rng);
      const ConcaveCurve c(g, p);
      for (int x = 0; x <= n; ++x) EXPECT_NEAR(c(x), oracle::curve_at(p, x), 1e-12);
    }
  }
}

TEST(Curve, ConcaveAndMonotone) {
  Rng rng(9);
  const auto g = lazify(cycle_graph(8), 0.5);
  const auto p = random_probability(8, rng);
  const ConcaveCurve c(g, p);
  double prev_slope = std::numeric_limits<double>::infinity();
  for (double x = 0.0; x < 8.0; x += 0.25) {
    const double slope = (c(x + 0.25) - c(x)) / 0.25;
    EXPECT_GE(slope, -1e-12);
    EXPECT_LE(slope, prev_slope + 1e-9);
    prev_slope = slope;
  }
  EXPECT_NEAR(c.total(), 1.0, 1e-12);
  EXPECT_NEAR(c(100.0), 1.0, 1e-12);
}

TEST(Curve, TiesMergeIntoOneSegment) {
  const auto g = cycle_graph(4);
  const std::vector<double> p = {0.25, 0.25, 0.25, 0.25};
  const ConcaveCurve c(g, p);
  EXPECT_EQ(c.breakpoints().size(), 2u);
  EXPECT_NEAR(c(1.5), 0.375, 1e-15);
}

TEST(Curve, FirstReachInverts) {
  const auto g = cycle_graph(5);
  const std::vector<double> p = {0.5, 0.3, 0.2, 0.0, 0.0};
  const ConcaveCurve c(g, p);
  EXPECT_NEAR(c.first_reach(0.5), 1.0, 1e-12);
  EXPECT_NEAR(c.first_reach(0.65), 1.5, 1e-12);
  EXPECT_NEAR(c.first_reach(1.0), 3.0, 1e-12);
  EXPECT_NEAR(c.first_reach(2.0), c.width(), 0.0);
}

TEST(Curve, ChordSlackNonnegativeOnBattery) {
  const auto battery = generator_battery(7, 8);
  Rng rng(1);
  for (const auto& [name, g] : battery) {
    const double gap = comb_gap(g).value;
    const auto p = random_probability(g.size(), rng);
    for (int x = 1; 2 * x <= g.size(); ++x) EXPECT_GE(chord_slack(g, p, x, gap), -1e-9) << name << " x=" << x;
  }
}

TEST(Curve, DominanceParams) {
  const CurveDominanceParams pr(1.5, 0.75);
  EXPECT_NEAR(pr.threshold(), (0.75 - 0.5625) / (1.5 - 0.5625), 1e-15);
  EXPECT_GT(pr.decay(), 0.0);
  EXPECT_NEAR(gap_envelope(0.5, 0, 4.0, 8.0), 0.5 + 2.0, 1e-15);
}
