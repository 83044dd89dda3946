#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spexlab/spexlab.hpp"

using namespace spexlab;

TEST(CombGap, MatchesPairEnumeration) {
  const auto battery = generator_battery(7, 7);
  for (const auto& [name, g] : battery) {
    const auto c = comb_gap(g);
    EXPECT_NEAR(c.value, oracle::comb_gap(oracle::dense(g)), 1e-12) << name;
    EXPECT_EQ(c.method, GapMethod::exhaustive);
    ASSERT_EQ(c.witness_s.size(), c.witness_t.size());
    EXPECT_NEAR(1.0 - cut_weight(g, c.witness_s, c.witness_t) / c.witness_s.size(), c.value, 1e-12) << name;
  }
}

TEST(CombGap, VanishesOnBipartiteAndDisconnected) {
  EXPECT_NEAR(comb_gap(cycle_graph(8)).value, 0.0, 1e-12);
  EXPECT_NEAR(comb_gap(complete_bipartite_graph(3)).value, 0.0, 1e-12);
  EXPECT_NEAR(comb_gap(disjoint_union(complete_graph(3), complete_graph(3))).value, 0.0, 1e-12);
  // disjoint pairs of size 2 carry 4 * 1/4
  EXPECT_NEAR(comb_gap(complete_graph(5)).value, 0.5, 1e-12);
}

TEST(CombGap, DeltaRestriction) {
  Rng rng(2);
  const auto g = random_unit_regular(8, 3, rng);
  const auto w = oracle::dense(g);
  EXPECT_NEAR(comb_gap_delta(g, 0.25).value, oracle::comb_gap(w, 2), 1e-12);
  EXPECT_THROW(comb_gap_delta(g, 0.1), DomainError);
}

TEST(CombGap, FractionalIsUpperBound) {
  Rng rng(8);
  for (int rep = 0; rep < 5; ++rep) {
    const auto g = random_unit_regular(8, 3, rng);
    const double exact = comb_gap(g).value;
    const auto h = comb_gap_fractional(g, 20, 100, 5 + rep);
    EXPECT_EQ(h.method, GapMethod::heuristic);
    EXPECT_GE(h.value, exact - 1e-9);
  }
}

TEST(CombGap, CapacityFallsBackToHeuristic) {
  const auto g = cycle_graph(12);
  const auto c = comb_gap(g, 10);
  EXPECT_EQ(c.method, GapMethod::heuristic);
}

TEST(Relation, HoldsOnBattery) {
  for (const auto& [name, g] : generator_battery(7, 8)) {
    for (double delta : {0.5, 0.25}) {
      if (std::floor(delta / 2 * g.size() + 1e-9) < 1) continue;
      const auto r = relation_check(g, delta);
      EXPECT_TRUE(r.holds()) << name << " lhs=" << r.lhs << " rhs=" << r.rhs;
    }
  }
}

TEST(VertexProfile, SetAndCurveFormsAgreeOnLazyGraphs) {
  Rng rng(3);
  const auto g = lazify(random_unit_regular(7, 3, rng), 0.5);
  for (std::uint64_t m = 1; m < 128; ++m) {
    const auto s = VertexSet::from_mask(7, m);
    if (volume(g, s) > g.volume() / 2) continue;
    const auto a = vertex_profile(g, s);
    const auto b = vertex_profile_curve(g, s);
    EXPECT_NEAR(a.n_half, b.n_half, 1e-9);
    EXPECT_NEAR(a.psi_product, a.expansion * a.phi_v, 1e-15);
  }
}

TEST(VertexProfile, CycleArc) {
  // arc of 3 on the lazy 8-cycle: cut 2 * 1/4, both outer neighbours carry 1/4 each
  const auto g = lazify(cycle_graph(8), 0.5);
  const auto p = vertex_profile(g, VertexSet(8, {0, 1, 2}));
  EXPECT_NEAR(p.cut, 0.5, 1e-15);
  EXPECT_NEAR(p.n_half, 1.0, 1e-12);
  EXPECT_NEAR(p.phi_v, 1.0 / 3.0, 1e-12);
}

TEST(VertexProfile, EmptyCut) {
  const auto g = disjoint_union(complete_graph(3), complete_graph(3));
  const auto p = vertex_profile(g, VertexSet(6, {0, 1, 2}));
  EXPECT_TRUE(std::isinf(p.n_half));
  EXPECT_EQ(p.phi_v, 1.0);
  EXPECT_EQ(p.psi_product, 0.0);
}

TEST(VertexProfile, CertifiedPairsHold) {
  for (const auto& [name, g] : generator_battery(7, 8)) {
    if (!g.lazy()) continue;
    const auto chk = certified_pair_check(g);
    EXPECT_TRUE(chk.passed) << name << " " << chk.max_violation;
  }
}

TEST(VertexProfile, GlobalPairAbsentWhenDisconnected) {
  const auto g = lazify(disjoint_union(cycle_graph(3), cycle_graph(3)), 0.5);
  EXPECT_FALSE(global_vertex_pair(g).has_value());
  const auto pair = global_vertex_pair(lazify(cycle_graph(6), 0.5));
  ASSERT_TRUE(pair.has_value());
  EXPECT_GT(pair->a(), 1.0);
  EXPECT_LT(pair->b(), 1.0);
}

TEST(Gauge, LowerBoundsFromGapAndPsi) {
  for (const auto& [name, g] : generator_battery(7, 8)) {
    const double gap = comb_gap(g).value;
    const int n = g.size();
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
      const auto s = VertexSet::from_mask(n, m);
      if (2 * s.size() > n) continue;
      const double psi = gauge_exact(g, s);
      EXPECT_GE(psi, gap * gap / 8 - 1e-9) << name;
      if (g.lazy()) {
        EXPECT_GE(psi, vertex_profile(g, s).psi_product / 18 - 1e-9) << name;
      }
    }
  }
}
