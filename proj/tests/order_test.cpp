#include <gtest/gtest.h>

#include <random>

#include "contest/equilibrium.hpp"
#include "contest/order.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace contest;
using fixtures::atoms;

TEST(Order, MeanPreservingSpread) {
  const AnalyticMeasure one = atoms({1.0}, {1.0});
  const AnalyticMeasure spread = atoms({0.0, 2.0}, {0.5, 0.5});
  EXPECT_TRUE(convex_order_leq(one, spread));
  EXPECT_FALSE(convex_order_leq(spread, one));
}

TEST(Order, DyadicDiscretizationsOfBeta23AreIncreasing) {
  const auto b = AnalyticMeasure::beta23();
  for (std::size_t n = 1; n <= 256; n *= 2) {
    EXPECT_TRUE(convex_order_leq(discretize(b, n), discretize(b, 2 * n))) << n;
    EXPECT_TRUE(convex_order_leq(discretize(b, n), b)) << n;
  }
}

TEST(Order, Admissibility) {
  const auto u = AnalyticMeasure::uniform(0.0, 2.0);
  const AnalyticMeasure one = atoms({1.0}, {1.0});
  EXPECT_TRUE(weakly_admissible(u, one));
  EXPECT_TRUE(strongly_admissible(u, one));

  // P_{delta_0.5} >= P_{delta_1} everywhere but the means differ.
  const AnalyticMeasure half = atoms({0.5}, {1.0});
  for (double x : {0.25, 0.5, 0.75, 1.0, 2.0}) EXPECT_GE(half.put(x), one.put(x));
  EXPECT_TRUE(weakly_admissible(half, one));
  EXPECT_FALSE(strongly_admissible(half, one));
  EXPECT_FALSE(weakly_admissible(one, half));
}

TEST(Order, BreveExamples) {
  const auto u = breve(atoms({1.0}, {1.0}));
  EXPECT_NEAR(put_distance(u, AnalyticMeasure::uniform(0.0, 2.0)), 0.0, 1e-15);
  EXPECT_NEAR(breve_put(atoms({1.0}, {1.0}), 1.0), 0.25, 1e-15);

  const auto z = breve(atoms({0.0}, {1.0}));
  EXPECT_EQ(z.atom_at_zero(), 1.0);
  EXPECT_EQ(z.mean(), 0.0);

  const auto p = breve(atoms({1.5}, {0.4}));
  EXPECT_NEAR(put_distance(p, AnalyticMeasure::uniform(0.0, 3.0, 0.4)), 0.0, 1e-15);
}

TEST(Order, BrevePutMatchesIntegralFormula) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 30; ++rep) {
    const auto a = oracle::random_atomic(rng, 1 + rep % 5, 2.0, rep % 4 == 0);
    const auto m = fixtures::to_measure(a);
    const auto law = breve(m);
    for (double x : {0.1, 0.5, 1.0, 1.7, 3.0, 5.0}) {
      EXPECT_NEAR(breve_put(m, x), oracle::breve_put_integral(a, x), 1e-10);
      EXPECT_NEAR(law.put(x), breve_put(m, x), 1e-13);
    }
  }
}

TEST(Order, BreveIsAboveMeasure) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 30; ++rep) {
    const auto m = fixtures::to_measure(oracle::random_atomic(rng, 1 + rep % 6, 2.0, rep % 2 == 0));
    EXPECT_TRUE(convex_order_leq(m, breve(m)));
  }
}

TEST(Order, EvaluationGridContainsBreakpoints) {
  const auto g = evaluation_grid({atoms({0.25, 1.75}, {0.5, 0.5})});
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
  EXPECT_NE(std::find(g.begin(), g.end(), 0.25), g.end());
  EXPECT_NE(std::find(g.begin(), g.end(), 1.75), g.end());
  EXPECT_GE(g.back(), 17.5);
}
