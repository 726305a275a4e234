#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "contest/equilibrium.hpp"
#include "contest/errors.hpp"
#include "contest/simulate.hpp"
#include "contest/verify.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace contest;
using fixtures::atoms;

TEST(SplitMix, ReferenceSequence) {
  // First outputs for state 1234567 from the published reference generator.
  SplitMix64 g(1234567);
  EXPECT_EQ(g.next(), 6457827717110365317ULL);
  EXPECT_EQ(g.next(), 3203168211198807973ULL);
  EXPECT_EQ(g.next(), 9817491932198370423ULL);
}

TEST(Sample, PointMassIsExact) {
  auto rng = SplitMix64::stream(1, 0);
  const PiecewiseLaw one(atoms({1.0}, {1.0}));
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(sample(one, rng), 1.0);
}

TEST(Sample, UniformMean) {
  auto rng = SplitMix64::stream(2, 0);
  const auto u = PiecewiseLaw::uniform(0.0, 2.0);
  double s = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) s += sample(u, rng);
  EXPECT_NEAR(s / n, 1.0, 3.0 * (1.0 / std::sqrt(3.0)) / 1000.0);
}

TEST(Sample, EquilibriumZeroAtom) {
  const auto law = solve_atomic(atoms({0.0, 1.0}, {0.5, 0.5})).law.law();
  auto rng = SplitMix64::stream(3, 0);
  const int n = 200000;
  int zeros = 0;
  for (int i = 0; i < n; ++i) zeros += sample(law, rng) == 0.0;
  EXPECT_NEAR(static_cast<double>(zeros) / n, 0.5, 3.0 * 0.5 / std::sqrt(n));
}

TEST(Simulate, SpecExamples) {
  const auto u = solve_atomic(atoms({1.0}, {1.0})).law.law();
  EXPECT_NEAR(simulate(u, u, 0.0, 1000000, 5).estimate, 0.5, 0.002);

  const auto z = solve_atomic(atoms({0.0, 1.0}, {0.5, 0.5})).law.law();
  EXPECT_NEAR(simulate(z, z, 0.5, 1000000, 6).estimate, 0.5, 0.002);

  const auto r = simulate(PiecewiseLaw(atoms({2.0}, {1.0})), PiecewiseLaw(atoms({1.0}, {1.0})), 0.0, 100, 7);
  EXPECT_EQ(r.estimate, 1.0);
  EXPECT_EQ(r.wins, 100u);
}

TEST(Simulate, CountsAndEstimateConsistent) {
  const auto a = PiecewiseLaw(atoms({0.0, 1.0}, {0.5, 0.5}));
  const auto r = simulate(a, a, 0.3, 300001, 9);
  EXPECT_EQ(r.wins + r.ties + r.losses, r.n_trials);
  EXPECT_DOUBLE_EQ(r.estimate, (r.wins + 0.3 * r.ties) / static_cast<double>(r.n_trials));
  EXPECT_EQ(r.algorithm, "splitmix64");
}

TEST(Simulate, BitExactAcrossThreadCounts) {
  const auto law = solve_atomic(fixtures::two_atom(0.75)).law.law();
  const auto u = PiecewiseLaw::uniform(0.0, 2.0);
  const auto a = simulate(law, u, 0.2, 500000, 42, 1);
  for (unsigned t : {2u, 3u, 8u}) {
    const auto b = simulate(law, u, 0.2, 500000, 42, t);
    EXPECT_EQ(a.wins, b.wins);
    EXPECT_EQ(a.ties, b.ties);
    EXPECT_EQ(a.estimate, b.estimate);
    EXPECT_EQ(a.std_error, b.std_error);
  }
  EXPECT_NE(simulate(law, u, 0.2, 500000, 43, 1).wins, a.wins);
}

TEST(Simulate, AntiSymmetry) {
  const auto a = PiecewiseLaw(atoms({0.5, 1.0}, {0.5, 0.5}));
  const auto b = PiecewiseLaw(atoms({1.0, 2.0}, {0.5, 0.5}));
  const auto ab = simulate(a, b, 0.0, 200000, 1);
  const auto ba = simulate(b, a, 0.0, 200000, 1);
  // V(a, b) + V(b, a) = 1 - P(tie) at theta = 0; the laws tie only at 1.
  EXPECT_NEAR(ab.estimate + ba.estimate, 0.75, 4.0 * (ab.std_error + ba.std_error));
  EXPECT_NEAR(payoff(a, b, 0.0) + payoff(b, a, 0.0), 0.75, 1e-15);
}

TEST(Simulate, RegressionAgainstExactPayoff) {
  std::mt19937_64 rng(77);
  for (int rep = 0; rep < 20; ++rep) {
    const auto mu = fixtures::to_measure(oracle::random_atomic(rng, 1 + rep % 5, 2.0, rep % 2 == 0));
    const auto nu = fixtures::to_measure(oracle::random_atomic(rng, 1 + rep % 3, 2.0, rep % 3 == 0));
    const auto star = solve_atomic(mu).law;
    const double theta = 0.25 * (rep % 4);
    const AnalyticMeasure pi = rep % 2 ? AnalyticMeasure(star.law()) : AnalyticMeasure(nu);
    const AnalyticMeasure rho = star.measure();
    const auto r = simulate(pi, rho, theta, 200000, static_cast<std::uint64_t>(rep));
    EXPECT_NEAR(r.estimate, payoff(pi, rho, theta), 4.0 * r.std_error + 1e-12) << rep;
  }
}

TEST(Simulate, Errors) {
  const auto u = PiecewiseLaw::uniform(0.0, 2.0);
  EXPECT_THROW(simulate(u, u, 1.0, 10, 0), DomainError);
  EXPECT_THROW(simulate(u, u, 0.0, 0, 0), DomainError);
  EXPECT_THROW(simulate(AnalyticMeasure::beta23(), AnalyticMeasure(u), 0.0, 10, 0), UnsupportedMeasure);
}
