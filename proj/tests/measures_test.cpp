#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "contest/errors.hpp"
#include "contest/measures.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace contest;
using fixtures::atoms;

TEST(Measures, PutOfTwoAtomsAtOne) {
  EXPECT_NEAR(atoms({0.25, 1.75}, {0.5, 0.5}).put(1.0), 0.375, 1e-15);
}

TEST(Measures, PutAtZeroVanishes) {
  EXPECT_EQ(atoms({0.0, 1.0}, {0.3, 0.7}).put(0.0), 0.0);
  EXPECT_EQ(AnalyticMeasure::beta23().put(0.0), 0.0);
  EXPECT_EQ(AnalyticMeasure::uniform(0.0, 2.0).put(0.0), 0.0);
}

TEST(Measures, Beta23ClosedForms) {
  const auto b = AnalyticMeasure::beta23();
  EXPECT_NEAR(b.put(1.0), 0.6, 1e-14);
  EXPECT_NEAR(b.call(0.0), 0.4, 1e-14);
  EXPECT_NEAR(b.cdf(1.0 / 3.0), 11.0 / 27.0, 1e-15);
  EXPECT_NEAR(b.mean(), 0.4, 1e-15);
  for (double x = 0.0; x <= 1.2; x += 0.01) {
    EXPECT_NEAR(b.cdf(x), oracle::beta23_cdf(x), 1e-14) << x;
    EXPECT_NEAR(b.call(x), oracle::beta23_call(x), 1e-13) << x;
  }
}

TEST(Measures, CallExamples) {
  EXPECT_NEAR(atoms({1.0}, {1.0}).call(1.0), 0.0, 1e-15);
  EXPECT_NEAR(fixtures::two_atom(0.75).call(1.0), 0.375, 1e-15);
}

TEST(Measures, CdfIsRightContinuousAndZeroBelowOrigin) {
  const auto m = atoms({0.25, 1.75}, {0.5, 0.5});
  EXPECT_EQ(m.cdf(0.25), 0.5);
  EXPECT_EQ(m.cdf_left(0.25), 0.0);
  EXPECT_EQ(m.cdf(-1.0), 0.0);
  EXPECT_EQ(AnalyticMeasure::beta23().cdf(-1.0), 0.0);
}

TEST(Measures, NegativeStrikeIsDomainError) {
  EXPECT_THROW((void)atoms({1.0}, {1.0}).put(-0.1), DomainError);
  EXPECT_THROW((void)AnalyticMeasure::beta23().call(-1.0), DomainError);
}

TEST(Measures, InvalidAtomicInputRejected) {
  EXPECT_THROW(atoms({1.0, 0.5}, {0.5, 0.5}), PreconditionError);
  EXPECT_THROW(atoms({-1.0}, {1.0}), PreconditionError);
  EXPECT_THROW(atoms({1.0}, {0.0}), PreconditionError);
}

TEST(Measures, FromAtomsMergesDuplicates) {
  auto m = FiniteAtomicMeasure::from_atoms({{1.0, 0.25}, {0.5, 0.5}, {1.0, 0.25}});
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.weights()[1], 0.5);
  EXPECT_NEAR(m.mean(), 0.75, 1e-15);
}

TEST(Measures, PutCallParityAndConvexity) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const auto a = oracle::random_atomic(rng, 1 + rep % 7, 3.0, rep % 3 == 0);
    const auto m = fixtures::to_measure(a);
    for (double x = 0.0; x < 4.0; x += 0.0625) {
      EXPECT_NEAR(m.put(x), oracle::put(a, x), 1e-13);
      EXPECT_NEAR(m.call(x) - m.put(x), m.mean() - x * m.mass(), 1e-13);
    }
  }
}

TEST(Measures, PiecewisePutMatchesIntegratedCdf) {
  PiecewiseLaw law(atoms({0.0, 0.8}, {0.2, 0.1}), {0.0, 0.5, 1.5}, {0.6, 0.2});
  EXPECT_NEAR(law.mass(), 0.2 + 0.1 + 0.3 + 0.2, 1e-15);
  for (double x = 0.0; x < 2.0; x += 0.03) {
    const double ref = oracle::put_from_cdf([&](double y) { return law.cdf(y); }, x, {0.5, 0.8, 1.5});
    EXPECT_NEAR(law.put(x), ref, 1e-11) << x;
  }
}

TEST(Measures, QuantileInvertsCdf) {
  PiecewiseLaw law(atoms({0.0, 0.8}, {0.2, 0.1}), {0.0, 0.5, 1.5}, {0.6, 0.2});
  for (double u = 0.0; u <= law.mass(); u += 0.01) {
    const double q = law.quantile(u);
    EXPECT_GE(law.cdf(q), u - 1e-12);
    EXPECT_LE(law.cdf_left(q), u + 1e-12);
  }
  EXPECT_EQ(law.quantile(0.6), 0.8);  // inside the atom: bit-exact location
}

TEST(Measures, Beta23QuantileByBisection) {
  const auto b = AnalyticMeasure::beta23();
  for (double u = 0.05; u < 1.0; u += 0.05) {
    EXPECT_NEAR(oracle::beta23_cdf(b.quantile(u)), u, 1e-12);
  }
}

TEST(Measures, MixtureAndReplaceSegment) {
  const auto mix = AnalyticMeasure::mixture(
      {{0.5, AnalyticMeasure::uniform(0.0, 1.0)}, {0.5, AnalyticMeasure::uniform(0.0, 3.0)}});
  EXPECT_NEAR(mix.mass(), 1.0, 1e-15);
  EXPECT_NEAR(mix.mean(), 1.0, 1e-15);
  EXPECT_NEAR(mix.cdf(1.0), 0.5 + 0.5 / 3.0, 1e-15);

  // Collapsing U[0,2] on [0.5, 1.5] to its barycentre keeps mass and mean.
  const auto r = AnalyticMeasure::replace_segment(AnalyticMeasure::uniform(0.0, 2.0), 0.5, 1.5, 0.0, {{1.0, 0.5}});
  EXPECT_NEAR(r.mass(), 1.0, 1e-15);
  EXPECT_NEAR(r.mean(), 1.0, 1e-14);
  EXPECT_NEAR(r.cdf(1.0) - r.cdf_left(1.0), 0.5, 1e-15);
  EXPECT_NEAR(r.put(2.0), 1.0, 1e-14);
}
