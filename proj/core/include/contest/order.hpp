#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "contest/measures.hpp"

namespace contest {

/// Absolute tolerance for pipelines that are exact up to rounding.
inline constexpr double kExactTolerance = 1e-9;
/// Absolute tolerance for pipelines that go through a discretization of mu.
inline constexpr double kDiscretizationTolerance = 1e-6;

struct GridOptions {
  int refinement = 32;  ///< equally spaced interior points per inter-knot interval
};

/// Sorted grid containing 0, every breakpoint of every measure, `refinement`
/// interior points per interval and a far point at 10x the largest support
/// point (or 10x the largest mean when no support point is positive).
std::vector<double> evaluation_grid(std::span<const AnalyticMeasure> measures, GridOptions opts = {});
std::vector<double> evaluation_grid(std::initializer_list<AnalyticMeasure> measures, GridOptions opts = {});

/// Inserts `refinement` equally spaced points into every interval of a sorted
/// point set and returns the sorted union.
std::vector<double> refine_grid(std::span<const double> points, int refinement);

/// a <=_cx b: equal mass, equal mean and P_a <= P_b + tol on the evaluation grid.
bool convex_order_leq(const AnalyticMeasure& a, const AnalyticMeasure& b, double tol = kExactTolerance,
                      GridOptions opts = {});

/// Equal mass and P_nu >= P_mu - tol on the evaluation grid.
bool weakly_admissible(const AnalyticMeasure& nu, const AnalyticMeasure& mu, double tol = kExactTolerance,
                       GridOptions opts = {});
/// Weakly admissible with equal means.
bool strongly_admissible(const AnalyticMeasure& nu, const AnalyticMeasure& mu, double tol = kExactTolerance,
                         GridOptions opts = {});

/// sup over the grid of |P_a - P_b|.
double put_distance(const AnalyticMeasure& a, const AnalyticMeasure& b, GridOptions opts = {});

/// The law of U * 2X with X ~ m and U uniform on [0,1] independent: every atom
/// p at xi > 0 becomes p * U[0, 2 xi], an atom at 0 stays at 0.
PiecewiseLaw breve(const FiniteAtomicMeasure& m);

/// Put function of breve(m) evaluated directly from the mixture,
/// sum_j p_j P_{U[0, 2 xi_j]}(x).
double breve_put(const FiniteAtomicMeasure& m, double x);

}  // namespace contest
