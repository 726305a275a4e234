#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "contest/measures.hpp"
#include "contest/order.hpp"
#include "contest/spec.hpp"

namespace contest {

/// Point on the graph of P_chi from which the next quadratic piece starts.
struct QuadraticAnchor {
  double y = 0.0;
  double value = 0.0;  ///< P_chi(y)
  double slope = 0.0;  ///< P_chi'(y)
};

struct QuadraticStep {
  double curvature = 0.0;        ///< minimal r keeping the quadratic above P_chi
  double contact = 0.0;          ///< last contact point with P_chi, > anchor.y
  std::size_t binding_line = 0;  ///< lines are indexed by the number of atoms they include
  bool terminal = false;         ///< binding line carries the full mass
};

/// One step of the smooth-pasting construction. P_chi is the upper envelope
/// of the lines L_j(y) = A_j y - B_j with A_j, B_j the mass and first moment
/// of the first j atoms. The quadratic
///   Q(y) = value + slope (y - y0) + r (y - y0)^2 / 2
/// stays above L_j on [y0, inf) iff r >= (A_j - slope)^2 / (2 gap_j) where
/// gap_j = value - L_j(y0) > 0. The step returns the largest such bound and
/// the tangency point with the binding line; ties go to the farthest contact.
QuadraticStep next_quadratic(const FiniteAtomicMeasure& chi, const QuadraticAnchor& anchor);

/// C^1 function built from quadratic pieces: Q(0) = 0, Q'(0) = initial_slope,
/// Q'' = curvatures[i] on (knots[i], knots[i+1]), and linear with slope
/// terminal_slope beyond the last knot.
class PiecewisePut {
 public:
  PiecewisePut(std::vector<double> knots, std::vector<double> curvatures, double initial_slope,
               double terminal_slope, double terminal_intercept);

  std::span<const double> knots() const noexcept { return knots_; }
  std::span<const double> curvatures() const noexcept { return curvatures_; }
  double initial_slope() const noexcept { return initial_slope_; }
  double terminal_slope() const noexcept { return terminal_slope_; }
  double terminal_intercept() const noexcept { return terminal_intercept_; }

  double operator()(double y) const;
  double derivative(double y) const;

 private:
  std::vector<double> knots_;
  std::vector<double> curvatures_;
  double initial_slope_;
  double terminal_slope_;
  double terminal_intercept_;
  std::vector<double> value_at_;
  std::vector<double> slope_at_;
};

/// Atom at zero plus a non-increasing piecewise-constant density on
/// (0, knots.back()]. densities[i] applies on (knots[i], knots[i+1]).
class EquilibriumLaw {
 public:
  EquilibriumLaw(double atom_at_zero, std::vector<double> knots, std::vector<double> densities);

  double atom_at_zero() const noexcept { return atom_at_zero_; }
  std::span<const double> density_knots() const noexcept { return knots_; }
  std::span<const double> density_values() const noexcept { return densities_; }
  double mass() const { return measure_.mass(); }
  double mean() const { return measure_.mean(); }
  double support_max() const noexcept { return knots_.back(); }

  const AnalyticMeasure& measure() const noexcept { return measure_; }
  const PiecewiseLaw& law() const noexcept { return *measure_.as_piecewise(); }

 private:
  double atom_at_zero_;
  std::vector<double> knots_;
  std::vector<double> densities_;
  AnalyticMeasure measure_;
};

struct AtomicSolution {
  PiecewisePut put;
  EquilibriumLaw law;
  /// binding_lines[k] = number of atoms of chi embedded in [0, knots[k+1]].
  std::vector<std::size_t> binding_lines;
};

/// Exact equilibrium for a finitely atomic initial law. Duplicate locations
/// must already be merged (FiniteAtomicMeasure guarantees this).
AtomicSolution solve_atomic(const FiniteAtomicMeasure& chi);

enum class BinningScheme {
  dyadic,   ///< n equal-probability bins
  shifted,  ///< n+1 bins whose boundaries sit halfway between the dyadic ones
};

/// Conditional-mean discretization: the mass above the zero atom is cut into
/// probability bins and each bin is replaced by its conditional mean. The
/// zero atom is kept verbatim, so mass, mean and F(0) are preserved and the
/// result is below mu in convex order.
FiniteAtomicMeasure discretize(const AnalyticMeasure& mu, std::size_t n,
                               BinningScheme scheme = BinningScheme::dyadic);

struct ConvergenceLevel {
  int level = 0;
  std::size_t n_atoms = 0;
  double sup_distance = 0.0;           ///< NaN on the first level
  double admissibility_deficit = 0.0;  ///< sup (P_mu - P_nu)_+ on the union grid
};

struct ConvergenceReport {
  std::vector<ConvergenceLevel> levels;
  bool converged = false;
  int final_level = 0;
  std::vector<std::string> warnings;
};

struct GeneralSolution {
  EquilibriumLaw law;
  PiecewisePut put;
  ConvergenceReport report;
  FiniteAtomicMeasure discretized;  ///< the atomic law solved at the final level
};

/// Solves discretize(mu, 2^k) for k = 1, 2, ... until successive put
/// functions differ by less than `tol` in sup norm on the union grid and the
/// current iterate's put is within `tol` of dominating P_mu. Hitting
/// `max_level` returns the last iterate with converged = false.
GeneralSolution solve_general(const AnalyticMeasure& mu, double tol = kDiscretizationTolerance,
                              int max_level = 14, BinningScheme scheme = BinningScheme::dyadic);
GeneralSolution solve_general(const MeasureSpec& mu, double tol = kDiscretizationTolerance, int max_level = 14);

nlohmann::json to_json(const EquilibriumLaw& law);
EquilibriumLaw law_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ConvergenceReport& report);

}  // namespace contest
