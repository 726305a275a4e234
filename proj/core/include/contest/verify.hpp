#pragma once

#include <functional>
#include <string>

#include <nlohmann/json.hpp>

#include "contest/equilibrium.hpp"
#include "contest/measures.hpp"

namespace contest {

struct Violation {
  std::string condition;  ///< empty when nothing failed
  double x = 0.0;
  double magnitude = 0.0;
};

/// Membership of nu in the equilibrium class for mu: equal mass, equal atom at
/// zero, no atoms on (0, inf), equal mean, C_nu >= C_mu, F_nu concave on
/// (0, inf), and F_nu linear wherever C_nu > C_mu.
struct AstarReport {
  bool mass_ok = false;
  bool zero_atom_ok = false;
  bool continuity_ok = false;
  bool mean_ok = false;
  bool call_dominance_ok = false;
  bool concavity_ok = false;
  bool slack_linearity_ok = false;
  Violation worst_violation;

  bool all_ok() const noexcept {
    return mass_ok && zero_atom_ok && continuity_ok && mean_ok && call_dominance_ok && concavity_ok &&
           slack_linearity_ok;
  }
};

/// Concavity and linearity are tested through the deviation of F from the
/// chord of its neighbours on the union grid of both measures; slack intervals
/// are maximal runs of grid points where C_nu - C_mu > tol.
AstarReport check_astar(const AnalyticMeasure& nu, const AnalyticMeasure& mu, double tol = kExactTolerance);
AstarReport check_astar(const EquilibriumLaw& nu, const AnalyticMeasure& mu, double tol = kExactTolerance);

/// Multipliers proving optimality of nu* against every weakly admissible law.
/// eta_star is the curvature-drop measure of F_{nu*}: mass r_i - r_{i+1} at
/// y_i and r_T at y_T.
struct LagrangianCertificate {
  double lambda_star = 0.0;
  double gamma_star = 1.0;
  double zeta_star = 0.0;
  FiniteAtomicMeasure eta_star;
  double theta = 0.0;

  double gamma_gap_sup = 0.0;   ///< sup |Gamma - F_{nu*}| on the check grid
  double moment_gap = 0.0;      ///< |int z eta* - (1 - F_{nu*}(0))|
  double slackness_gap = 0.0;   ///< max |P_{nu*} - P_mu| over supp eta*
};

inline constexpr double kMomentTolerance = 1e-10;
inline constexpr int kCertificateGrid = 1024;

/// Throws ScalingError unless mu has mass 1, DomainError for theta outside
/// [0, 1) and CertificateViolation when an identity fails at `tol` (the
/// moment identity uses kMomentTolerance).
LagrangianCertificate certificate(const EquilibriumLaw& nu, const AnalyticMeasure& mu, double theta,
                                  double tol = kExactTolerance);

/// lambda* mean(mu) + gamma* - int P_mu d eta* - zeta* F_mu(0).
double certificate_value(const LagrangianCertificate& cert, const AnalyticMeasure& mu);

/// Value of the symmetric equilibrium for a law of mass `mass` with atom `f0`
/// at zero: (mass^2 - f0^2) / 2 + theta f0^2.
double equilibrium_value(double f0, double theta, double mass = 1.0);

/// Expected payoff of a player with target law pi against rho:
///   int F_rho(x-) pi(dx) + theta sum_x pi({x}) rho({x}).
/// Atoms are matched by exact location. The continuous part is integrated
/// piecewise between the merged breakpoints with a fixed Gauss-Kronrod rule,
/// which is exact for the polynomial pieces used here.
double payoff(const AnalyticMeasure& pi, const AnalyticMeasure& rho, double theta);

/// int_{(a,b)} F_rho(x) pi(dx) for a < b, excluding atoms of pi at a and b.
double integrate_cdf(const AnalyticMeasure& pi, const AnalyticMeasure& rho, double a, double b);

/// A profitable deviation together with the gain the construction predicts.
struct Deviation {
  AnalyticMeasure sigma;
  double predicted_gain = 0.0;  ///< exact V(sigma, nu) - V(nu, nu) from the construction
  double lower_bound = 0.0;     ///< closed-form lower bound on the gain
};

/// Moves mass of nu to the right when mean(nu) < mean(mu). Both the generic
/// branch (interval [gamma, beta] collapsed to its endpoints) and the
/// degenerate branch (P_nu(alpha) = alpha - mean(nu)) are handled.
Deviation deviation_mean_deficit(const AnalyticMeasure& nu, const AnalyticMeasure& mu, double theta);

/// Splits an atom p at z > 0 into q at z - eps1 and p - q at z + eps2.
Deviation deviation_split_atom(const AnalyticMeasure& nu, double z, double eps1, double eps2, double theta);

/// Shrinks the atom at zero when F_nu(0) > F_mu(0): a fraction phi of
/// nu|[0, eps) with nu((0, eps)) = q moves to its barycentre.
Deviation deviation_zero_atom(const AnalyticMeasure& nu, const AnalyticMeasure& mu, double q, double phi,
                              double theta);

/// Replaces pi on (a, b] by atoms at a and b when F_pi lies below its chord.
Deviation deviation_flatten(const AnalyticMeasure& pi, double a, double b, double theta);

/// Collapses nu on (w, z + eps) to a point mass at z, where the density of nu
/// drops at z while C_nu(z) > C_mu(z).
Deviation deviation_point_mass(const AnalyticMeasure& nu, const AnalyticMeasure& mu, double z, double theta);

struct BestResponse {
  double value = 0.0;
  double equilibrium_value = 0.0;  ///< payoff(nu, nu, theta)
  FiniteAtomicMeasure argmax;
  std::vector<double> grid;
};

/// Maximises int F_nu(x-) pi(dx) + theta sum pi({x}) nu({x}) over atomic pi on
/// a uniform grid of `grid_size` points on [0, X] subject to mass(pi) =
/// mass(mu) and P_pi >= P_mu at every grid point.
BestResponse best_response_search(const AnalyticMeasure& nu, const AnalyticMeasure& mu, double theta,
                                  int grid_size);

/// True iff int H d pi <= (1 / 2y) int_0^{2y} H(v) dv + tol, y the mean of pi.
/// pi must have mass 1 and a convex CDF: the points (0, 0) and
/// (xi_j, F(xi_j)) have non-decreasing chord slopes.
bool check_uniform_bound(const FiniteAtomicMeasure& pi, const std::function<double(double)>& h,
                         double tol = kExactTolerance);

nlohmann::json to_json(const AstarReport& report);
nlohmann::json to_json(const LagrangianCertificate& cert);

}  // namespace contest
