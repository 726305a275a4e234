#include "contest/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "contest/errors.hpp"

namespace contest {
namespace {

struct Step {
  double curvature;
  double contact;
  std::size_t line;
};

// Scans the lines j > a from an anchor lying `residual` above L_a whose slope
// is A_a - slope_deficit. Gaps are accumulated incrementally so that they
// stay accurate when the anchor sits close to a kink of P_chi.
Step step_from(const FiniteAtomicMeasure& chi, std::size_t a, double y, double residual,
               double slope_deficit) {
  const auto loc = chi.locations();
  const auto w = chi.weights();
  const std::size_t n = chi.size();
  if (a >= n) throw InvariantViolation("next_quadratic: no line steeper than the anchor slope");

  double best_r = -1.0;
  double best_da = 0.0;
  std::size_t best_j = a;
  double da = slope_deficit;
  double gap = residual;
  for (std::size_t j = a + 1; j <= n; ++j) {
    da += w[j - 1];
    gap += w[j - 1] * (loc[j - 1] - y);
    if (!(gap > 0.0)) {
      std::ostringstream os;
      os << "next_quadratic: non-positive gap " << gap << " to line " << j << " at y = " << y;
      throw InvariantViolation(os.str());
    }
    const double r = da * da / (2.0 * gap);
    if (r >= best_r) {
      best_r = r;
      best_da = da;
      best_j = j;
    }
  }
  return {best_r, y + best_da / best_r, best_j};
}

}  // namespace

QuadraticStep next_quadratic(const FiniteAtomicMeasure& chi, const QuadraticAnchor& anchor) {
  if (chi.empty()) throw DomainError("next_quadratic: empty measure");
  if (!(anchor.y >= 0.0)) throw DomainError("next_quadratic: anchor must be at y >= 0");
  // Active line at the anchor: all atoms at or below y.
  const auto loc = chi.locations();
  const auto a = static_cast<std::size_t>(std::upper_bound(loc.begin(), loc.end(), anchor.y) - loc.begin());
  const double line = chi.cumulative_mass(a) * anchor.y - chi.cumulative_moment(a);
  // Anchors computed by callers may sit a few ulps below P_chi.
  const double noise = 16.0 * std::numeric_limits<double>::epsilon() * (std::abs(line) + chi.mean());
  if (anchor.value - line < -noise) throw PreconditionError("next_quadratic: anchor lies below P_chi");
  const double residual = std::max(0.0, anchor.value - line);
  if (anchor.slope > chi.cumulative_mass(a) + 1e-12 * std::max(1.0, chi.mass())) {
    throw PreconditionError("next_quadratic: anchor slope exceeds the slope of P_chi");
  }
  const Step s = step_from(chi, a, anchor.y, residual, chi.cumulative_mass(a) - anchor.slope);
  return {s.curvature, s.contact, s.line, s.line == chi.size()};
}

PiecewisePut::PiecewisePut(std::vector<double> knots, std::vector<double> curvatures, double initial_slope,
                           double terminal_slope, double terminal_intercept)
    : knots_(std::move(knots)),
      curvatures_(std::move(curvatures)),
      initial_slope_(initial_slope),
      terminal_slope_(terminal_slope),
      terminal_intercept_(terminal_intercept) {
  if (knots_.empty() || knots_.front() != 0.0) throw PreconditionError("PiecewisePut: knots must start at 0");
  if (curvatures_.size() + 1 != knots_.size()) throw PreconditionError("PiecewisePut: one curvature per interval");
  value_at_.assign(knots_.size(), 0.0);
  slope_at_.assign(knots_.size(), initial_slope_);
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    const double h = knots_[i] - knots_[i - 1];
    if (!(h > 0.0)) throw PreconditionError("PiecewisePut: knots must be strictly increasing");
    value_at_[i] = value_at_[i - 1] + slope_at_[i - 1] * h + 0.5 * curvatures_[i - 1] * h * h;
    slope_at_[i] = slope_at_[i - 1] + curvatures_[i - 1] * h;
  }
}

double PiecewisePut::operator()(double y) const {
  if (!(y >= 0.0)) throw DomainError("PiecewisePut: negative argument");
  if (y >= knots_.back()) return terminal_slope_ * y + terminal_intercept_;
  const auto i = static_cast<std::size_t>(std::upper_bound(knots_.begin(), knots_.end(), y) - knots_.begin()) - 1;
  const double h = y - knots_[i];
  return value_at_[i] + slope_at_[i] * h + 0.5 * curvatures_[i] * h * h;
}

double PiecewisePut::derivative(double y) const {
  if (!(y >= 0.0)) throw DomainError("PiecewisePut: negative argument");
  if (y >= knots_.back()) return terminal_slope_;
  const auto i = static_cast<std::size_t>(std::upper_bound(knots_.begin(), knots_.end(), y) - knots_.begin()) - 1;
  return slope_at_[i] + curvatures_[i] * (y - knots_[i]);
}

namespace {

AnalyticMeasure make_law(double atom, const std::vector<double>& knots, const std::vector<double>& dens) {
  FiniteAtomicMeasure zero;
  if (atom > 0.0) zero = FiniteAtomicMeasure({0.0}, {atom});
  if (dens.empty()) return AnalyticMeasure(PiecewiseLaw(std::move(zero)));
  return AnalyticMeasure(PiecewiseLaw(std::move(zero), knots, dens));
}

}  // namespace

EquilibriumLaw::EquilibriumLaw(double atom_at_zero, std::vector<double> knots, std::vector<double> densities)
    : atom_at_zero_(atom_at_zero),
      knots_((knots.empty() ? std::vector<double>{0.0} : std::move(knots))),
      densities_(std::move(densities)),
      measure_(make_law(atom_at_zero_, knots_, densities_)) {
  if (!(atom_at_zero_ >= 0.0)) throw PreconditionError("EquilibriumLaw: negative atom at zero");
  if (knots_.front() != 0.0) throw PreconditionError("EquilibriumLaw: knots must start at 0");
  if (densities_.size() + 1 != knots_.size()) throw PreconditionError("EquilibriumLaw: one density per interval");
  for (std::size_t i = 0; i < densities_.size(); ++i) {
    if (!(knots_[i + 1] > knots_[i])) throw PreconditionError("EquilibriumLaw: knots must be strictly increasing");
    if (!(densities_[i] > 0.0)) throw PreconditionError("EquilibriumLaw: densities must be positive");
    if (i > 0 && densities_[i] > densities_[i - 1]) {
      throw PreconditionError("EquilibriumLaw: densities must be non-increasing");
    }
  }
}

AtomicSolution solve_atomic(const FiniteAtomicMeasure& chi) {
  if (chi.empty()) throw DomainError("solve_atomic: empty measure");
  const std::size_t n = chi.size();
  const auto loc = chi.locations();
  const double f0 = chi.atom_at_zero();

  std::size_t a = loc.front() == 0.0 ? 1 : 0;
  std::vector<double> knots{0.0};
  std::vector<double> curv;
  std::vector<std::size_t> lines;
  double y = 0.0;
  while (a < n) {
    const Step s = step_from(chi, a, y, 0.0, 0.0);
    if (!(s.contact > y)) throw InvariantViolation("solve_atomic: contact point did not advance");
    if (!curv.empty() && !(s.curvature < curv.back())) {
      std::ostringstream os;
      os << "solve_atomic: curvature did not decrease (" << curv.back() << " -> " << s.curvature << ")";
      throw InvariantViolation(os.str());
    }
    curv.push_back(s.curvature);
    knots.push_back(s.contact);
    lines.push_back(s.line);
    y = s.contact;
    a = s.line;
  }

  PiecewisePut put(knots, curv, f0, chi.mass(), -chi.mean());
  EquilibriumLaw law(f0, std::move(knots), std::move(curv));
  return {std::move(put), std::move(law), std::move(lines)};
}

FiniteAtomicMeasure discretize(const AnalyticMeasure& mu, std::size_t n, BinningScheme scheme) {
  if (n < 1) throw DomainError("discretize: need at least one bin");
  if (!mu.has_quantile()) throw UnsupportedMeasure("discretize: measure has no quantile function");
  const double m = mu.mass();
  const double f0 = mu.atom_at_zero();
  const double mean = mu.mean();

  std::vector<Atom> atoms;
  if (f0 > 0.0) atoms.push_back({0.0, f0});
  const double spread = m - f0;
  if (!(spread > 0.0)) return FiniteAtomicMeasure::from_atoms(std::move(atoms));

  std::vector<double> u;
  if (scheme == BinningScheme::dyadic) {
    for (std::size_t i = 0; i < n; ++i) u.push_back(f0 + spread * static_cast<double>(i) / static_cast<double>(n));
  } else {
    u.push_back(f0);
    for (std::size_t i = 0; i < n; ++i) {
      u.push_back(f0 + spread * static_cast<double>(2 * i + 1) / static_cast<double>(2 * n));
    }
  }
  u.push_back(m);

  // Partial first moment over the lowest u units of mass above zero:
  // M(u) = u G(u) - P(G(u)) with G the quantile function.
  std::vector<double> g(u.size());
  std::vector<double> big_m(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i == 0) {
      g[i] = 0.0;
      big_m[i] = 0.0;
    } else if (i + 1 == u.size()) {
      g[i] = mu.quantile(m);
      big_m[i] = mean;
    } else {
      g[i] = mu.quantile(u[i]);
      big_m[i] = u[i] * g[i] - mu.put(g[i]);
    }
  }
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double w = u[i + 1] - u[i];
    if (!(w > 0.0)) continue;
    double x;
    if (i > 0 && g[i] == g[i + 1]) {
      x = g[i];  // the whole bin sits inside one atom
    } else {
      x = (big_m[i + 1] - big_m[i]) / w;
      x = std::clamp(x, g[i], std::max(g[i], g[i + 1]));
    }
    if (!(x > 0.0)) x = std::numeric_limits<double>::min();
    atoms.push_back({x, w});
  }
  return FiniteAtomicMeasure::from_atoms(std::move(atoms));
}

GeneralSolution solve_general(const AnalyticMeasure& mu, double tol, int max_level, BinningScheme scheme) {
  if (!(tol > 0.0)) throw DomainError("solve_general: tol must be positive");
  if (max_level < 1) throw DomainError("solve_general: max_level must be >= 1");

  ConvergenceReport report;
  std::optional<AtomicSolution> prev;
  std::optional<FiniteAtomicMeasure> prev_chi;
  for (int k = 1; k <= max_level; ++k) {
    const std::size_t n = std::size_t{1} << k;
    FiniteAtomicMeasure chi = discretize(mu, n, scheme);
    AtomicSolution sol = solve_atomic(chi);
    ConvergenceLevel lvl{k, chi.size(), std::numeric_limits<double>::quiet_NaN()};
    if (prev) {
      lvl.sup_distance = put_distance(sol.law.measure(), prev->law.measure());
      if (report.levels.size() >= 2) {
        const double before = report.levels.back().sup_distance;
        if (lvl.sup_distance > before) {
          std::ostringstream os;
          os << "sup distance increased at level " << k << " (" << before << " -> " << lvl.sup_distance << ")";
          report.warnings.push_back(os.str());
        }
      }
    }
    // Coarse levels can repeat the same law (e.g. Beta(2,3) at n = 2, 4, 8),
    // so agreement is only trusted once the iterate also dominates mu.
    for (double x : evaluation_grid({mu, sol.law.measure()})) {
      lvl.admissibility_deficit = std::max(lvl.admissibility_deficit, mu.put(x) - sol.law.measure().put(x));
    }
    report.levels.push_back(lvl);
    report.final_level = k;
    const bool done = prev && lvl.sup_distance < tol && lvl.admissibility_deficit < tol;
    prev = std::move(sol);
    prev_chi = std::move(chi);
    if (done) {
      report.converged = true;
      break;
    }
  }
  return {prev->law, prev->put, std::move(report), std::move(*prev_chi)};
}

GeneralSolution solve_general(const MeasureSpec& mu, double tol, int max_level) {
  return solve_general(resolve(mu), tol, max_level);
}

nlohmann::json to_json(const EquilibriumLaw& law) {
  return {{"knots", std::vector<double>(law.density_knots().begin(), law.density_knots().end())},
          {"curvatures", std::vector<double>(law.density_values().begin(), law.density_values().end())},
          {"atom_at_zero", law.atom_at_zero()},
          {"mass", law.mass()},
          {"mean", law.mean()}};
}

EquilibriumLaw law_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("", "expected an object");
  auto vec = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) throw InputError(std::string("/") + key, "expected an array");
    std::vector<double> out;
    const auto& arr = j.at(key);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_number()) throw InputError(std::string("/") + key + "/" + std::to_string(i), "expected a number");
      out.push_back(arr[i].get<double>());
    }
    return out;
  };
  auto knots = vec("knots");
  auto curv = vec("curvatures");
  if (!j.contains("atom_at_zero") || !j.at("atom_at_zero").is_number()) {
    throw InputError("/atom_at_zero", "expected a number");
  }
  const double f0 = j.at("atom_at_zero").get<double>();
  try {
    return EquilibriumLaw(f0, std::move(knots), std::move(curv));
  } catch (const PreconditionError& e) {
    throw InputError("", e.what());
  }
}

nlohmann::json to_json(const ConvergenceReport& report) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : report.levels) {
    nlohmann::json d = nullptr;
    if (std::isfinite(l.sup_distance)) d = l.sup_distance;
    levels.push_back({{"level", l.level},
                      {"n_atoms", l.n_atoms},
                      {"sup_distance", d},
                      {"admissibility_deficit", l.admissibility_deficit}});
  }
  return {{"levels", levels},
          {"converged", report.converged},
          {"final_level", report.final_level},
          {"warnings", report.warnings}};
}

}  // namespace contest
