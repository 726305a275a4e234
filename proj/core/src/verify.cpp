#include "contest/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "contest/errors.hpp"
#include "contest/lp.hpp"
#include "contest/order.hpp"

namespace contest {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_theta(double theta) {
  if (!(theta >= 0.0 && theta < 1.0)) throw DomainError("theta must lie in [0, 1)");
}

void require(bool ok, const char* generator, const char* inequality) {
  if (!ok) throw ConstructiveFailure(generator, inequality);
}

// Weight of the atom of m at exactly x (0 when there is none).
double atom_weight(const AnalyticMeasure& m, double x) {
  if (x == 0.0) return m.atom_at_zero();
  for (const auto& a : m.positive_atoms()) {
    if (a.location == x) return a.weight;
  }
  return 0.0;
}

std::vector<double> positive_grid(const AnalyticMeasure& a, const AnalyticMeasure& b) {
  auto g = evaluation_grid({a, b});
  std::erase_if(g, [](double x) { return !(x > 0.0); });
  return g;
}

// F(x_i) minus the chord through its grid neighbours; negative values are
// concavity violations.
double chord_excess(const std::vector<double>& x, const std::vector<double>& f, std::size_t i) {
  const double h0 = x[i] - x[i - 1];
  const double h1 = x[i + 1] - x[i];
  const double chord = (h1 * f[i - 1] + h0 * f[i + 1]) / (h0 + h1);
  return f[i] - chord;
}

struct ConcavityProbe {
  bool ok = true;
  double x = 0.0;
  double magnitude = 0.0;
};

ConcavityProbe probe_concavity(const AnalyticMeasure& m, const std::vector<double>& x, double tol) {
  std::vector<double> f(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) f[i] = m.cdf(x[i]);
  const double slack = tol + 8.0 * kEps * std::max(1.0, m.mass());
  ConcavityProbe p;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    const double d = -chord_excess(x, f, i);
    if (d > p.magnitude) {
      p.magnitude = d;
      p.x = x[i];
    }
  }
  p.ok = p.magnitude <= slack;
  return p;
}

// Gauss-Kronrod with no subdivision: exact for polynomials of degree < 23.
template <class Fn>
double fixed_rule(Fn f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0);
}

std::vector<double> merged_breakpoints(const AnalyticMeasure& pi, const AnalyticMeasure& rho, double lo,
                                       double hi) {
  auto bp = pi.breakpoints();
  auto more = rho.breakpoints();
  bp.insert(bp.end(), more.begin(), more.end());
  bp.push_back(lo);
  bp.push_back(hi);
  std::erase_if(bp, [&](double x) { return !(x >= lo && x <= hi); });
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

// int over (a, b) of F_rho(x) times the density of pi.
double continuous_part(const AnalyticMeasure& pi, const AnalyticMeasure& rho, double a, double b) {
  double s = 0.0;
  const auto bp = merged_breakpoints(pi, rho, a, b);
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double l = bp[i];
    const double r = bp[i + 1];
    if (!(r > l)) continue;
    s += fixed_rule([&](double x) { return pi.density(x) * rho.cdf(x); }, l, r);
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Characterisation

AstarReport check_astar(const AnalyticMeasure& nu, const AnalyticMeasure& mu, double tol) {
  AstarReport r;
  auto note = [&](const char* name, double x, double mag) {
    if (mag > r.worst_violation.magnitude || r.worst_violation.condition.empty()) {
      r.worst_violation = {name, x, mag};
    }
  };

  const double dm = std::abs(nu.mass() - mu.mass());
  r.mass_ok = dm <= tol;
  if (!r.mass_ok) note("mass", 0.0, dm);

  const double dz = std::abs(nu.atom_at_zero() - mu.atom_at_zero());
  r.zero_atom_ok = dz <= tol;
  if (!r.zero_atom_ok) note("zero_atom", 0.0, dz);

  r.continuity_ok = true;
  for (const auto& a : nu.positive_atoms()) {
    if (a.weight > tol) {
      if (r.continuity_ok || a.weight > r.worst_violation.magnitude) note("continuity", a.location, a.weight);
      r.continuity_ok = false;
    }
  }

  const double dmean = std::abs(nu.mean() - mu.mean());
  r.mean_ok = dmean <= tol;
  if (!r.mean_ok) note("mean", 0.0, dmean);

  const auto x = positive_grid(nu, mu);
  std::vector<double> gap(x.size());
  double worst_call = 0.0;
  double worst_call_x = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    gap[i] = nu.call(x[i]) - mu.call(x[i]);
    if (-gap[i] > worst_call) {
      worst_call = -gap[i];
      worst_call_x = x[i];
    }
  }
  r.call_dominance_ok = worst_call <= tol;
  if (!r.call_dominance_ok) note("call_dominance", worst_call_x, worst_call);

  const auto conc = probe_concavity(nu, x, tol);
  r.concavity_ok = conc.ok;
  if (!r.concavity_ok) note("concavity", conc.x, conc.magnitude);

  std::vector<double> f(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) f[i] = nu.cdf(x[i]);
  const double slack = tol + 8.0 * kEps * std::max(1.0, nu.mass());
  double worst_lin = 0.0;
  double worst_lin_x = 0.0;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    if (gap[i - 1] > tol && gap[i] > tol && gap[i + 1] > tol) {
      const double d = std::abs(chord_excess(x, f, i));
      if (d > worst_lin) {
        worst_lin = d;
        worst_lin_x = x[i];
      }
    }
  }
  r.slack_linearity_ok = worst_lin <= slack;
  if (!r.slack_linearity_ok) note("slack_linearity", worst_lin_x, worst_lin);

  if (r.all_ok()) r.worst_violation = {};
  return r;
}

AstarReport check_astar(const EquilibriumLaw& nu, const AnalyticMeasure& mu, double tol) {
  return check_astar(nu.measure(), mu, tol);
}

// ---------------------------------------------------------------------------
// Certificate

LagrangianCertificate certificate(const EquilibriumLaw& nu, const AnalyticMeasure& mu, double theta, double tol) {
  require_theta(theta);
  if (std::abs(mu.mass() - 1.0) > 1e-12) throw ScalingError("certificate: mu must be a probability measure");
  if (std::abs(nu.mass() - 1.0) > 1e-12) throw ScalingError("certificate: nu must be a probability measure");

  const auto y = nu.density_knots();
  const auto rho = nu.density_values();
  std::vector<double> loc;
  std::vector<double> w;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double drop = rho[i] - (i + 1 < rho.size() ? rho[i + 1] : 0.0);
    if (drop > 0.0) {
      loc.push_back(y[i + 1]);
      w.push_back(drop);
    }
  }

  LagrangianCertificate c;
  c.theta = theta;
  const double f0 = nu.atom_at_zero();
  c.zeta_star = (1.0 - theta) * f0;
  c.eta_star = FiniteAtomicMeasure(loc, w);

  c.moment_gap = std::abs(c.eta_star.mean() - (1.0 - f0));

  const double top = 1.1 * std::max(nu.support_max(), 1e-300);
  for (int k = 1; k <= kCertificateGrid; ++k) {
    const double x = top * k / kCertificateGrid;
    double g = c.lambda_star * x + c.gamma_star;
    for (std::size_t i = 0; i < loc.size(); ++i) {
      if (loc[i] > x) g -= w[i] * (loc[i] - x);
    }
    c.gamma_gap_sup = std::max(c.gamma_gap_sup, std::abs(g - nu.measure().cdf(x)));
  }

  for (double z : loc) c.slackness_gap = std::max(c.slackness_gap, std::abs(nu.measure().put(z) - mu.put(z)));

  std::vector<std::string> bad;
  auto fmt = [](const char* what, double v) {
    std::ostringstream os;
    os << what << " = " << v;
    return os.str();
  };
  if (!(c.moment_gap <= kMomentTolerance)) bad.push_back(fmt("|int z eta - (1 - F(0))|", c.moment_gap));
  if (!(c.gamma_gap_sup <= tol)) bad.push_back(fmt("sup |Gamma - F|", c.gamma_gap_sup));
  if (!(c.slackness_gap <= tol)) bad.push_back(fmt("max |P_nu - P_mu| on supp eta", c.slackness_gap));
  if (!bad.empty()) throw CertificateViolation(std::move(bad));
  return c;
}

double certificate_value(const LagrangianCertificate& cert, const AnalyticMeasure& mu) {
  double ip = 0.0;
  const auto loc = cert.eta_star.locations();
  const auto w = cert.eta_star.weights();
  for (std::size_t i = 0; i < loc.size(); ++i) ip += w[i] * mu.put(loc[i]);
  return cert.lambda_star * mu.mean() + cert.gamma_star - ip - cert.zeta_star * mu.atom_at_zero();
}

double equilibrium_value(double f0, double theta, double mass) {
  return 0.5 * (mass * mass - f0 * f0) + theta * f0 * f0;
}

// ---------------------------------------------------------------------------
// Payoffs

double integrate_cdf(const AnalyticMeasure& pi, const AnalyticMeasure& rho, double a, double b) {
  if (!(b > a)) return 0.0;
  double s = 0.0;
  for (const auto& at : pi.positive_atoms()) {
    if (at.location > a && at.location < b) s += at.weight * rho.cdf(at.location);
  }
  const double hi = std::min(b, pi.support_max());
  if (hi > a) s += continuous_part(pi, rho, a, hi);
  return s;
}

double payoff(const AnalyticMeasure& pi, const AnalyticMeasure& rho, double theta) {
  require_theta(theta);
  const double top = pi.support_max();
  if (!std::isfinite(top) || !std::isfinite(rho.support_max())) {
    throw UnsupportedMeasure("payoff: laws must have bounded support");
  }
  double s = 0.0;
  const double z = pi.atom_at_zero();
  if (z > 0.0) s += theta * z * rho.atom_at_zero();
  for (const auto& a : pi.positive_atoms()) {
    s += a.weight * (rho.cdf_left(a.location) + theta * atom_weight(rho, a.location));
  }
  if (top > 0.0) s += continuous_part(pi, rho, 0.0, top);
  return s;
}

// ---------------------------------------------------------------------------
// Deviations

Deviation deviation_mean_deficit(const AnalyticMeasure& nu, const AnalyticMeasure& mu, double theta) {
  constexpr const char* gen = "mean_deficit";
  require_theta(theta);
  const double m = mu.mass();
  require(std::abs(nu.mass() - m) <= 1e-12 * std::max(1.0, m), gen, "mass(nu) = mass(mu)");
  require(weakly_admissible(nu, mu), gen, "P_nu >= P_mu");
  const double nb = nu.mean();
  const double mb = mu.mean();
  require(nb < mb - 1e-12, gen, "mean(nu) < mean(mu)");

  // alpha: smallest root of m x - mean(nu) = P_mu(x); the left side minus
  // P_mu is non-decreasing and positive beyond the support of mu.
  auto h = [&](double x) { return m * x - nb - mu.put(x); };
  double lo = 0.0;
  double hi = std::max(mu.support_max(), nb / m);
  double alpha = 0.0;
  if (h(0.0) < 0.0) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (h(mid) >= 0.0 ? hi : lo) = mid;
    }
    alpha = hi;
  }

  const double scale = std::max(1.0, mb);
  const double excess = nu.put(alpha) - mu.put(alpha);
  if (excess <= 1e-12 * scale) {
    // nu lives on [0, alpha]; keep it below alpha and continue with mu above.
    const double atom = nu.cdf(alpha) - nu.cdf_left(alpha);
    require(atom > 0.0, gen, "nu({alpha}) > 0");
    const double add = std::max(0.0, mu.cdf(alpha) - nu.cdf_left(alpha));
    auto lower = AnalyticMeasure::replace_segment(nu, alpha, alpha, 0.0, {{alpha, add}});
    auto upper = AnalyticMeasure::replace_segment(mu, 0.0, alpha, 0.0, {});
    require(upper.mass() > 0.0, gen, "mu((alpha, inf)) > 0");
    Deviation d{AnalyticMeasure::mixture({{1.0, lower}, {1.0, upper}}), 0.0, 0.0};
    d.predicted_gain = atom * (1.0 - theta) * (m - mu.cdf(alpha));
    d.lower_bound = d.predicted_gain;
    require(weakly_admissible(d.sigma, mu), gen, "sigma weakly admissible");
    return d;
  }

  // Generic case: Q = P_nu - eps stays above P_mu on [alpha, inf).
  double eps = mb - nb;
  for (double x : evaluation_grid({nu, mu})) {
    if (x >= alpha) eps = std::min(eps, nu.put(x) - mu.put(x));
  }
  eps = std::min(eps, excess);
  require(eps > 0.0, gen, "inf_{x >= alpha} (P_nu - P_mu) > 0");
  eps *= 0.5;  // margin for the grid estimate of the infimum

  const double beta = 1.5 * std::max(alpha, nu.support_max());
  const double qb = nu.put(beta) - eps;
  auto slope = [&](double c) { return (qb - nu.put(c)) / (beta - c); };

  // The slope is quasi-concave in c (its superlevel sets are sublevel sets of
  // the convex P_nu plus a line), so a scan followed by golden section finds
  // the tangency point.
  std::vector<double> cand = evaluation_grid({nu, mu});
  for (int k = 0; k <= 2048; ++k) cand.push_back(beta * k / 2049.0);
  std::erase_if(cand, [&](double c) { return !(c >= 0.0 && c < beta); });
  std::sort(cand.begin(), cand.end());
  std::size_t best = 0;
  for (std::size_t i = 1; i < cand.size(); ++i) {
    if (slope(cand[i]) > slope(cand[best])) best = i;
  }
  double a = cand[best == 0 ? 0 : best - 1];
  double b = best + 1 < cand.size() ? cand[best + 1] : cand[best];
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double gamma = cand[best];
  for (int it = 0; it < 200 && b - a > 4.0 * kEps * std::max(1.0, b); ++it) {
    const double c1 = b - invphi * (b - a);
    const double c2 = a + invphi * (b - a);
    if (slope(c1) >= slope(c2)) {
      b = c2;
    } else {
      a = c1;
    }
  }
  for (double c : {a, b, 0.5 * (a + b)}) {
    if (slope(c) > slope(gamma)) gamma = c;
  }
  const double fl = nu.cdf_left(gamma);
  const double fg = nu.cdf(gamma);
  const double big_gamma = std::clamp(slope(gamma), fl, fg);
  const double fb = nu.cdf(beta);
  require(fb > big_gamma, gen, "F_nu(beta-) > Gamma");

  Deviation d{AnalyticMeasure::replace_segment(nu, gamma, beta, 0.0,
                                               {{gamma, big_gamma - fl}, {beta, fb - big_gamma}}),
              0.0, 0.0};
  const double atom_g = fg - fl;
  const double inner_f = integrate_cdf(nu, nu, gamma, beta);
  const double inner_mass = nu.cdf_left(beta) - fg;
  double sq = 0.0;
  for (const auto& at : nu.positive_atoms()) {
    if (at.location > gamma && at.location < beta) sq += at.weight * at.weight;
  }
  d.lower_bound = (1.0 - theta) * (atom_g * (fg - big_gamma) + inner_f - big_gamma * inner_mass);
  d.predicted_gain = (1.0 - theta) * atom_g * (fg - big_gamma) + inner_f - big_gamma * inner_mass - theta * sq;
  require(d.lower_bound > 0.0, gen, "nu([gamma, beta)) > 0");
  require(weakly_admissible(d.sigma, mu), gen, "sigma weakly admissible");
  return d;
}

Deviation deviation_split_atom(const AnalyticMeasure& nu, double z, double eps1, double eps2, double theta) {
  constexpr const char* gen = "split_atom";
  require_theta(theta);
  require(z > 0.0, gen, "z > 0");
  const double p = atom_weight(nu, z);
  require(p > 0.0, gen, "nu({z}) > 0");
  const double hi2 = (1.0 - theta) * z * p / (1.0 + theta * p);
  require(eps2 > 0.0 && eps2 < hi2, gen, "eps2 in (0, (1 - theta) z p / (1 + theta p))");
  const double lo1 = (1.0 + theta * p) * eps2 / ((1.0 - theta) * p);
  require(eps1 > lo1 && eps1 < z, gen, "eps1 in ((1 + theta p) eps2 / ((1 - theta) p), z)");

  const double q = eps2 * p / (eps1 + eps2);
  const double zl = z - eps1;
  const double zr = z + eps2;
  Deviation d{AnalyticMeasure::replace_segment(nu, z, z, 0.0, {{zl, q}, {zr, p - q}}), 0.0, 0.0};
  d.predicted_gain = nu.cdf_left(zl) * q + nu.cdf_left(zr) * (p - q) - nu.cdf_left(z) * p - theta * p * p +
                     theta * atom_weight(nu, zl) * q + theta * atom_weight(nu, zr) * (p - q);
  d.lower_bound = p * (eps1 * (1.0 - theta) * p - (1.0 + theta * p) * eps2) / (eps1 + eps2);
  return d;
}

Deviation deviation_zero_atom(const AnalyticMeasure& nu, const AnalyticMeasure& mu, double q, double phi,
                              double theta) {
  constexpr const char* gen = "zero_atom";
  require_theta(theta);
  const double p = nu.atom_at_zero();
  require(p > mu.atom_at_zero() + 1e-12, gen, "F_nu(0) > F_mu(0)");
  require(nu.positive_atoms().empty(), gen, "F_nu continuous on (0, inf)");
  require(q > 0.0 && q < std::min(p * std::sqrt(1.0 - theta), nu.mass() - p), gen,
          "0 < q < min(p sqrt(1 - theta), 1 - p)");
  require(phi > 0.0 && phi < 1.0, gen, "phi in (0, 1)");

  const double eps = nu.quantile(p + q);
  require(std::abs(nu.cdf(eps) - (p + q)) <= 1e-12, gen, "nu((0, eps)) = q solvable");
  const double delta = (eps * (p + q) - nu.put(eps)) / (p + q);
  Deviation d{AnalyticMeasure::replace_segment(nu, 0.0, eps, 1.0 - phi, {{delta, phi * (p + q)}}), 0.0, 0.0};
  d.predicted_gain = phi * ((p + q) * nu.cdf(delta) - theta * p * p - integrate_cdf(nu, nu, 0.0, eps));
  d.lower_bound = phi * ((1.0 - theta) * p * p - q * q);
  require(strongly_admissible(d.sigma, mu), gen, "sigma_phi strongly admissible (shrink q or phi)");
  return d;
}

Deviation deviation_flatten(const AnalyticMeasure& pi, double a, double b, double theta) {
  constexpr const char* gen = "flatten";
  require_theta(theta);
  require(a > 0.0 && b > a, gen, "0 < a < b");
  for (const auto& at : pi.positive_atoms()) {
    require(!(at.location >= a && at.location <= b), gen, "F_pi continuous on [a, b]");
  }
  const double fa = pi.cdf(a);
  const double delta = pi.cdf(b) - fa;
  require(delta > 0.0, gen, "F_pi(b) > F_pi(a)");
  const double phi = (pi.put(b) - pi.put(a) - fa * (b - a)) / (delta * (b - a));
  require(phi < 0.5 - 1e-12, gen, "F_pi below its chord on (a, b)");
  Deviation d{AnalyticMeasure::replace_segment(pi, a, b, 0.0, {{a, phi * delta}, {b, (1.0 - phi) * delta}}), 0.0,
              0.0};
  d.predicted_gain = (0.5 - phi) * delta * delta;
  d.lower_bound = d.predicted_gain;
  return d;
}

Deviation deviation_point_mass(const AnalyticMeasure& nu, const AnalyticMeasure& mu, double z, double theta) {
  constexpr const char* gen = "point_mass";
  require_theta(theta);
  require(z > 0.0, gen, "z > 0");
  require(nu.positive_atoms().empty(), gen, "F_nu continuous on (0, inf)");
  require(probe_concavity(nu, positive_grid(nu, mu), kExactTolerance).ok, gen, "F_nu concave on (0, inf)");
  require(nu.density(z - 1e-7 * z) > nu.density(z), gen, "f_nu(x) > f_nu(z) for x < z");
  require(nu.call(z) > mu.call(z) + 1e-12, gen, "C_nu(z) > C_mu(z)");

  const double m = nu.mass();
  double eps = 0.5 * z;
  bool found = false;
  for (int k = 0; k < 60; ++k, eps *= 0.5) {
    const double cl = nu.call(z - eps) + 2.0 * eps * (nu.cdf(z - eps) - m);
    const double cr = nu.call(z + eps) - 2.0 * eps * (nu.cdf(z + eps) - m);
    if (cl > mu.call(z + eps) && cr > mu.call(z - eps)) {
      found = true;
      break;
    }
  }
  require(found, gen, "call-slope inequalities at z -/+ eps");

  // w solves int_{(w, z+eps)} (x - z) nu(dx) = 0.
  const double top = z + eps;
  const double ft = nu.cdf(top);
  const double mt = top * ft - nu.put(top);
  auto h = [&](double w) {
    const double fw = nu.cdf(w);
    return (mt - (w * fw - nu.put(w))) - z * (ft - fw);
  };
  require(h(z) > 0.0, gen, "nu((z, z + eps)) > 0");
  double lo = z - eps;
  double hi = z;
  require(h(lo) <= 0.0, gen, "w >= z - eps");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (h(mid) <= 0.0 ? lo : hi) = mid;
  }
  const double w = lo;
  const double v = nu.cdf(w);
  Deviation d{AnalyticMeasure::replace_segment(nu, w, top, 0.0, {{z, ft - v}}), 0.0, 0.0};
  d.predicted_gain = 0.5 * (ft - v) * (2.0 * nu.cdf(z) - v - ft);
  d.lower_bound = d.predicted_gain;
  require(d.predicted_gain > 0.0, gen, "2 F_nu(z) - v - F_nu(z + eps) > 0");
  require(strongly_admissible(d.sigma, mu), gen, "sigma strongly admissible");
  return d;
}

// ---------------------------------------------------------------------------
// Best response

BestResponse best_response_search(const AnalyticMeasure& nu, const AnalyticMeasure& mu, double theta,
                                  int grid_size) {
  require_theta(theta);
  if (grid_size < 2 || grid_size > 512) throw DomainError("best_response_search: grid_size must lie in [2, 512]");
  const double m = mu.mass();
  const double top = std::max({1.1 * nu.support_max(), 1.1 * mu.support_max(), m > 0.0 ? 2.0 * mu.mean() / m : 0.0});
  if (!(top > 0.0) || !std::isfinite(top)) throw UnsupportedMeasure("best_response_search: unbounded support");

  const auto n = static_cast<std::size_t>(grid_size);
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = top * static_cast<double>(i) / static_cast<double>(n - 1);

  lp::Problem prob;
  prob.objective.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    prob.objective[i] = (g[i] > 0.0 ? nu.cdf_left(g[i]) : 0.0) + theta * atom_weight(nu, g[i]);
  }
  prob.constraints.push_back({std::vector<double>(n, 1.0), lp::Sense::eq, m});
  for (std::size_t j = 1; j < n; ++j) {
    const double pm = mu.put(g[j]);
    if (!(pm > 0.0)) continue;
    lp::Constraint c{std::vector<double>(n, 0.0), lp::Sense::geq, pm};
    for (std::size_t i = 0; i < j; ++i) c.coeffs[i] = g[j] - g[i];
    prob.constraints.push_back(std::move(c));
  }
  const auto sol = lp::solve(prob, 1e-9);
  if (sol.status != lp::Status::optimal) throw InvariantViolation("best_response_search: LP not solved to optimality");

  BestResponse br;
  br.value = sol.value;
  br.grid = g;
  std::vector<double> loc;
  std::vector<double> w;
  for (std::size_t i = 0; i < n; ++i) {
    if (sol.x[i] > 1e-14) {
      loc.push_back(g[i]);
      w.push_back(sol.x[i]);
    }
  }
  br.argmax = FiniteAtomicMeasure(loc, w);
  br.equilibrium_value = payoff(nu, nu, theta);
  return br;
}

// ---------------------------------------------------------------------------
// Uniform bound for convex distribution functions

bool check_uniform_bound(const FiniteAtomicMeasure& pi, const std::function<double(double)>& h, double tol) {
  if (pi.empty() || std::abs(pi.mass() - 1.0) > 1e-12) {
    throw PreconditionError("check_uniform_bound: pi must be a probability measure");
  }
  const auto loc = pi.locations();
  const auto w = pi.weights();
  double px = 0.0;
  double pf = 0.0;
  double prev_slope = 0.0;
  for (std::size_t i = 0; i < loc.size(); ++i) {
    if (!(loc[i] > px)) throw PreconditionError("check_uniform_bound: CDF not convex (atom at zero)");
    const double f = pf + w[i];
    const double s = (f - pf) / (loc[i] - px);
    if (s < prev_slope * (1.0 - 1e-12)) throw PreconditionError("check_uniform_bound: CDF not convex");
    prev_slope = s;
    px = loc[i];
    pf = f;
  }
  double lhs = 0.0;
  for (std::size_t i = 0; i < loc.size(); ++i) lhs += w[i] * h(loc[i]);
  const double ybar = pi.mean();
  const double rhs =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(h, 0.0, 2.0 * ybar, 20, 1e-13) / (2.0 * ybar);
  return lhs <= rhs + tol;
}

// ---------------------------------------------------------------------------
// Serialisation

nlohmann::json to_json(const AstarReport& r) {
  return {{"mass_ok", r.mass_ok},
          {"zero_atom_ok", r.zero_atom_ok},
          {"continuity_ok", r.continuity_ok},
          {"mean_ok", r.mean_ok},
          {"call_dominance_ok", r.call_dominance_ok},
          {"concavity_ok", r.concavity_ok},
          {"slack_linearity_ok", r.slack_linearity_ok},
          {"all_ok", r.all_ok()},
          {"worst_violation",
           {{"condition", r.worst_violation.condition},
            {"x", r.worst_violation.x},
            {"magnitude", r.worst_violation.magnitude}}}};
}

nlohmann::json to_json(const LagrangianCertificate& c) {
  nlohmann::json eta = nlohmann::json::array();
  for (const auto& a : c.eta_star.atoms()) eta.push_back({a.location, a.weight});
  return {{"lambda", c.lambda_star},     {"gamma", c.gamma_star},         {"zeta", c.zeta_star},
          {"theta", c.theta},            {"eta", eta},                    {"gap_sup", c.gamma_gap_sup},
          {"moment_gap", c.moment_gap},  {"slackness_gap", c.slackness_gap}};
}

}  // namespace contest
