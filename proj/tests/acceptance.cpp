// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "contest/equilibrium.hpp"
#include "contest/errors.hpp"
#include "contest/order.hpp"
#include "contest/simulate.hpp"
#include "contest/verify.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace contest;
using fixtures::atoms;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Fixture {
  std::string name;
  AnalyticMeasure mu;
  EquilibriumLaw law;
  AnalyticMeasure reference;  ///< the measure nu* is exactly optimal for
};

std::vector<Fixture> make_fixtures() {
  std::vector<Fixture> out;
  for (auto [name, chi] : {std::pair{std::string("delta_1"), atoms({1.0}, {1.0})},
                           {"half_delta_0_half_delta_1", atoms({0.0, 1.0}, {0.5, 0.5})},
                           {"two_atom_eps_0.75", fixtures::two_atom(0.75)}}) {
    out.push_back({name, chi, solve_atomic(chi).law, chi});
  }
  const auto g = solve_general(AnalyticMeasure::beta23(), 1e-6, 14);
  out.push_back({"beta23", AnalyticMeasure::beta23(), g.law, g.discretized});
  return out;
}

Outcome criterion1() {
  Outcome o;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> up(0.05, 3.0);
  std::uniform_real_distribution<double> ux(0.01, 10.0);
  double worst = 0.0;
  const auto t0 = Clock::now();
  for (int i = 0; i < 50; ++i) {
    const double p = up(rng);
    const double xi = ux(rng);
    const auto s = solve_atomic(atoms({xi}, {p}));
    o.check(s.law.density_values().size() == 1, "more than one density piece");
    if (s.law.density_values().size() != 1) continue;
    worst = std::max({worst, std::abs(s.law.density_values()[0] - p / (2.0 * xi)),
                      std::abs(s.law.density_knots()[1] - 2.0 * xi), std::abs(s.law.density_knots()[0])});
  }
  const double t = seconds_since(t0);
  o.check(worst < 1e-12, "max abs error >= 1e-12");
  o.check(t < 0.010, "runtime >= 10 ms");
  o.detail << "max error " << worst << ", " << t * 1e3 << " ms";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto a = solve_atomic(fixtures::two_atom(0.3));
  const auto b = solve_atomic(fixtures::two_atom(0.75));
  const double t = seconds_since(t0);
  double ea = 0.0;
  double eb = 0.0;
  if (a.law.density_values().size() == 1) {
    ea = std::max({std::abs(a.law.density_knots()[1] - 2.0), std::abs(a.law.density_values()[0] - 0.5)});
  } else {
    o.check(false, "eps=0.3 has more than one piece");
  }
  if (b.law.density_values().size() == 2) {
    const auto k = b.law.density_knots();
    const auto d = b.law.density_values();
    eb = std::max({std::abs(k[1] - 0.5), std::abs(k[2] - 3.0), std::abs(d[0] - 1.0), std::abs(d[1] - 0.2)});
  } else {
    o.check(false, "eps=0.75 does not have two pieces");
  }
  o.check(ea < 1e-12, "eps=0.3 error >= 1e-12");
  o.check(eb < 1e-9, "eps=0.75 error >= 1e-9");
  o.check(t < 0.010, "runtime >= 10 ms");
  o.detail << "errors " << ea << " / " << eb << ", " << t * 1e3 << " ms";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto g = solve_general(AnalyticMeasure::beta23(), 1e-6, 14);
  const double t = seconds_since(t0);
  const double dens = g.law.density_values()[0];
  const double knot = g.law.density_knots()[1];
  double call_gap = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = oracle::kC2 + (1.2 - oracle::kC2) * i / 1000.0;
    call_gap = std::max(call_gap, std::abs(g.law.measure().call(x) - oracle::beta23_call(x)));
  }
  o.check(std::abs(dens - 2.0 * oracle::kC1) < 1e-2, "density on [0, c2) off by >= 1e-2");
  o.check(std::abs(knot - oracle::kC2) < 1e-2, "first knot off by >= 1e-2");
  o.check(call_gap < 5e-3, "C_nu != C_mu beyond c2");
  o.check(t < 5.0, "runtime >= 5 s");
  o.detail << "density " << dens << " (2c1 " << 2.0 * oracle::kC1 << "), knot " << knot << " (c2 " << oracle::kC2
           << "), call gap " << call_gap << ", level " << g.report.final_level << ", " << t << " s";
  return o;
}

Outcome criterion4(const std::vector<Fixture>& fx) {
  Outcome o;
  const auto t0 = Clock::now();
  double worst_exact = 0.0;
  double worst_z = 0.0;
  std::uint64_t seed = 1;
  for (const auto& f : fx) {
    for (double theta : {0.0, 0.5}) {
      const double f0 = f.mu.atom_at_zero();
      const double expected = 0.5 + (theta - 0.5) * f0 * f0;
      const double exact = payoff(f.law.measure(), f.law.measure(), theta);
      worst_exact = std::max(worst_exact, std::abs(exact - expected));
      o.check(std::abs(exact - expected) < 1e-10, f.name + ": exact payoff off");
      const auto r = simulate(f.law.law(), f.law.law(), theta, 1000000, seed++);
      const double z = std::abs(r.estimate - exact) / r.std_error;
      worst_z = std::max(worst_z, z);
      o.check(z <= 4.0, f.name + ": Monte Carlo outside 4 std errors");
    }
  }
  const double t = seconds_since(t0);
  o.check(t < 30.0, "runtime >= 30 s");
  o.detail << "max exact error " << worst_exact << ", max |z| " << worst_z << ", " << t << " s";
  return o;
}

Outcome criterion5(const std::vector<Fixture>& fx) {
  Outcome o;
  double gamma = 0.0;
  double moment = 0.0;
  double slack = 0.0;
  for (const auto& f : fx) {
    for (double theta : {0.0, 0.5}) {
      try {
        const auto c = certificate(f.law, f.reference, theta, 1e-9);
        gamma = std::max(gamma, c.gamma_gap_sup);
        moment = std::max(moment, c.moment_gap);
        slack = std::max(slack, c.slackness_gap);
      } catch (const std::exception& e) {
        o.check(false, f.name + ": " + e.what());
      }
    }
  }
  o.check(gamma < 1e-9, "Gamma gap >= 1e-9");
  o.check(moment < 1e-10, "moment gap >= 1e-10");
  o.check(slack < 1e-9, "slackness gap >= 1e-9");
  o.detail << "Gamma gap " << gamma << ", moment gap " << moment << ", slackness gap " << slack;
  return o;
}

template <class F>
bool fails_constructively(F&& f) {
  try {
    f();
  } catch (const ConstructiveFailure&) {
    return true;
  }
  return false;
}

Outcome criterion6() {
  Outcome o;
  const AnalyticMeasure one = atoms({1.0}, {1.0});
  const AnalyticMeasure half01 = atoms({0.0, 1.0}, {0.5, 0.5});
  const auto star_one = solve_atomic(atoms({1.0}, {1.0})).law.measure();
  const auto beta = AnalyticMeasure::beta23();
  const auto star_beta = solve_general(beta, 1e-6, 14).law.measure();
  std::ostringstream gains;

  auto realised = [](const Deviation& d, const AnalyticMeasure& nu, double theta) {
    return payoff(d.sigma, nu, theta) - payoff(nu, nu, theta);
  };

  for (double theta : {0.0, 0.2}) {
    // split_atom: nu = 1/2 delta_0 + 1/2 delta_1, an atom at z = 1.
    {
      const double p = 0.5;
      const double e1 = 0.5;
      const double e2 = 0.1;
      const auto d = deviation_split_atom(half01, 1.0, e1, e2, theta);
      const double bound = p * (e1 * (1.0 - theta) * p - (1.0 + theta * p) * e2) / (e1 + e2);
      const double g = realised(d, half01, theta);
      o.check(g > 0.0, "split_atom gain not positive");
      o.check(std::abs(d.lower_bound - bound) < 1e-9, "split_atom bound differs from closed form");
      o.check(g >= bound - 1e-9, "split_atom gain below bound");
      o.check(std::abs(g - d.predicted_gain) < 1e-9, "split_atom predicted gain off");
      o.check(fails_constructively([&] { (void)deviation_split_atom(star_one, 1.0, e1, e2, theta); }),
              "split_atom did not fail against nu*");
      if (theta == 0.0) gains << "split " << g << " (bound " << bound << "), ";
    }
    // flatten: Beta23 on [0.05, 0.3], inside its convex region.
    {
      const auto d = deviation_flatten(beta, 0.05, 0.3, theta);
      const double g = realised(d, beta, theta);
      o.check(g > 0.0, "flatten gain not positive");
      o.check(std::abs(g - d.predicted_gain) < 1e-9, "flatten gain differs from (1/2 - phi) Delta^2");
      o.check(fails_constructively([&] { (void)deviation_flatten(star_beta, 0.05, 0.3, theta); }),
              "flatten did not fail against nu*");
      if (theta == 0.0) gains << "flatten " << g << ", ";
    }
    // mean_deficit: generic and degenerate branches.
    {
      const auto d = deviation_mean_deficit(half01, one, theta);
      const double g = realised(d, half01, theta);
      o.check(g > 0.0, "mean_deficit gain not positive");
      o.check(g >= d.lower_bound - 1e-9, "mean_deficit gain below bound");
      o.check(weakly_admissible(d.sigma, one), "mean_deficit sigma not admissible");
      o.check(fails_constructively([&] { (void)deviation_mean_deficit(star_one, one, theta); }),
              "mean_deficit did not fail against nu*");

      const AnalyticMeasure spread = atoms({0.0, 2.0}, {0.5, 0.5});
      const auto dd = deviation_mean_deficit(half01, spread, theta);
      const double gd = realised(dd, half01, theta);
      o.check(gd > 0.0, "mean_deficit (degenerate) gain not positive");
      o.check(gd >= dd.lower_bound - 1e-9, "mean_deficit (degenerate) gain below bound");
      const auto star_spread = solve_atomic(atoms({0.0, 2.0}, {0.5, 0.5})).law.measure();
      o.check(fails_constructively([&] { (void)deviation_mean_deficit(star_spread, spread, theta); }),
              "mean_deficit (degenerate) did not fail against nu*");
      if (theta == 0.0) gains << "mean " << g << " / " << gd << ", ";
    }
    // zero_atom: nu = 1/4 delta_0 + 3/4 U[0, 8/3] against delta_1.
    {
      const auto nu = AnalyticMeasure::mixture(
          {{0.25, AnalyticMeasure::point_mass(0.0)}, {0.75, AnalyticMeasure::uniform(0.0, 8.0 / 3.0)}});
      const double p = 0.25;
      const double q = 0.05;
      const double phi = 0.1;
      const auto d = deviation_zero_atom(nu, one, q, phi, theta);
      const double bound = phi * ((1.0 - theta) * p * p - q * q);
      const double g = realised(d, nu, theta);
      o.check(g > 0.0, "zero_atom gain not positive");
      o.check(std::abs(d.lower_bound - bound) < 1e-9, "zero_atom bound differs from closed form");
      o.check(g >= bound - 1e-9, "zero_atom gain below bound");
      o.check(fails_constructively([&] { (void)deviation_zero_atom(star_one, one, q, phi, theta); }),
              "zero_atom did not fail against nu*");
      if (theta == 0.0) gains << "zero " << g << " (bound " << bound << "), ";
    }
    // point_mass: nu = 1/2 U[0,1] + 1/2 U[0,3] against delta_1 at z = 1.
    {
      const auto nu = AnalyticMeasure::mixture(
          {{0.5, AnalyticMeasure::uniform(0.0, 1.0)}, {0.5, AnalyticMeasure::uniform(0.0, 3.0)}});
      const auto d = deviation_point_mass(nu, one, 1.0, theta);
      const double g = realised(d, nu, theta);
      o.check(g > 0.0, "point_mass gain not positive");
      o.check(std::abs(g - d.predicted_gain) < 1e-9, "point_mass predicted gain off");
      o.check(strongly_admissible(d.sigma, one), "point_mass sigma not admissible");
      o.check(fails_constructively([&] { (void)deviation_point_mass(star_one, one, 1.0, theta); }),
              "point_mass did not fail against nu*");
      if (theta == 0.0) gains << "point " << g;
    }
  }
  o.detail << "gains at theta=0: " << gains.str();
  return o;
}

Outcome criterion7(const std::vector<Fixture>& fx) {
  Outcome o;
  constexpr double kLpTol = 1e-8;
  double worst_excess = -1.0;
  double worst_t = 0.0;
  std::ostringstream d;
  for (const auto& f : fx) {
    for (double theta : {0.0, 0.5}) {
      const auto t0 = Clock::now();
      const auto b256 = best_response_search(f.law.measure(), f.mu, theta, 256);
      const auto b512 = best_response_search(f.law.measure(), f.mu, theta, 512);
      const double t = seconds_since(t0);
      worst_t = std::max(worst_t, t);
      const double eq = payoff(f.law.measure(), f.law.measure(), theta);
      const double e256 = b256.value - eq;
      const double e512 = b512.value - eq;
      worst_excess = std::max(worst_excess, e256);
      o.check(e256 < 5e-3, f.name + ": grid-256 excess >= 5e-3");
      // The excess is negative when the grid cannot represent nu*; smaller
      // then means closer to the equilibrium value.
      o.check(std::abs(e512) < std::abs(e256) || (std::abs(e256) <= kLpTol && std::abs(e512) <= kLpTol),
              f.name + ": grid-512 excess not smaller");
      d << f.name << "/" << theta << " " << e256 << " -> " << e512 << "; ";
      o.check(t < 10.0, f.name + ": runtime >= 10 s");
    }
  }
  o.detail << "max excess at 256 " << worst_excess << ", slowest fixture " << worst_t << " s; excess 256 -> 512: "
           << d.str();
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double breve_gap = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto a = oracle::random_atomic(rng, 1 + i % 10, 3.0, i % 4 == 0);
    const auto chi = fixtures::to_measure(a);
    o.check(convex_order_leq(solve_atomic(chi).law.measure(), breve(chi), 1e-9), "nu* not below breve(mu)");
    for (double x : {0.05, 0.3, 0.9, 1.7, 2.5, 4.0, 7.0}) {
      breve_gap = std::max(breve_gap, std::abs(breve_put(chi, x) - oracle::breve_put_integral(a, x)));
    }
  }
  o.check(breve_gap < 1e-10, "breve put closed form vs integral >= 1e-10");

  // Monotonicity: b is a mean-preserving spread of a, atom by atom.
  for (int i = 0; i < 100; ++i) {
    const auto a = oracle::random_atomic(rng, 1 + i % 8, 3.0, i % 5 == 0);
    std::vector<oracle::Atom> b;
    for (const auto& at : a) {
      if (at.x == 0.0 || u(rng) < 0.3) {
        b.push_back(at);
        continue;
      }
      const double lo = at.x * u(rng);
      const double hi = at.x + u(rng) * 2.0 + 1e-3;
      const double wl = (hi - at.x) / (hi - lo);
      b.push_back({lo, at.w * wl});
      b.push_back({hi, at.w * (1.0 - wl)});
    }
    const auto ma = fixtures::to_measure(a);
    const auto mb = FiniteAtomicMeasure::from_atoms([&] {
      std::vector<Atom> v;
      for (const auto& at : b) v.push_back({at.x, at.w});
      return v;
    }());
    o.check(convex_order_leq(ma, mb, 1e-12), "generated pair not in convex order");
    o.check(convex_order_leq(breve(ma), breve(mb), 1e-12), "breve not monotone");
  }
  o.detail << "max breve put gap " << breve_gap;
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::vector<std::pair<std::string, AnalyticMeasure>> cases{
      {"beta23", AnalyticMeasure::beta23()},
      {"U[0,2]", AnalyticMeasure::uniform(0.0, 2.0)},
      {"1/2 U[0,1] + 1/2 U[0,2]",
       AnalyticMeasure::mixture({{0.5, AnalyticMeasure::uniform(0.0, 1.0)}, {0.5, AnalyticMeasure::uniform(0.0, 2.0)}})},
      {"1/5 delta_0 + 4/5 U[0,2]",
       AnalyticMeasure::mixture({{0.2, AnalyticMeasure::point_mass(0.0)}, {0.8, AnalyticMeasure::uniform(0.0, 2.0)}})},
      {"3/4 U[0,2] + 1/4 U[1,2]",
       AnalyticMeasure::mixture({{0.75, AnalyticMeasure::uniform(0.0, 2.0)}, {0.25, AnalyticMeasure::uniform(1.0, 2.0)}})},
  };
  std::ostringstream d;
  for (const auto& [name, mu] : cases) {
    // Bins that straddle a density jump converge at rate 1/n, so allow
    // levels past the 14 used for the Beta23 runtime budget.
    const auto a = solve_general(mu, 1e-6, 20, BinningScheme::dyadic);
    const auto b = solve_general(mu, 1e-6, 20, BinningScheme::shifted);
    const double dist = put_distance(a.law.measure(), b.law.measure());
    o.check(a.report.converged && b.report.converged, name + ": did not converge");
    o.check(dist < 2e-6, name + ": put distance >= 2e-6");
    d << name << " " << dist << "; ";
  }
  o.detail << d.str();
  return o;
}

Outcome criterion10() {
  Outcome o;
  std::mt19937_64 rng(1010);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto a = oracle::random_atomic(rng, 1 + i % 20, 5.0, i % 3 == 0);
    const auto chi = fixtures::to_measure(a);
    const auto s = solve_atomic(chi);
    const auto& nu = s.law.measure();
    for (std::size_t k = 0; k < s.binding_lines.size(); ++k) {
      const double y = s.law.density_knots()[k + 1];
      // Direct sums over the atoms of chi below the knot.
      double pm = 0.0;
      double pmean = 0.0;
      for (std::size_t j = 0; j < s.binding_lines[k]; ++j) {
        pm += a[j].w;
        pmean += a[j].w * a[j].x;
      }
      const double mass = nu.cdf(y);
      const double moment = y * nu.cdf(y) - nu.put(y);
      worst = std::max({worst, std::abs(mass - pm), std::abs(moment - pmean)});
    }
  }
  o.check(worst < 1e-9, "embedded mass or partial mean off by >= 1e-9");
  o.detail << "max error " << worst;
  return o;
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const std::function<Outcome()>& f) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    std::printf("criterion %2d: %s  %s [%.2f s]\n", id, o.pass ? "PASS" : "FAIL", o.detail.str().c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  };

  report(1, criterion1);
  report(2, criterion2);
  report(3, criterion3);
  const auto fx = make_fixtures();
  report(4, [&] { return criterion4(fx); });
  report(5, [&] { return criterion5(fx); });
  report(6, criterion6);
  report(7, [&] { return criterion7(fx); });
  report(8, criterion8);
  report(9, criterion9);
  report(10, criterion10);
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
