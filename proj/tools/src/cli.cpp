#include "contest_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "contest/equilibrium.hpp"
#include "contest/errors.hpp"
#include "contest/simulate.hpp"
#include "contest/spec.hpp"
#include "contest/verify.hpp"

namespace contest::cli {
namespace {

using nlohmann::json;

json read_json(const std::string& source) {
  std::string text;
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (source[first] == '{' || source[first] == '[')) {
    text = source;
  } else {
    std::ifstream in(source);
    if (!in) throw InputError("", "cannot open input file '" + source + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("", std::string("malformed JSON: ") + e.what());
  }
}

struct Solved {
  EquilibriumLaw law;
  ConvergenceReport report;
  AnalyticMeasure mu;
  AnalyticMeasure reference;  ///< law the equilibrium was solved for exactly
};

Solved solve_spec(const MeasureSpec& spec, const RunConfig& cfg) {
  auto mu = resolve(spec);
  if (auto atomic = as_atomic(spec)) {
    auto sol = solve_atomic(*atomic);
    ConvergenceReport rep;
    rep.levels.push_back({0, atomic->size(), std::nan("")});
    rep.converged = true;
    return {sol.law, rep, mu, AnalyticMeasure(*atomic)};
  }
  auto g = solve_general(mu, cfg.tol, cfg.max_level);
  return {g.law, g.report, mu, AnalyticMeasure(g.discretized)};
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void write_solve(const Solved& s, const RunConfig& cfg, std::ostream& out) {
  const auto& law = s.law;
  switch (cfg.format) {
    case Format::json:
      out << json{{"law", to_json(law)}, {"convergence", to_json(s.report)}}.dump(2) << "\n";
      break;
    case Format::csv: {
      out << "knot_left,knot_right,density\n";
      const auto k = law.density_knots();
      const auto r = law.density_values();
      for (std::size_t i = 0; i < r.size(); ++i) out << num(k[i]) << "," << num(k[i + 1]) << "," << num(r[i]) << "\n";
      break;
    }
    case Format::text: {
      out << "atom at zero : " << law.atom_at_zero() << "\n"
          << "mass, mean   : " << law.mass() << ", " << law.mean() << "\n"
          << "support      : [0, " << law.support_max() << "]\n"
          << "pieces       : " << law.density_values().size() << "\n"
          << "converged    : " << (s.report.converged ? "yes" : "no") << " (level " << s.report.final_level << ")\n";
      const auto k = law.density_knots();
      const auto r = law.density_values();
      const std::size_t show = std::min<std::size_t>(r.size(), 20);
      for (std::size_t i = 0; i < show; ++i) {
        out << "  [" << std::setw(12) << k[i] << ", " << std::setw(12) << k[i + 1] << ")  density " << r[i] << "\n";
      }
      if (show < r.size()) out << "  ... " << r.size() - show << " more pieces\n";
      for (const auto& w : s.report.warnings) out << "warning: " << w << "\n";
      break;
    }
  }
}

int do_verify(const MeasureSpec& spec, const RunConfig& cfg, std::ostream& out) {
  std::optional<Solved> solved;
  std::optional<EquilibriumLaw> law;
  AnalyticMeasure mu = resolve(spec);
  AnalyticMeasure reference = mu;
  if (cfg.law) {
    law = law_from_json(read_json(*cfg.law));
    if (auto a = as_atomic(spec)) reference = AnalyticMeasure(*a);
  } else {
    solved = solve_spec(spec, cfg);
    law = solved->law;
    reference = solved->reference;
  }

  const auto astar = check_astar(*law, mu, cfg.tol);
  json report{{"astar", to_json(astar)}};
  bool ok = astar.all_ok();
  try {
    const auto cert = certificate(*law, reference, cfg.theta, cfg.tol);
    auto cj = to_json(cert);
    cj["value"] = certificate_value(cert, reference);
    report["certificate"] = cj;
  } catch (const CertificateViolation& e) {
    report["certificate"] = {{"violations", e.violations()}};
    ok = false;
  }
  const auto br = best_response_search(law->measure(), mu, cfg.theta, cfg.grid);
  report["best_response"] = {{"value", br.value}, {"equilibrium_value", br.equilibrium_value}, {"grid", cfg.grid}};
  report["ok"] = ok;

  switch (cfg.format) {
    case Format::json:
      out << report.dump(2) << "\n";
      break;
    case Format::csv:
      out << "check,ok\n";
      for (const char* key : {"mass_ok", "zero_atom_ok", "continuity_ok", "mean_ok", "call_dominance_ok",
                              "concavity_ok", "slack_linearity_ok"}) {
        out << key << "," << (report["astar"][key].get<bool>() ? 1 : 0) << "\n";
      }
      out << "certificate," << (report["certificate"].contains("violations") ? 0 : 1) << "\n";
      break;
    case Format::text:
      out << "A* membership : " << (astar.all_ok() ? "pass" : "FAIL") << "\n";
      if (!astar.all_ok()) {
        out << "  worst: " << astar.worst_violation.condition << " at x = " << astar.worst_violation.x
            << " (magnitude " << astar.worst_violation.magnitude << ")\n";
      }
      out << "certificate   : " << (report["certificate"].contains("violations") ? "FAIL" : "pass") << "\n";
      out << "best response : " << br.value << " vs equilibrium value " << br.equilibrium_value << "\n";
      break;
  }
  return ok ? kExitOk : kExitVerification;
}

void do_simulate(const MeasureSpec& spec, const RunConfig& cfg, std::ostream& out) {
  const auto s = solve_spec(spec, cfg);
  const auto& nu = s.law.measure();
  const auto r = simulate(nu, nu, cfg.theta, cfg.n_trials, cfg.seed);
  const double exact = payoff(nu, nu, cfg.theta);
  switch (cfg.format) {
    case Format::json: {
      auto j = to_json(r);
      j["exact"] = exact;
      j["equilibrium_value"] = equilibrium_value(s.law.atom_at_zero(), cfg.theta, s.law.mass());
      out << j.dump(2) << "\n";
      break;
    }
    case Format::csv:
      out << "n_trials,estimate,std_error,wins,ties,losses,seed,exact\n"
          << r.n_trials << "," << num(r.estimate) << "," << num(r.std_error) << "," << r.wins << "," << r.ties
          << "," << r.losses << "," << r.seed << "," << num(exact) << "\n";
      break;
    case Format::text:
      out << "estimate " << r.estimate << " +- " << r.std_error << " over " << r.n_trials << " trials (" << r.algorithm
          << ", seed " << r.seed << ")\nexact    " << exact << "\n";
      break;
  }
}

void do_discretize(const MeasureSpec& spec, const RunConfig& cfg, std::ostream& out) {
  const auto chi = discretize(resolve(spec), std::size_t{1} << cfg.max_level);
  if (cfg.format == Format::json) {
    json atoms = json::array();
    for (const auto& a : chi.atoms()) atoms.push_back({a.location, a.weight});
    out << json{{"type", "atomic"}, {"atoms", atoms}}.dump(2) << "\n";
    return;
  }
  if (cfg.format == Format::csv) out << "location,weight\n";
  for (const auto& a : chi.atoms()) {
    out << num(a.location) << (cfg.format == Format::csv ? "," : "  ") << num(a.weight) << "\n";
  }
}

void do_curves(const MeasureSpec& spec, const RunConfig& cfg, std::ostream& out) {
  const auto s = solve_spec(spec, cfg);
  const auto& nu = s.law.measure();
  const auto& mu = s.mu;
  const double yt = s.law.support_max() > 0.0 ? s.law.support_max() : std::max(1.0, mu.support_max());
  std::vector<double> xs(s.law.density_knots().begin(), s.law.density_knots().end());
  for (int i = 0; i < 512; ++i) xs.push_back(1.1 * yt * i / 511.0);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  out << "x,F_mu,F_nu,C_mu,C_nu,P_mu,P_nu,density_nu\n";
  for (double x : xs) {
    out << num(x) << "," << num(mu.cdf(x)) << "," << num(nu.cdf(x)) << "," << num(mu.call(x)) << ","
        << num(nu.call(x)) << "," << num(mu.put(x)) << "," << num(nu.put(x)) << "," << num(nu.density(x)) << "\n";
  }
}

}  // namespace

std::optional<RunConfig> parse_args(int argc, char** argv, int& exit_code) {
  CLI::App app{"Symmetric equilibria of stopping contests with a random initial law"};
  app.require_subcommand(1, 1);
  RunConfig cfg;
  std::string format = "json";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input,-i", cfg.input, "Measure spec: inline JSON or a file path")->required();
    sub->add_option("--tol", cfg.tol, "Convergence / verification tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-level", cfg.max_level, "Maximum dyadic level (2^k atoms)")->check(CLI::Range(1, 24));
    sub->add_option("--theta", cfg.theta, "Tie-breaking weight in [0, 1)");
    sub->add_option("--output,-o", cfg.output, "Output file (default stdout)");
    sub->add_option("--format,-f", format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
  };

  auto* solve = app.add_subcommand("solve", "Compute the equilibrium law");
  auto* verify = app.add_subcommand("verify", "Check membership, certificate and best response");
  auto* sim = app.add_subcommand("simulate", "Monte Carlo payoff of the equilibrium against itself");
  auto* disc = app.add_subcommand("discretize", "Conditional-mean discretization with 2^max-level bins");
  auto* curves = app.add_subcommand("curves", "CSV of F, C, P and density curves");
  for (auto* sub : {solve, verify, sim, disc, curves}) add_common(sub);
  std::string law;
  verify->add_option("--law", law, "Serialized equilibrium law to verify (JSON or path)");
  verify->add_option("--grid", cfg.grid, "Best-response grid size")->check(CLI::Range(2, 512));
  sim->add_option("--n,--n-trials", cfg.n_trials, "Number of trials")->check(CLI::PositiveNumber);
  sim->add_option("--seed", cfg.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    exit_code = app.exit(e) == 0 ? kExitOk : kExitInput;
    return std::nullopt;
  }
  if (solve->parsed()) cfg.command = Command::solve;
  if (verify->parsed()) cfg.command = Command::verify;
  if (sim->parsed()) cfg.command = Command::simulate;
  if (disc->parsed()) cfg.command = Command::discretize;
  if (curves->parsed()) cfg.command = Command::curves;
  if (!law.empty()) cfg.law = law;
  cfg.format = format == "csv" ? Format::csv : format == "text" ? Format::text : Format::json;
  exit_code = kExitOk;
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!(cfg.theta >= 0.0 && cfg.theta < 1.0)) {
    err << "error: --theta must lie in [0, 1)\n";
    return kExitInput;
  }
  if (!(cfg.tol > 0.0)) {
    err << "error: --tol must be positive\n";
    return kExitInput;
  }
  if (cfg.n_trials < 1) {
    err << "error: --n must be at least 1\n";
    return kExitInput;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) {
      err << "error: cannot open output file '" << cfg.output << "'\n";
      return kExitInput;
    }
    sink = &file;
  }

  try {
    const auto spec = parse_measure_spec(read_json(cfg.input));
    switch (cfg.command) {
      case Command::solve:
        write_solve(solve_spec(spec, cfg), cfg, *sink);
        return kExitOk;
      case Command::verify:
        return do_verify(spec, cfg, *sink);
      case Command::simulate:
        do_simulate(spec, cfg, *sink);
        return kExitOk;
      case Command::discretize:
        do_discretize(spec, cfg, *sink);
        return kExitOk;
      case Command::curves:
        do_curves(spec, cfg, *sink);
        return kExitOk;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ScalingError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const UnsupportedMeasure& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace contest::cli
