#include "contest/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "contest/errors.hpp"

namespace contest {

SplitMix64 SplitMix64::stream(std::uint64_t seed, std::uint64_t index) noexcept {
  SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  g.next();
  return g;
}

std::uint64_t SplitMix64::next() noexcept {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double sample(const PiecewiseLaw& law, SplitMix64& rng) {
  const double m = law.mass();
  // u in (0, m]: the generalised inverse never returns a point of zero mass.
  const double u = (1.0 - rng.uniform()) * m;
  return law.quantile(std::min(u, m));
}

namespace {

struct Counts {
  std::uint64_t wins = 0;
  std::uint64_t ties = 0;
  std::uint64_t losses = 0;
};

Counts run_block(const PiecewiseLaw& pi, const PiecewiseLaw& rho, std::uint64_t seed, std::uint64_t block,
                 std::uint64_t trials) {
  auto rng = SplitMix64::stream(seed, block);
  Counts c;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const double x1 = sample(pi, rng);
    const double x2 = sample(rho, rng);
    if (x1 > x2) {
      ++c.wins;
    } else if (x1 == x2) {
      ++c.ties;
    } else {
      ++c.losses;
    }
  }
  return c;
}

}  // namespace

SimResult simulate(const PiecewiseLaw& pi, const PiecewiseLaw& rho, double theta, std::uint64_t n,
                   std::uint64_t seed, unsigned threads) {
  if (n < 1) throw DomainError("simulate: need at least one trial");
  if (!(theta >= 0.0 && theta < 1.0)) throw DomainError("theta must lie in [0, 1)");
  if (std::abs(pi.mass() - 1.0) > 1e-9 || std::abs(rho.mass() - 1.0) > 1e-9) {
    throw PreconditionError("simulate: laws must be probability measures");
  }

  const std::uint64_t blocks = (n + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<Counts> per_block(blocks);
  auto trials_of = [&](std::uint64_t b) { return std::min(kTrialsPerBlock, n - b * kTrialsPerBlock); };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, blocks));
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t b = next++; b < blocks; b = next++) per_block[b] = run_block(pi, rho, seed, b, trials_of(b));
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  SimResult r;
  r.n_trials = n;
  r.seed = seed;
  r.theta = theta;
  for (const auto& c : per_block) {
    r.wins += c.wins;
    r.ties += c.ties;
    r.losses += c.losses;
  }
  const double nn = static_cast<double>(n);
  r.estimate = (static_cast<double>(r.wins) + theta * static_cast<double>(r.ties)) / nn;
  // Per-trial payoff takes values 1, theta, 0.
  const double second = (static_cast<double>(r.wins) + theta * theta * static_cast<double>(r.ties)) / nn;
  const double var = std::max(0.0, second - r.estimate * r.estimate);
  r.std_error = n > 1 ? std::sqrt(var * nn / (nn - 1.0) / nn) : 0.0;
  return r;
}

SimResult simulate(const AnalyticMeasure& pi, const AnalyticMeasure& rho, double theta, std::uint64_t n,
                   std::uint64_t seed, unsigned threads) {
  const auto* a = pi.as_piecewise();
  const auto* b = rho.as_piecewise();
  if (a == nullptr || b == nullptr) {
    throw UnsupportedMeasure("simulate: laws need an atoms-plus-piecewise-density representation");
  }
  return simulate(*a, *b, theta, n, seed, threads);
}

nlohmann::json to_json(const SimResult& r) {
  return {{"n_trials", r.n_trials}, {"estimate", r.estimate}, {"std_error", r.std_error},
          {"wins", r.wins},         {"ties", r.ties},         {"losses", r.losses},
          {"seed", r.seed},         {"theta", r.theta},       {"algorithm", r.algorithm}};
}

}  // namespace contest
