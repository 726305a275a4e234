#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "contest/equilibrium.hpp"
#include "contest/simulate.hpp"
#include "contest/verify.hpp"

using namespace contest;

namespace {

FiniteAtomicMeasure random_measure(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> loc(0.0, 10.0);
  std::uniform_real_distribution<double> wt(0.1, 1.0);
  std::vector<Atom> atoms(n);
  double total = 0.0;
  for (auto& a : atoms) {
    a = {loc(rng), wt(rng)};
    total += a.weight;
  }
  for (auto& a : atoms) a.weight /= total;
  return FiniteAtomicMeasure::from_atoms(std::move(atoms));
}

void BM_SolveAtomic(benchmark::State& state) {
  const auto chi = random_measure(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_atomic(chi));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveAtomic)->RangeMultiplier(10)->Range(10, 100000)->Complexity();

void BM_SolveGeneralBeta23(benchmark::State& state) {
  const auto mu = AnalyticMeasure::beta23();
  for (auto _ : state) benchmark::DoNotOptimize(solve_general(mu, 1e-6, 14));
}
BENCHMARK(BM_SolveGeneralBeta23)->Unit(benchmark::kMillisecond);

void BM_Discretize(benchmark::State& state) {
  const auto mu = AnalyticMeasure::beta23();
  for (auto _ : state) benchmark::DoNotOptimize(discretize(mu, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Discretize)->Arg(1024)->Arg(16384);

void BM_Payoff(benchmark::State& state) {
  const auto law = solve_atomic(random_measure(static_cast<std::size_t>(state.range(0)), 2)).law.measure();
  for (auto _ : state) benchmark::DoNotOptimize(payoff(law, law, 0.3));
}
BENCHMARK(BM_Payoff)->Arg(10)->Arg(1000);

void BM_BestResponse(benchmark::State& state) {
  const FiniteAtomicMeasure mu({0.25, 1.75}, {0.5, 0.5});
  const auto law = solve_atomic(mu).law.measure();
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_response_search(law, mu, 0.0, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_BestResponse)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Simulate(benchmark::State& state) {
  const auto law = solve_atomic(random_measure(50, 3)).law.law();
  for (auto _ : state) benchmark::DoNotOptimize(simulate(law, law, 0.5, 1u << 20, 7, 1));
  state.SetItemsProcessed(state.iterations() * (1 << 20));
}
BENCHMARK(BM_Simulate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
