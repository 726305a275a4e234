#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "contest/measures.hpp"

namespace contest {

/// SplitMix64 (Steele, Lea, Flood). Stream b of a run with seed s starts from
/// the state s ^ (0x9e3779b97f4a7c15 * (b + 1)) after one scrambling step, so
/// results do not depend on how blocks are assigned to threads.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) noexcept;

  std::uint64_t next() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

inline constexpr const char* kRngAlgorithm = "splitmix64";
inline constexpr std::uint64_t kTrialsPerBlock = 1u << 16;

/// Inverse-CDF draw from a law with a piecewise representation. Atoms come
/// back as their stored location, so ties between atoms compare exactly.
double sample(const PiecewiseLaw& law, SplitMix64& rng);

struct SimResult {
  std::uint64_t n_trials = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t wins = 0;
  std::uint64_t ties = 0;
  std::uint64_t losses = 0;
  std::uint64_t seed = 0;
  double theta = 0.0;
  std::string algorithm = kRngAlgorithm;
};

/// Monte Carlo estimate of payoff(pi, rho, theta). Trials run in blocks of
/// kTrialsPerBlock, block b drawing from SplitMix64::stream(seed, b); counts
/// are summed, so the result is bit-identical for any `threads` (0 picks the
/// hardware concurrency).
SimResult simulate(const PiecewiseLaw& pi, const PiecewiseLaw& rho, double theta, std::uint64_t n,
                   std::uint64_t seed, unsigned threads = 0);
SimResult simulate(const AnalyticMeasure& pi, const AnalyticMeasure& rho, double theta, std::uint64_t n,
                   std::uint64_t seed, unsigned threads = 0);

nlohmann::json to_json(const SimResult& r);

}  // namespace contest
