#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace contest::cli {

enum class Command { solve, verify, simulate, discretize, curves };
enum class Format { json, csv, text };

struct RunConfig {
  Command command = Command::solve;
  std::string input;  ///< inline JSON (leading '{') or a file path
  double tol = 1e-6;
  int max_level = 14;
  double theta = 0.0;
  std::uint64_t n_trials = 1000000;
  std::uint64_t seed = 0;
  std::string output;  ///< empty for stdout
  Format format = Format::json;
  std::optional<std::string> law;  ///< serialized EquilibriumLaw to verify instead of solving
  int grid = 256;                  ///< best-response grid size for `verify`
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitVerification = 2;

/// Parses argv into a RunConfig. Returns nullopt after printing help or a
/// usage error; `exit_code` is set accordingly.
std::optional<RunConfig> parse_args(int argc, char** argv, int& exit_code);

/// Executes one command. Results go to config.output (or `out`), diagnostics
/// to `err`. Returns 0, 1 (input error) or 2 (verification failure).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace contest::cli
