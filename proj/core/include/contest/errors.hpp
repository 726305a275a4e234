#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace contest {

/// Argument outside the mathematical domain of an operation (negative strike,
/// empty measure, theta outside [0,1), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The measure representation lacks something the operation needs, e.g. a
/// quantile function or a piecewise-constant density.
class UnsupportedMeasure : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A stated precondition on the input does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Internal consistency failure; reaching this indicates a bug or severe
/// floating-point breakdown.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Certificate constants assume a probability measure.
class ScalingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A deviation generator could not build a profitable admissible deviation
/// because one of its hypotheses fails. `inequality()` names the violated
/// condition.
class ConstructiveFailure : public std::runtime_error {
 public:
  ConstructiveFailure(std::string generator, std::string inequality)
      : std::runtime_error(generator + ": hypothesis violated: " + inequality),
        generator_(std::move(generator)),
        inequality_(std::move(inequality)) {}

  const std::string& generator() const noexcept { return generator_; }
  const std::string& inequality() const noexcept { return inequality_; }

 private:
  std::string generator_;
  std::string inequality_;
};

/// Malformed external input (JSON spec, serialized law). `path()` is a JSON
/// pointer to the offending element.
class InputError : public std::runtime_error {
 public:
  InputError(std::string path, const std::string& what)
      : std::runtime_error(what + " at " + (path.empty() ? std::string("/") : path)), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Raised by certificate construction when one of the certificate identities
/// does not hold at the requested tolerance.
class CertificateViolation : public std::runtime_error {
 public:
  explicit CertificateViolation(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "certificate violations:";
    for (const auto& s : v) out += " [" + s + "]";
    return out;
  }
  std::vector<std::string> violations_;
};

}  // namespace contest
