#pragma once

#include <optional>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "contest/measures.hpp"

namespace contest {

/// Declarative description of an input law, as read from JSON:
///
///   {"type":"atomic","atoms":[[location,weight],...]}
///   {"type":"uniform","a":A,"b":B}
///   {"type":"beta23"}
///   {"type":"pointmass","x":X,"w":W}
///   {"type":"mixture","components":[[weight,spec],...]}
struct MeasureSpec {
  struct Atomic {
    std::vector<Atom> atoms;
  };
  struct Uniform {
    double a = 0.0;
    double b = 1.0;
  };
  struct Beta23 {};
  struct PointMass {
    double x = 0.0;
    double w = 1.0;
  };
  struct Mixture {
    std::vector<double> weights;
    std::vector<MeasureSpec> components;
  };

  std::variant<Atomic, Uniform, Beta23, PointMass, Mixture> value;
};

/// Throws InputError naming the JSON pointer of the first malformed element.
MeasureSpec parse_measure_spec(const nlohmann::json& j);
nlohmann::json to_json(const MeasureSpec& spec);

AnalyticMeasure resolve(const MeasureSpec& spec);

/// The finite atomic measure described by `spec`, when it is one (atomic or
/// point mass); merges duplicate locations.
std::optional<FiniteAtomicMeasure> as_atomic(const MeasureSpec& spec);

}  // namespace contest
