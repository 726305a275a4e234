#pragma once

#include <vector>

#include "contest/measures.hpp"
#include "oracles.hpp"

namespace fixtures {

inline contest::FiniteAtomicMeasure to_measure(const std::vector<oracle::Atom>& atoms) {
  std::vector<double> x;
  std::vector<double> w;
  for (const auto& a : atoms) {
    x.push_back(a.x);
    w.push_back(a.w);
  }
  return {x, w};
}

inline contest::FiniteAtomicMeasure atoms(std::vector<double> x, std::vector<double> w) {
  return {std::move(x), std::move(w)};
}

inline contest::FiniteAtomicMeasure two_atom(double eps) { return atoms({1.0 - eps, 1.0 + eps}, {0.5, 0.5}); }

}  // namespace fixtures
