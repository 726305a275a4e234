#pragma once

#include <cstddef>
#include <vector>

namespace contest::lp {

enum class Sense { leq, geq, eq };

struct Constraint {
  std::vector<double> coeffs;
  Sense sense = Sense::leq;
  double rhs = 0.0;
};

/// maximize c.x subject to the constraints and x >= 0.
struct Problem {
  std::vector<double> objective;
  std::vector<Constraint> constraints;
};

enum class Status { optimal, infeasible, unbounded, iteration_limit };

struct Solution {
  Status status = Status::infeasible;
  double value = 0.0;
  std::vector<double> x;
  std::size_t pivots = 0;
};

/// Dense two-phase primal simplex. Dantzig pricing, switching to Bland's rule
/// after a run of degenerate pivots so that cycling cannot occur.
Solution solve(const Problem& problem, double tol = 1e-9);

}  // namespace contest::lp
