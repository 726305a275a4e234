#include "contest/lp.hpp"

#include <cmath>
#include <limits>

#include "contest/errors.hpp"

namespace contest::lp {
namespace {

// Tableau rows 0..m-1 hold constraints, row m the objective (reduced costs,
// stored as z_j - c_j for a maximization). Column n_cols is the rhs.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_((rows + 1) * (cols + 1), 0.0), basis_(rows) {}

  double& at(std::size_t r, std::size_t c) { return t_[r * (n_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return t_[r * (n_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, n_); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / at(pr, pc);
    double* prow = &t_[pr * (n_ + 1)];
    for (std::size_t c = 0; c <= n_; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == pr) continue;
      double* row = &t_[r * (n_ + 1)];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= n_; ++c) row[c] -= f * prow[c];
      row[pc] = 0.0;
    }
    basis_[pr] = pc;
  }

 private:
  std::size_t m_, n_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

// Runs primal simplex on the objective row. `allowed` masks columns that may
// enter. Returns optimal, unbounded or iteration_limit.
Status iterate(Tableau& t, const std::vector<bool>& allowed, double tol, std::size_t& pivots) {
  const std::size_t m = t.rows();
  const std::size_t n = t.cols();
  const std::size_t max_pivots = 50 * (m + n) + 1000;
  std::size_t degenerate_run = 0;
  while (pivots < max_pivots) {
    const bool bland = degenerate_run > 50;
    std::size_t pc = n;
    double best = -tol;
    for (std::size_t c = 0; c < n; ++c) {
      if (!allowed[c]) continue;
      const double d = t.at(m, c);
      if (d < best) {
        pc = c;
        if (bland) break;
        best = d;
      }
    }
    if (pc == n) return Status::optimal;

    std::size_t pr = m;
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      const double a = t.at(r, pc);
      if (a <= tol) continue;
      const double q = t.at(r, n) / a;
      if (q < ratio - 1e-12 || (q <= ratio + 1e-12 && pr < m && t.basis()[r] < t.basis()[pr])) {
        ratio = q;
        pr = r;
      }
    }
    if (pr == m) return Status::unbounded;
    degenerate_run = (ratio <= tol) ? degenerate_run + 1 : 0;
    t.pivot(pr, pc);
    ++pivots;
  }
  return Status::iteration_limit;
}

}  // namespace

Solution solve(const Problem& problem, double tol) {
  const std::size_t nv = problem.objective.size();
  const std::size_t m = problem.constraints.size();

  // Column layout: originals, one slack or surplus per inequality, one
  // artificial per geq or eq row (after sign normalisation).
  std::vector<Sense> sense(m);
  std::vector<double> sign(m, 1.0);
  std::size_t n_slack = 0;
  std::size_t n_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = problem.constraints[i];
    if (c.coeffs.size() != nv) throw PreconditionError("lp: constraint width mismatch");
    sense[i] = c.sense;
    if (c.rhs < 0.0) {
      sign[i] = -1.0;
      if (c.sense == Sense::leq) sense[i] = Sense::geq;
      else if (c.sense == Sense::geq) sense[i] = Sense::leq;
    }
    if (sense[i] != Sense::eq) ++n_slack;
    if (sense[i] != Sense::leq) ++n_art;
  }
  const std::size_t n = nv + n_slack + n_art;
  Tableau t(m, n);
  std::vector<bool> is_art(n, false);
  std::size_t s = nv;
  std::size_t a = nv + n_slack;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = problem.constraints[i];
    for (std::size_t j = 0; j < nv; ++j) t.at(i, j) = sign[i] * c.coeffs[j];
    t.rhs(i) = sign[i] * c.rhs;
    if (sense[i] == Sense::leq) {
      t.at(i, s) = 1.0;
      t.basis()[i] = s++;
    } else {
      if (sense[i] == Sense::geq) t.at(i, s++) = -1.0;
      t.at(i, a) = 1.0;
      is_art[a] = true;
      t.basis()[i] = a++;
    }
  }

  Solution sol;
  std::vector<bool> allowed(n, true);

  // Phase 1: maximize -sum(artificials).
  if (n_art > 0) {
    for (std::size_t c = 0; c <= n; ++c) t.at(m, c) = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_art[t.basis()[i]]) continue;
      for (std::size_t c = 0; c <= n; ++c) {
        if (!is_art[c]) t.at(m, c) -= t.at(i, c);
      }
    }
    const Status st = iterate(t, allowed, tol, sol.pivots);
    if (st == Status::iteration_limit) {
      sol.status = st;
      return sol;
    }
    if (-t.at(m, n) > 1e-7 * (1.0 + std::abs(t.at(m, n)))) {
      sol.status = Status::infeasible;
      return sol;
    }
    // Drive remaining artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_art[t.basis()[i]]) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (!is_art[c] && std::abs(t.at(i, c)) > tol) {
          t.pivot(i, c);
          ++sol.pivots;
          break;
        }
      }
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (is_art[c]) allowed[c] = false;
    }
  }

  // Phase 2: reduced costs for the real objective.
  for (std::size_t c = 0; c <= n; ++c) t.at(m, c) = 0.0;
  for (std::size_t j = 0; j < nv; ++j) t.at(m, j) = -problem.objective[j];
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t b = t.basis()[i];
    const double cb = b < nv ? problem.objective[b] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c <= n; ++c) t.at(m, c) += cb * t.at(i, c);
  }
  const Status st = iterate(t, allowed, tol, sol.pivots);
  sol.status = st;
  sol.x.assign(nv, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis()[i] < nv) sol.x[t.basis()[i]] = std::max(0.0, t.rhs(i));
  }
  sol.value = 0.0;
  for (std::size_t j = 0; j < nv; ++j) sol.value += problem.objective[j] * sol.x[j];
  return sol;
}

}  // namespace contest::lp
