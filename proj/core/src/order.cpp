#include "contest/order.hpp"

#include <algorithm>
#include <cmath>

#include "contest/errors.hpp"

namespace contest {

std::vector<double> refine_grid(std::span<const double> points, int refinement) {
  std::vector<double> out;
  out.reserve(points.size() * static_cast<std::size_t>(refinement + 1));
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.push_back(points[i]);
    if (i + 1 == points.size()) break;
    const double a = points[i];
    const double b = points[i + 1];
    for (int k = 1; k <= refinement; ++k) out.push_back(a + (b - a) * k / (refinement + 1));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> evaluation_grid(std::span<const AnalyticMeasure> measures, GridOptions opts) {
  std::vector<double> knots{0.0};
  double far = 0.0;
  for (const auto& m : measures) {
    auto b = m.breakpoints();
    knots.insert(knots.end(), b.begin(), b.end());
    const double s = m.support_max();
    far = std::max(far, std::isfinite(s) ? s : 0.0);
    far = std::max(far, m.mass() > 0.0 ? m.mean() / m.mass() : 0.0);
  }
  if (far <= 0.0) far = 1.0;
  knots.push_back(10.0 * far);
  std::erase_if(knots, [](double x) { return !std::isfinite(x) || x < 0.0; });
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  return refine_grid(knots, opts.refinement);
}

std::vector<double> evaluation_grid(std::initializer_list<AnalyticMeasure> measures, GridOptions opts) {
  return evaluation_grid(std::span<const AnalyticMeasure>(measures.begin(), measures.size()), opts);
}

bool convex_order_leq(const AnalyticMeasure& a, const AnalyticMeasure& b, double tol, GridOptions opts) {
  if (std::abs(a.mass() - b.mass()) > tol || std::abs(a.mean() - b.mean()) > tol) return false;
  for (double x : evaluation_grid({a, b}, opts)) {
    if (a.put(x) > b.put(x) + tol) return false;
  }
  return true;
}

bool weakly_admissible(const AnalyticMeasure& nu, const AnalyticMeasure& mu, double tol, GridOptions opts) {
  if (std::abs(nu.mass() - mu.mass()) > tol) return false;
  for (double x : evaluation_grid({nu, mu}, opts)) {
    if (nu.put(x) < mu.put(x) - tol) return false;
  }
  return true;
}

bool strongly_admissible(const AnalyticMeasure& nu, const AnalyticMeasure& mu, double tol, GridOptions opts) {
  return std::abs(nu.mean() - mu.mean()) <= tol && weakly_admissible(nu, mu, tol, opts);
}

double put_distance(const AnalyticMeasure& a, const AnalyticMeasure& b, GridOptions opts) {
  double d = 0.0;
  for (double x : evaluation_grid({a, b}, opts)) d = std::max(d, std::abs(a.put(x) - b.put(x)));
  return d;
}

PiecewiseLaw breve(const FiniteAtomicMeasure& m) {
  if (m.empty()) return PiecewiseLaw{};
  // Density on (2 xi_{j-1}, 2 xi_j) is sum_{i >= j} p_i / (2 xi_i).
  std::vector<double> knots{0.0};
  std::vector<double> dens;
  auto loc = m.locations();
  auto w = m.weights();
  std::vector<double> tail(loc.size() + 1, 0.0);
  for (std::size_t i = loc.size(); i-- > 0;) {
    tail[i] = tail[i + 1] + (loc[i] > 0.0 ? w[i] / (2.0 * loc[i]) : 0.0);
  }
  for (std::size_t i = 0; i < loc.size(); ++i) {
    if (loc[i] <= 0.0) continue;
    knots.push_back(2.0 * loc[i]);
    dens.push_back(tail[i]);
  }
  FiniteAtomicMeasure zero;
  if (m.atom_at_zero() > 0.0) zero = FiniteAtomicMeasure({0.0}, {m.atom_at_zero()});
  if (dens.empty()) return PiecewiseLaw(std::move(zero));
  return PiecewiseLaw(std::move(zero), std::move(knots), std::move(dens));
}

double breve_put(const FiniteAtomicMeasure& m, double x) {
  if (!(x >= 0.0)) throw DomainError("breve_put: negative strike");
  double s = 0.0;
  auto loc = m.locations();
  auto w = m.weights();
  for (std::size_t i = 0; i < loc.size(); ++i) {
    const double xi = loc[i];
    if (xi <= 0.0) {
      s += w[i] * x;
    } else if (x <= 2.0 * xi) {
      s += w[i] * x * x / (4.0 * xi);
    } else {
      s += w[i] * (x - xi);
    }
  }
  return s;
}

}  // namespace contest
