#pragma once

// Finite measures on [0, inf) and their distribution, put and call functions.
//
// Conventions used throughout the library:
//   F(x) = m([0, x])            right-continuous, F(x) = 0 for x < 0
//   P(x) = int_0^x (x - y) m(dy)
//   C(x) = int_x^inf (y - x) m(dy) = P(x) + mean - x * mass

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace contest {

struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

/// Sorted, strictly positive weights on strictly increasing locations >= 0.
class FiniteAtomicMeasure {
 public:
  FiniteAtomicMeasure() = default;

  /// Requires strictly increasing locations >= 0 and positive weights.
  FiniteAtomicMeasure(std::vector<double> locations, std::vector<double> weights);

  /// Sorts and merges duplicate locations by summing weights.
  static FiniteAtomicMeasure from_atoms(std::vector<Atom> atoms);

  std::span<const double> locations() const noexcept { return locations_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return locations_.size(); }
  bool empty() const noexcept { return locations_.empty(); }
  std::vector<Atom> atoms() const;

  double mass() const noexcept { return prefix_mass_.empty() ? 0.0 : prefix_mass_.back(); }
  double mean() const noexcept { return prefix_moment_.empty() ? 0.0 : prefix_moment_.back(); }
  double atom_at_zero() const noexcept;

  /// Mass and first moment of the first j atoms (j = 0..size()).
  double cumulative_mass(std::size_t j) const noexcept { return j == 0 ? 0.0 : prefix_mass_[j - 1]; }
  double cumulative_moment(std::size_t j) const noexcept {
    return j == 0 ? 0.0 : prefix_moment_[j - 1];
  }

  double cdf(double x) const noexcept;
  double cdf_left(double x) const noexcept;
  double put(double x) const;
  double call(double x) const;
  double support_max() const noexcept { return locations_.empty() ? 0.0 : locations_.back(); }

 private:
  std::vector<double> locations_;
  std::vector<double> weights_;
  std::vector<double> prefix_mass_;
  std::vector<double> prefix_moment_;
};

/// Atoms plus a piecewise-constant density. This is the representation the
/// solver emits and the one the sampler and the deviation generators work
/// with. The density lives on [knots.front(), knots.back()] and is zero
/// elsewhere; `densities[i]` applies on [knots[i], knots[i+1]).
class PiecewiseLaw {
 public:
  PiecewiseLaw() : PiecewiseLaw(FiniteAtomicMeasure{}, {}, {}) {}
  PiecewiseLaw(FiniteAtomicMeasure atoms, std::vector<double> knots, std::vector<double> densities);
  explicit PiecewiseLaw(FiniteAtomicMeasure atoms) : PiecewiseLaw(std::move(atoms), {}, {}) {}

  /// mass * U[a, b]; a == b degenerates to a point mass.
  static PiecewiseLaw uniform(double a, double b, double mass = 1.0);

  const FiniteAtomicMeasure& atoms() const noexcept { return atoms_; }
  std::span<const double> knots() const noexcept { return knots_; }
  std::span<const double> densities() const noexcept { return densities_; }

  double mass() const noexcept { return f_at_.back() + tail_mass_; }
  double mean() const noexcept { return mean_; }
  double atom_at_zero() const noexcept { return atoms_.atom_at_zero(); }

  double cdf(double x) const noexcept;
  double cdf_left(double x) const noexcept;
  double put(double x) const;
  double call(double x) const;
  /// Density of the absolutely continuous part, right-continuous.
  double density(double x) const noexcept;
  /// Generalised inverse inf{x : F(x) >= u} for u in [0, mass]. Atoms are
  /// returned as their stored location, bit for bit.
  double quantile(double u) const;

  std::span<const double> breakpoints() const noexcept { return bp_; }
  std::vector<Atom> positive_atoms() const;
  double support_max() const noexcept { return bp_.back(); }

 private:
  std::size_t segment_of(double x) const noexcept;

  FiniteAtomicMeasure atoms_;
  std::vector<double> knots_;
  std::vector<double> densities_;

  // Merged breakpoints (atom locations, density knots and 0) with the right
  // limits of F and the values of P there; seg_density_[i] holds on
  // [bp_[i], bp_[i+1]) and is zero past the last breakpoint.
  std::vector<double> bp_;
  std::vector<double> f_at_;
  std::vector<double> p_at_;
  std::vector<double> seg_density_;
  double tail_mass_ = 0.0;
  double mean_ = 0.0;
};

namespace detail {

class MeasureImpl {
 public:
  virtual ~MeasureImpl() = default;
  virtual double mass() const = 0;
  virtual double mean() const = 0;
  virtual double atom_at_zero() const = 0;
  virtual double cdf(double x) const = 0;
  virtual double cdf_left(double x) const = 0;
  virtual double put(double x) const = 0;
  virtual double density(double x) const = 0;
  virtual std::vector<double> breakpoints() const = 0;
  virtual std::vector<Atom> positive_atoms() const = 0;
  virtual double support_max() const = 0;
  /// Closed-form quantile when available.
  virtual std::optional<double> exact_quantile(double) const { return std::nullopt; }
  virtual const PiecewiseLaw* piecewise() const { return nullptr; }
  virtual std::string describe() const = 0;
};

}  // namespace detail

/// Immutable, cheaply copyable handle to any measure on [0, inf).
///
/// Closed forms back every evaluation: atomic and piecewise laws evaluate
/// exactly, Beta(2,3) through its polynomial CDF and call function, mixtures
/// and segment replacements by composition.
class AnalyticMeasure {
 public:
  AnalyticMeasure(FiniteAtomicMeasure m);  // NOLINT(google-explicit-constructor)
  AnalyticMeasure(PiecewiseLaw m);         // NOLINT(google-explicit-constructor)

  static AnalyticMeasure beta23();
  static AnalyticMeasure uniform(double a, double b, double mass = 1.0);
  static AnalyticMeasure point_mass(double x, double w = 1.0);
  static AnalyticMeasure mixture(std::vector<std::pair<double, AnalyticMeasure>> components);

  /// base - (1 - keep) * base|[l, r] + sum of `added` atoms. Mass of the
  /// result must stay non-negative; callers decide whether mass and mean are
  /// preserved.
  static AnalyticMeasure replace_segment(AnalyticMeasure base, double l, double r, double keep,
                                         std::vector<Atom> added);

  double mass() const { return impl_->mass(); }
  double mean() const { return impl_->mean(); }
  double atom_at_zero() const { return impl_->atom_at_zero(); }

  double cdf(double x) const { return impl_->cdf(x); }
  double cdf_left(double x) const { return impl_->cdf_left(x); }
  double put(double x) const;
  double call(double x) const { return put(x) + mean() - x * mass(); }
  double density(double x) const { return impl_->density(x); }

  std::vector<double> breakpoints() const { return impl_->breakpoints(); }
  std::vector<Atom> positive_atoms() const { return impl_->positive_atoms(); }
  double support_max() const { return impl_->support_max(); }

  bool has_quantile() const;
  /// inf{x : F(x) >= u}; closed form where known, otherwise bisection of F
  /// over the bounded support.
  double quantile(double u) const;

  const PiecewiseLaw* as_piecewise() const { return impl_->piecewise(); }
  std::string describe() const { return impl_->describe(); }

 private:
  explicit AnalyticMeasure(std::shared_ptr<const detail::MeasureImpl> impl)
      : impl_(std::move(impl)) {}

  std::shared_ptr<const detail::MeasureImpl> impl_;
};

}  // namespace contest
