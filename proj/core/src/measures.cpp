#include "contest/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "contest/errors.hpp"

namespace contest {
namespace {

void require_nonnegative_strike(double x) {
  if (!(x >= 0.0)) throw DomainError("put/call evaluated at negative or NaN strike");
}

std::vector<Atom> merge_atoms(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.location < b.location; });
  std::vector<Atom> out;
  for (const auto& a : atoms) {
    if (!out.empty() && out.back().location == a.location) {
      out.back().weight += a.weight;
    } else {
      out.push_back(a);
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteAtomicMeasure

FiniteAtomicMeasure::FiniteAtomicMeasure(std::vector<double> locations, std::vector<double> weights)
    : locations_(std::move(locations)), weights_(std::move(weights)) {
  if (locations_.size() != weights_.size()) {
    throw PreconditionError("atomic measure: locations and weights differ in length");
  }
  prefix_mass_.resize(locations_.size());
  prefix_moment_.resize(locations_.size());
  double m = 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < locations_.size(); ++i) {
    const double x = locations_[i];
    const double w = weights_[i];
    if (!std::isfinite(x) || x < 0.0) throw PreconditionError("atomic measure: location must be finite and >= 0");
    if (!std::isfinite(w) || w <= 0.0) throw PreconditionError("atomic measure: weight must be finite and > 0");
    if (i > 0 && !(x > locations_[i - 1])) {
      throw PreconditionError("atomic measure: locations must be strictly increasing");
    }
    m += w;
    s += w * x;
    prefix_mass_[i] = m;
    prefix_moment_[i] = s;
  }
}

FiniteAtomicMeasure FiniteAtomicMeasure::from_atoms(std::vector<Atom> atoms) {
  auto merged = merge_atoms(std::move(atoms));
  std::vector<double> loc;
  std::vector<double> w;
  loc.reserve(merged.size());
  w.reserve(merged.size());
  for (const auto& a : merged) {
    loc.push_back(a.location);
    w.push_back(a.weight);
  }
  return FiniteAtomicMeasure(std::move(loc), std::move(w));
}

std::vector<Atom> FiniteAtomicMeasure::atoms() const {
  std::vector<Atom> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = {locations_[i], weights_[i]};
  return out;
}

double FiniteAtomicMeasure::atom_at_zero() const noexcept {
  return (!locations_.empty() && locations_.front() == 0.0) ? weights_.front() : 0.0;
}

double FiniteAtomicMeasure::cdf(double x) const noexcept {
  if (x < 0.0) return 0.0;
  const auto k = std::upper_bound(locations_.begin(), locations_.end(), x) - locations_.begin();
  return cumulative_mass(static_cast<std::size_t>(k));
}

double FiniteAtomicMeasure::cdf_left(double x) const noexcept {
  if (x <= 0.0) return 0.0;
  const auto k = std::lower_bound(locations_.begin(), locations_.end(), x) - locations_.begin();
  return cumulative_mass(static_cast<std::size_t>(k));
}

double FiniteAtomicMeasure::put(double x) const {
  require_nonnegative_strike(x);
  const auto k = static_cast<std::size_t>(
      std::upper_bound(locations_.begin(), locations_.end(), x) - locations_.begin());
  return std::max(0.0, cumulative_mass(k) * x - cumulative_moment(k));
}

double FiniteAtomicMeasure::call(double x) const { return put(x) + mean() - x * mass(); }

// ---------------------------------------------------------------------------
// PiecewiseLaw

PiecewiseLaw::PiecewiseLaw(FiniteAtomicMeasure atoms, std::vector<double> knots,
                           std::vector<double> densities)
    : atoms_(std::move(atoms)), knots_(std::move(knots)), densities_(std::move(densities)) {
  if (knots_.empty() != densities_.empty() ||
      (!knots_.empty() && densities_.size() + 1 != knots_.size())) {
    throw PreconditionError("piecewise law: need exactly one density per knot interval");
  }
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!std::isfinite(knots_[i]) || knots_[i] < 0.0) throw PreconditionError("piecewise law: knots must be finite and >= 0");
    if (i > 0 && !(knots_[i] > knots_[i - 1])) throw PreconditionError("piecewise law: knots must be strictly increasing");
  }
  for (double d : densities_) {
    if (!std::isfinite(d) || d < 0.0) throw PreconditionError("piecewise law: densities must be finite and >= 0");
  }

  bp_.reserve(atoms_.size() + knots_.size() + 1);
  bp_.push_back(0.0);
  for (double x : atoms_.locations()) bp_.push_back(x);
  bp_.insert(bp_.end(), knots_.begin(), knots_.end());
  std::sort(bp_.begin(), bp_.end());
  bp_.erase(std::unique(bp_.begin(), bp_.end()), bp_.end());

  const std::size_t nb = bp_.size();
  seg_density_.assign(nb - 1, 0.0);
  for (std::size_t i = 0; i + 1 < nb; ++i) {
    const auto j = std::upper_bound(knots_.begin(), knots_.end(), bp_[i]) - knots_.begin() - 1;
    if (j >= 0 && static_cast<std::size_t>(j) < densities_.size()) seg_density_[i] = densities_[j];
  }

  f_at_.assign(nb, 0.0);
  p_at_.assign(nb, 0.0);
  auto locs = atoms_.locations();
  auto ws = atoms_.weights();
  std::size_t a = 0;
  auto atom_here = [&](double x) {
    double w = 0.0;
    if (a < locs.size() && locs[a] == x) w = ws[a++];
    return w;
  };
  f_at_[0] = atom_here(0.0);
  mean_ = 0.0;
  for (std::size_t i = 1; i < nb; ++i) {
    const double len = bp_[i] - bp_[i - 1];
    const double d = seg_density_[i - 1];
    p_at_[i] = p_at_[i - 1] + f_at_[i - 1] * len + 0.5 * d * len * len;
    const double w = atom_here(bp_[i]);
    f_at_[i] = f_at_[i - 1] + d * len + w;
    mean_ += d * len * 0.5 * (bp_[i] + bp_[i - 1]) + w * bp_[i];
  }
}

PiecewiseLaw PiecewiseLaw::uniform(double a, double b, double mass) {
  if (!(a >= 0.0) || !(b >= a) || !(mass > 0.0)) {
    throw PreconditionError("uniform: requires 0 <= a <= b and mass > 0");
  }
  if (a == b) return PiecewiseLaw(FiniteAtomicMeasure({a}, {mass}));
  return PiecewiseLaw(FiniteAtomicMeasure{}, {a, b}, {mass / (b - a)});
}

std::size_t PiecewiseLaw::segment_of(double x) const noexcept {
  return static_cast<std::size_t>(std::upper_bound(bp_.begin(), bp_.end(), x) - bp_.begin()) - 1;
}

double PiecewiseLaw::cdf(double x) const noexcept {
  if (x < 0.0) return 0.0;
  const std::size_t i = segment_of(x);
  if (i + 1 >= bp_.size()) return f_at_.back();
  return f_at_[i] + seg_density_[i] * (x - bp_[i]);
}

double PiecewiseLaw::cdf_left(double x) const noexcept {
  if (x <= 0.0) return 0.0;
  const std::size_t i =
      static_cast<std::size_t>(std::lower_bound(bp_.begin(), bp_.end(), x) - bp_.begin()) - 1;
  const double d = (i + 1 < bp_.size()) ? seg_density_[i] : 0.0;
  return f_at_[i] + d * (x - bp_[i]);
}

double PiecewiseLaw::put(double x) const {
  require_nonnegative_strike(x);
  const std::size_t i = segment_of(x);
  const double dx = x - bp_[i];
  const double d = (i + 1 < bp_.size()) ? seg_density_[i] : 0.0;
  return p_at_[i] + f_at_[i] * dx + 0.5 * d * dx * dx;
}

double PiecewiseLaw::call(double x) const { return put(x) + mean() - x * mass(); }

double PiecewiseLaw::density(double x) const noexcept {
  if (x < 0.0) return 0.0;
  const std::size_t i = segment_of(x);
  return (i + 1 < bp_.size()) ? seg_density_[i] : 0.0;
}

double PiecewiseLaw::quantile(double u) const {
  const double m = mass();
  if (!(u >= 0.0) || u > m * (1.0 + 1e-12) + 1e-300) throw DomainError("quantile: level outside [0, mass]");
  u = std::min(u, m);
  if (u <= f_at_[0]) return 0.0;
  auto it = std::lower_bound(f_at_.begin(), f_at_.end(), u);
  if (it == f_at_.end()) return bp_.back();
  const std::size_t i = static_cast<std::size_t>(it - f_at_.begin());
  const double d = seg_density_[i - 1];
  const double left_limit = f_at_[i - 1] + d * (bp_[i] - bp_[i - 1]);
  if (d > 0.0 && left_limit >= u) {
    const double x = bp_[i - 1] + (u - f_at_[i - 1]) / d;
    return std::clamp(x, bp_[i - 1], bp_[i]);
  }
  return bp_[i];
}

std::vector<Atom> PiecewiseLaw::positive_atoms() const {
  std::vector<Atom> out;
  for (const auto& a : atoms_.atoms()) {
    if (a.location > 0.0) out.push_back(a);
  }
  return out;
}

// ---------------------------------------------------------------------------
// AnalyticMeasure implementations

namespace {

class PiecewiseImpl final : public detail::MeasureImpl {
 public:
  explicit PiecewiseImpl(PiecewiseLaw law) : law_(std::move(law)) {}
  double mass() const override { return law_.mass(); }
  double mean() const override { return law_.mean(); }
  double atom_at_zero() const override { return law_.atom_at_zero(); }
  double cdf(double x) const override { return law_.cdf(x); }
  double cdf_left(double x) const override { return law_.cdf_left(x); }
  double put(double x) const override { return law_.put(x); }
  double density(double x) const override { return law_.density(x); }
  std::vector<double> breakpoints() const override {
    auto b = law_.breakpoints();
    return {b.begin(), b.end()};
  }
  std::vector<Atom> positive_atoms() const override { return law_.positive_atoms(); }
  double support_max() const override { return law_.support_max(); }
  std::optional<double> exact_quantile(double u) const override { return law_.quantile(u); }
  const PiecewiseLaw* piecewise() const override { return &law_; }
  std::string describe() const override {
    std::ostringstream os;
    os << "piecewise(atoms=" << law_.atoms().size() << ", pieces=" << law_.densities().size() << ")";
    return os.str();
  }

 private:
  PiecewiseLaw law_;
};

/// Beta(2,3): F(x) = 3x^4 - 8x^3 + 6x^2 on [0,1], mean 2/5.
class Beta23Impl final : public detail::MeasureImpl {
 public:
  double mass() const override { return 1.0; }
  double mean() const override { return 0.4; }
  double atom_at_zero() const override { return 0.0; }
  double cdf(double x) const override {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return std::min(x * x * (6.0 + x * (-8.0 + 3.0 * x)), 1.0);
  }
  double cdf_left(double x) const override { return cdf(x); }
  double put(double x) const override {
    if (x >= 1.0) return x - 0.4;
    // P = C + x - 2/5 with C(x) = 3/5 x^5 - 2x^4 + 2x^3 - x + 2/5.
    return x * x * x * (2.0 + x * (-2.0 + 0.6 * x));
  }
  double density(double x) const override {
    if (x < 0.0 || x >= 1.0) return 0.0;
    return 12.0 * x * (1.0 - x) * (1.0 - x);
  }
  std::vector<double> breakpoints() const override { return {0.0, 1.0}; }
  std::vector<Atom> positive_atoms() const override { return {}; }
  double support_max() const override { return 1.0; }
  std::string describe() const override { return "beta23"; }
};

class MixtureImpl final : public detail::MeasureImpl {
 public:
  explicit MixtureImpl(std::vector<std::pair<double, AnalyticMeasure>> c) : parts_(std::move(c)) {}

  double mass() const override { return sum([](const AnalyticMeasure& m) { return m.mass(); }); }
  double mean() const override { return sum([](const AnalyticMeasure& m) { return m.mean(); }); }
  double atom_at_zero() const override {
    return sum([](const AnalyticMeasure& m) { return m.atom_at_zero(); });
  }
  double cdf(double x) const override { return sum([x](const AnalyticMeasure& m) { return m.cdf(x); }); }
  double cdf_left(double x) const override {
    return sum([x](const AnalyticMeasure& m) { return m.cdf_left(x); });
  }
  double put(double x) const override { return sum([x](const AnalyticMeasure& m) { return m.put(x); }); }
  double density(double x) const override {
    return sum([x](const AnalyticMeasure& m) { return m.density(x); });
  }
  std::vector<double> breakpoints() const override {
    std::vector<double> out;
    for (const auto& [w, m] : parts_) {
      auto b = m.breakpoints();
      out.insert(out.end(), b.begin(), b.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  std::vector<Atom> positive_atoms() const override {
    std::vector<Atom> all;
    for (const auto& [w, m] : parts_) {
      for (auto a : m.positive_atoms()) all.push_back({a.location, w * a.weight});
    }
    return merge_atoms(std::move(all));
  }
  double support_max() const override {
    double s = 0.0;
    for (const auto& [w, m] : parts_) s = std::max(s, m.support_max());
    return s;
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "mixture(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      os << (i ? ", " : "") << parts_[i].first << "*" << parts_[i].second.describe();
    }
    os << ")";
    return os.str();
  }

 private:
  template <class Fn>
  double sum(Fn fn) const {
    double s = 0.0;
    for (const auto& [w, m] : parts_) s += w * fn(m);
    return s;
  }

  std::vector<std::pair<double, AnalyticMeasure>> parts_;
};

/// base - (1 - keep) * base|[l, r] + added atoms.
class SegmentImpl final : public detail::MeasureImpl {
 public:
  SegmentImpl(AnalyticMeasure base, double l, double r, double keep, FiniteAtomicMeasure added)
      : base_(std::move(base)), l_(l), r_(r), drop_(1.0 - keep), added_(std::move(added)) {
    fl_ = base_.cdf_left(l_);
    fr_ = base_.cdf(r_);
    pl_ = base_.put(l_);
    pr_ = base_.put(r_);
    seg_mass_ = fr_ - fl_;
    seg_moment_ = (r_ * fr_ - pr_) - (l_ * fl_ - pl_);
  }

  double mass() const override { return base_.mass() - drop_ * seg_mass_ + added_.mass(); }
  double mean() const override { return base_.mean() - drop_ * seg_moment_ + added_.mean(); }
  double atom_at_zero() const override {
    const double scale = (l_ <= 0.0) ? 1.0 - drop_ : 1.0;
    return base_.atom_at_zero() * scale + added_.atom_at_zero();
  }
  double cdf(double x) const override {
    double g = 0.0;
    if (x >= l_) g = (x <= r_) ? base_.cdf(x) - fl_ : seg_mass_;
    return base_.cdf(x) - drop_ * g + added_.cdf(x);
  }
  double cdf_left(double x) const override {
    double g = 0.0;
    if (x > l_) g = (x <= r_) ? base_.cdf_left(x) - fl_ : seg_mass_;
    return base_.cdf_left(x) - drop_ * g + added_.cdf_left(x);
  }
  double put(double x) const override {
    double ig = 0.0;
    if (x > l_) {
      ig = (x <= r_) ? (base_.put(x) - pl_) - fl_ * (x - l_)
                     : (pr_ - pl_ - fl_ * (r_ - l_)) + (x - r_) * seg_mass_;
    }
    return std::max(0.0, base_.put(x) - drop_ * ig + added_.put(x));
  }
  double density(double x) const override {
    const double d = base_.density(x);
    return (x >= l_ && x < r_) ? d * (1.0 - drop_) : d;
  }
  std::vector<double> breakpoints() const override {
    auto out = base_.breakpoints();
    out.push_back(l_);
    out.push_back(r_);
    for (double x : added_.locations()) out.push_back(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  std::vector<Atom> positive_atoms() const override {
    std::vector<Atom> all;
    for (auto a : base_.positive_atoms()) {
      if (a.location >= l_ && a.location <= r_) a.weight *= 1.0 - drop_;
      if (a.weight > 0.0) all.push_back(a);
    }
    for (auto a : added_.atoms()) {
      if (a.location > 0.0) all.push_back(a);
    }
    return merge_atoms(std::move(all));
  }
  double support_max() const override { return std::max(base_.support_max(), added_.support_max()); }
  std::string describe() const override {
    std::ostringstream os;
    os << "segment_replaced(" << base_.describe() << ", [" << l_ << ", " << r_ << "], keep=" << 1.0 - drop_
       << ", added=" << added_.size() << ")";
    return os.str();
  }

 private:
  AnalyticMeasure base_;
  double l_, r_, drop_;
  FiniteAtomicMeasure added_;
  double fl_ = 0, fr_ = 0, pl_ = 0, pr_ = 0, seg_mass_ = 0, seg_moment_ = 0;
};

}  // namespace

AnalyticMeasure::AnalyticMeasure(FiniteAtomicMeasure m)
    : impl_(std::make_shared<PiecewiseImpl>(PiecewiseLaw(std::move(m)))) {}

AnalyticMeasure::AnalyticMeasure(PiecewiseLaw m) : impl_(std::make_shared<PiecewiseImpl>(std::move(m))) {}

AnalyticMeasure AnalyticMeasure::beta23() { return AnalyticMeasure(std::make_shared<Beta23Impl>()); }

AnalyticMeasure AnalyticMeasure::uniform(double a, double b, double mass) {
  if (!(a >= 0.0) || !(b > a)) throw PreconditionError("uniform: requires 0 <= a < b");
  return AnalyticMeasure(PiecewiseLaw::uniform(a, b, mass));
}

AnalyticMeasure AnalyticMeasure::point_mass(double x, double w) {
  return AnalyticMeasure(FiniteAtomicMeasure({x}, {w}));
}

AnalyticMeasure AnalyticMeasure::mixture(std::vector<std::pair<double, AnalyticMeasure>> components) {
  if (components.empty()) throw PreconditionError("mixture: needs at least one component");
  for (const auto& [w, m] : components) {
    if (!std::isfinite(w) || w <= 0.0) throw PreconditionError("mixture: weights must be > 0");
  }
  return AnalyticMeasure(std::make_shared<MixtureImpl>(std::move(components)));
}

AnalyticMeasure AnalyticMeasure::replace_segment(AnalyticMeasure base, double l, double r, double keep,
                                                 std::vector<Atom> added) {
  if (!(l >= 0.0) || !(r >= l)) throw PreconditionError("replace_segment: requires 0 <= l <= r");
  if (!(keep >= 0.0 && keep <= 1.0)) throw PreconditionError("replace_segment: keep must lie in [0, 1]");
  std::erase_if(added, [](const Atom& a) { return a.weight == 0.0; });
  return AnalyticMeasure(std::make_shared<SegmentImpl>(std::move(base), l, r, keep,
                                                       FiniteAtomicMeasure::from_atoms(std::move(added))));
}

double AnalyticMeasure::put(double x) const {
  require_nonnegative_strike(x);
  return impl_->put(x);
}

bool AnalyticMeasure::has_quantile() const {
  return impl_->piecewise() != nullptr || std::isfinite(impl_->support_max());
}

double AnalyticMeasure::quantile(double u) const {
  if (auto q = impl_->exact_quantile(u)) return *q;
  const double hi0 = impl_->support_max();
  if (!std::isfinite(hi0)) throw UnsupportedMeasure("quantile: measure has no quantile function");
  const double m = mass();
  if (!(u >= 0.0) || u > m * (1.0 + 1e-12)) throw DomainError("quantile: level outside [0, mass]");
  if (u <= atom_at_zero()) return 0.0;
  double lo = 0.0;
  double hi = hi0;
  // F(lo) < u <= F(hi) is maintained; the support bound carries the full mass.
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (cdf(mid) >= u) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace contest
